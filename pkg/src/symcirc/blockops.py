"""SU(d)-invariant operators stored as one multiplicity block per charge sector.

An invariant operator on n qudits acts as identity on each charge factor, so
it is fully described by one m x m complex matrix per diagram in the sector
list.  Traces and inner products against the full d^n-dimensional space are
recovered by weighting each block with its charge dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .partitions import YoungDiagram, charge_dim, enumerate_diagrams, multiplicity_dim
from .permutations import (
    Perm,
    inverse,
    perm_sign,
    permutations_with_support_at_most,
    all_permutations,
    embed,
)
from .symrep import build_irrep, rep_matrix

DEDUP_TOL = 1e-10


@lru_cache(maxsize=None)
def sector_shapes(n: int, d: int) -> tuple[YoungDiagram, ...]:
    return tuple(enumerate_diagrams(n, d))


@lru_cache(maxsize=None)
def sector_dims(n: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(multiplicity dims, charge dims) aligned with sector_shapes(n, d)."""
    shapes = sector_shapes(n, d)
    return (
        tuple(multiplicity_dim(s) for s in shapes),
        tuple(charge_dim(s, d) for s in shapes),
    )


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """Blocks aligned with sector_shapes(n, d); zero blocks stored explicitly."""

    n: int
    d: int
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        mults, _ = sector_dims(self.n, self.d)
        if len(self.blocks) != len(mults):
            raise ValueError("wrong number of blocks")
        fixed = []
        for blk, m in zip(self.blocks, mults):
            arr = np.asarray(blk, dtype=complex)
            if arr.shape != (m, m):
                raise ValueError(f"block shape {arr.shape}, expected ({m}, {m})")
            fixed.append(arr)
        object.__setattr__(self, "blocks", tuple(fixed))

    @property
    def shapes(self) -> tuple[YoungDiagram, ...]:
        return sector_shapes(self.n, self.d)

    def block(self, shape: YoungDiagram) -> np.ndarray:
        return self.blocks[self.shapes.index(shape)]

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_compatible(other)
        return BlockOperator(self.n, self.d, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_compatible(other)
        return BlockOperator(self.n, self.d, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar: complex) -> "BlockOperator":
        return BlockOperator(self.n, self.d, tuple(scalar * b for b in self.blocks))

    __rmul__ = __mul__

    def __neg__(self) -> "BlockOperator":
        return self * (-1)

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_compatible(other)
        return BlockOperator(self.n, self.d, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def dagger(self) -> "BlockOperator":
        return BlockOperator(self.n, self.d, tuple(b.conj().T for b in self.blocks))

    def commutator(self, other: "BlockOperator") -> "BlockOperator":
        self._check_compatible(other)
        return BlockOperator(
            self.n, self.d, tuple(a @ b - b @ a for a, b in zip(self.blocks, other.blocks))
        )

    def expm(self) -> "BlockOperator":
        """Blockwise matrix exponential (via the Hermitian part's eigensystem)."""
        out = []
        for b in self.blocks:
            h = -1j * b
            if not np.allclose(h, h.conj().T, atol=1e-12):
                raise ValueError("expm implemented for anti-Hermitian operators only")
            w, v = np.linalg.eigh(h)
            out.append((v * np.exp(1j * w)) @ v.conj().T)
        return BlockOperator(self.n, self.d, tuple(out))

    def is_anti_hermitian(self, tol: float = 1e-12) -> bool:
        return all(np.abs(b + b.conj().T).max() <= tol * max(1.0, np.abs(b).max()) for b in self.blocks)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(np.abs(b - b.conj().T).max() <= tol * max(1.0, np.abs(b).max()) for b in self.blocks)

    def _check_compatible(self, other: "BlockOperator"):
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("operators live on different (n, d) spaces")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "blocks": [
                {
                    "shape": shape.to_json(),
                    "re": np.real(b).ravel().tolist(),
                    "im": np.imag(b).ravel().tolist(),
                }
                for shape, b in zip(self.shapes, self.blocks)
            ],
        }


def zero_operator(n: int, d: int) -> BlockOperator:
    mults, _ = sector_dims(n, d)
    return BlockOperator(n, d, tuple(np.zeros((m, m), dtype=complex) for m in mults))


def identity_operator(n: int, d: int) -> BlockOperator:
    mults, _ = sector_dims(n, d)
    return BlockOperator(n, d, tuple(np.eye(m, dtype=complex) for m in mults))


def embed_permutation(n: int, d: int, perm: Perm) -> BlockOperator:
    """The permutation unitary, one orthogonal irrep matrix per sector."""
    if len(perm) != n:
        raise ValueError("permutation length must equal n")
    blocks = tuple(
        rep_matrix(build_irrep(shape), perm).astype(complex)
        for shape in sector_shapes(n, d)
    )
    return BlockOperator(n, d, blocks)


def weighted_trace(op: BlockOperator) -> complex:
    """Trace over the full d^n-dimensional space: charge-dimension-weighted
    sum of block traces."""
    _, charges = sector_dims(op.n, op.d)
    return complex(sum(q * np.trace(b) for q, b in zip(charges, op.blocks)))


def weighted_inner(a: BlockOperator, b: BlockOperator) -> float:
    """Real Hilbert-Schmidt inner product of the full-space operators:
    sum of charge_dim * Re Tr(A^dag B) over sectors."""
    a._check_compatible(b)
    _, charges = sector_dims(a.n, a.d)
    return float(
        sum(
            q * np.sum(np.real(np.conj(x) * y))
            for q, x, y in zip(charges, a.blocks, b.blocks)
        )
    )


def weighted_norm(op: BlockOperator) -> float:
    return np.sqrt(max(weighted_inner(op, op), 0.0))


def local_generators(n: int, d: int, k: int) -> list[BlockOperator]:
    """Anti-Hermitian generators of the k-local invariant gate set.

    For every permutation moving at most k points, i(P + P^-1) and
    (P - P^-1); since k-local invariant operators are complex combinations
    of permutations supported on k points, these span all i * (Hermitian
    k-local invariant operators).  Inverse pairs are visited once and exact
    duplicates (up to sign) dropped.
    """
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    out: list[BlockOperator] = []
    seen: set[Perm] = set()
    for p in permutations_with_support_at_most(n, k):
        if p in seen:
            continue
        inv = inverse(p)
        seen.add(p)
        seen.add(inv)
        pe = embed_permutation(n, d, p)
        if inv == p:
            _append_unless_duplicate(out, 1j * pe)
        else:
            qe = embed_permutation(n, d, inv)
            _append_unless_duplicate(out, 1j * (pe + qe))
            _append_unless_duplicate(out, pe - qe)
    return out


def _append_unless_duplicate(acc: list[BlockOperator], op: BlockOperator):
    norm = weighted_norm(op)
    if norm <= DEDUP_TOL:
        return
    for prev in acc:
        overlap = abs(weighted_inner(prev, op)) / (weighted_norm(prev) * norm)
        if overlap > 1.0 - DEDUP_TOL:
            return
    acc.append(op)


def three_point_projector(n: int, d: int, triple: tuple[int, int, int], kind: str) -> BlockOperator:
    """Blockwise projector onto the symmetric ("sym"), antisymmetric
    ("anti"), or mixed ("mixed") part of three qudits (0-based slots)."""
    a, b, c = triple
    if len({a, b, c}) != 3:
        raise ValueError("triple must be three distinct qudits")
    acc = zero_operator(n, d)
    for q in all_permutations(3):
        term = embed_permutation(n, d, embed(q, (a, b, c), n))
        if kind == "sym":
            acc = acc + term
        elif kind == "anti":
            acc = acc + perm_sign(q) * term
        else:
            raise ValueError("kind must be 'sym' or 'anti' (mixed = I - both)")
    return (1.0 / 6.0) * acc


def reflection_generator(
    n: int, d: int, triple: tuple[int, int, int], sign: str = "+"
) -> BlockOperator:
    """i*pi times the symmetric (sign "+") or antisymmetric (sign "-")
    three-qudit projector; its exponential is the corresponding reflection
    gate I - 2*Pi."""
    if sign not in {"+", "-"}:
        raise ValueError("sign must be '+' or '-'")
    kind = "sym" if sign == "+" else "anti"
    return (1j * np.pi) * three_point_projector(n, d, triple, kind)


def two_local_obstruction(d: int) -> BlockOperator:
    """The three-qudit invariant operator whose trace pairing decides
    membership of a Hamiltonian in the 2-local-generated algebra.

    Scalar on each sector: 2(d-1)(d-2) on [3], -(d+2)(d-2) on [2,1],
    2(d+2)(d+1) on [1,1,1]; identically zero when d = 2.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    coeff = {
        (3,): 2 * (d - 1) * (d - 2),
        (2, 1): -(d + 2) * (d - 2),
        (1, 1, 1): 2 * (d + 2) * (d + 1),
    }
    mults, _ = sector_dims(3, d)
    blocks = tuple(
        coeff[shape.rows] * np.eye(m, dtype=complex)
        for shape, m in zip(sector_shapes(3, d), mults)
    )
    return BlockOperator(3, d, blocks)


def two_local_obstruction_from_permutations(d: int) -> BlockOperator:
    """The same operator assembled from its permutation expansion,
    d^2 (P_(123) + P_(132)) - 2d (P_12 + P_13 + P_23) + 4 I; used as an
    independent cross-check of the sector coefficients."""
    from .permutations import cycle, transposition

    acc = 4.0 * identity_operator(3, d)
    acc = acc + (d * d) * (
        embed_permutation(3, d, cycle(3, (0, 1, 2)))
        + embed_permutation(3, d, cycle(3, (0, 2, 1)))
    )
    for i, j in ((0, 1), (0, 2), (1, 2)):
        acc = acc - (2.0 * d) * embed_permutation(3, d, transposition(3, i, j))
    return acc
