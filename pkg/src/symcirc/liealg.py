"""Numerical real-Lie-algebra closure over anti-Hermitian block operators.

The closure engine works in a real coordinatization of blockwise operators:
each block is flattened to [Re, Im] and scaled by the square root of its
charge dimension, so the Euclidean dot product of coordinate vectors equals
the full-space Hilbert-Schmidt inner product.  Commutators are evaluated in
batches with stacked matrix products; insertion into the basis is strictly
sequential in a fixed order, so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .blockops import BlockOperator, sector_dims, sector_shapes
from .partitions import YoungDiagram

DEFAULT_TOL = 1e-9
_BATCH = 256

Blocks = list[np.ndarray]


class InconsistentRankError(RuntimeError):
    """A pairwise sector rank that matches neither the independent nor the
    correlated case; carries the offending rank."""

    def __init__(self, rank: int, expected: tuple[int, int]):
        super().__init__(
            f"projected rank {rank} is neither {expected[0]} (correlated) "
            f"nor {expected[1]} (independent); likely a tolerance problem"
        )
        self.rank = rank


@dataclass(frozen=True)
class BlockSpace:
    """Fixed sector sizes and weights defining the coordinatization."""

    sizes: tuple[int, ...]
    weights: tuple[float, ...]

    @property
    def veclen(self) -> int:
        return 2 * sum(m * m for m in self.sizes)

    def vec(self, blocks: Blocks) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, blocks):
            s = np.sqrt(w)
            parts.append(s * np.real(b).ravel())
            parts.append(s * np.imag(b).ravel())
        return np.concatenate(parts) if parts else np.zeros(0)

    def unvec(self, v: np.ndarray) -> Blocks:
        out = []
        pos = 0
        for w, m in zip(self.weights, self.sizes):
            s = np.sqrt(w)
            re = v[pos:pos + m * m].reshape(m, m)
            im = v[pos + m * m:pos + 2 * m * m].reshape(m, m)
            out.append((re + 1j * im) / s)
            pos += 2 * m * m
        return out

def space_for(n: int, d: int) -> BlockSpace:
    mults, charges = sector_dims(n, d)
    return BlockSpace(mults, tuple(float(q) for q in charges))


@dataclass(eq=False)
class LieBasis:
    """Orthonormal basis of a computed Lie-algebra closure.

    ``stacks[s]`` holds all basis elements' blocks in sector s as one
    (dim, m, m) array; ``vecs`` holds the matching orthonormal coordinate
    rows.  ``ambient`` is (n, d) when the elements are block operators on n
    qudits, None for generic (single-block) problems.
    """

    space: BlockSpace
    ambient: tuple[int, int] | None
    vecs: np.ndarray
    stacks: list[np.ndarray]
    tol: float
    closed: bool
    generator_vecs: np.ndarray = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.vecs.shape[0]

    def element_blocks(self, i: int) -> Blocks:
        return [stack[i] for stack in self.stacks]

    @property
    def elements(self) -> tuple[BlockOperator, ...]:
        if self.ambient is None:
            raise ValueError("basis has no (n, d) ambient; use element_blocks")
        n, d = self.ambient
        return tuple(
            BlockOperator(n, d, tuple(self.element_blocks(i)))
            for i in range(self.dim)
        )

    def shapes(self) -> tuple[YoungDiagram, ...]:
        if self.ambient is None:
            raise ValueError("basis has no (n, d) ambient")
        return sector_shapes(*self.ambient)

    def sector_index(self, sector: YoungDiagram | int) -> int:
        if isinstance(sector, int):
            return sector
        return self.shapes().index(sector)


def _check_anti_hermitian(blocks: Blocks, label: str):
    for b in blocks:
        scale = max(1.0, float(np.abs(b).max()))
        if np.abs(b + b.conj().T).max() > 1e-12 * scale:
            raise ValueError(f"{label} is not anti-Hermitian blockwise")


def closure_blocks(
    space: BlockSpace,
    generators: list[Blocks],
    tol: float = DEFAULT_TOL,
    max_dim: int | None = None,
    ambient: tuple[int, int] | None = None,
) -> LieBasis:
    """Closure engine on raw block lists; see :func:`closure`."""
    if not generators:
        raise ValueError("need at least one generator")
    for g in generators:
        _check_anti_hermitian(g, "generator")
    ambient_full = sum(m * m for m in space.sizes)
    cap = max_dim if max_dim is not None else ambient_full
    alloc = min(cap, ambient_full)

    veclen = space.veclen
    basis = np.zeros((alloc, veclen))
    stacks = [np.zeros((alloc, m, m), dtype=complex) for m in space.sizes]
    nb = 0

    def insert(v: np.ndarray) -> bool:
        nonlocal nb
        r = v - (v @ basis[:nb].T) @ basis[:nb]
        r = r - (r @ basis[:nb].T) @ basis[:nb]
        nrm = np.linalg.norm(r)
        if nrm <= tol:
            return False
        blocks = space.unvec(r / nrm)
        # exact anti-Hermitization kills the residual Hermitian round-off
        blocks = [(b - b.conj().T) / 2 for b in blocks]
        r = space.vec(blocks)
        r = r / np.linalg.norm(r)
        basis[nb] = r
        for s, b in enumerate(space.unvec(r)):
            stacks[s][nb] = b
        nb += 1
        return True

    gen_vecs = np.array([space.vec(g) for g in generators])
    work: deque[tuple[int, int]] = deque()
    truncated_seed = False
    for g in generators:
        if nb >= cap:
            truncated_seed = True
            break
        if insert(space.vec(g)):
            work.extend((i, nb - 1) for i in range(nb - 1))

    closed = not truncated_seed
    while work:
        if nb >= cap:
            # the full space of blockwise anti-Hermitian operators is
            # trivially closed; only a user-imposed cap leaves doubt
            closed = nb >= ambient_full
            break
        batch = [work.popleft() for _ in range(min(_BATCH, len(work)))]
        i_idx = np.array([p[0] for p in batch])
        j_idx = np.array([p[1] for p in batch])
        cols = []
        for s, m in enumerate(space.sizes):
            x = stacks[s][i_idx]
            y = stacks[s][j_idx]
            c = x @ y - y @ x
            w = np.sqrt(space.weights[s])
            flat = c.reshape(len(batch), m * m)
            cols.append(w * flat.real)
            cols.append(w * flat.imag)
        vals = np.concatenate(cols, axis=1)
        vals = vals - (vals @ basis[:nb].T) @ basis[:nb]
        vals = vals - (vals @ basis[:nb].T) @ basis[:nb]
        snapshot = nb
        for row in vals:
            if nb >= cap:
                closed = nb >= ambient_full
                work.clear()
                break
            if nb > snapshot:
                fresh = basis[snapshot:nb]
                row = row - (row @ fresh.T) @ fresh
            if np.linalg.norm(row) <= tol:
                continue
            if insert(row):
                work.extend((i, nb - 1) for i in range(nb - 1))

    return LieBasis(
        space=space,
        ambient=ambient,
        vecs=basis[:nb].copy(),
        stacks=[stack[:nb].copy() for stack in stacks],
        tol=tol,
        closed=closed,
        generator_vecs=gen_vecs,
    )


def closure(
    generators: list[BlockOperator],
    tol: float = DEFAULT_TOL,
    max_dim: int | None = None,
) -> LieBasis:
    """Smallest real Lie algebra containing the generators.

    Gram-Schmidt seeds the basis; a FIFO worklist of commutator pairs, (new
    element x all prior) before (new x new), grows it until no commutator
    leaves the span (residual norm <= tol) or ``max_dim`` is hit, in which
    case the result is flagged not closed.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n, d = generators[0].n, generators[0].d
    space = space_for(n, d)
    return closure_blocks(
        space,
        [list(g.blocks) for g in generators],
        tol=tol,
        max_dim=max_dim,
        ambient=(n, d),
    )


def _restricted_rows(
    basis: LieBasis, sector_idx: list[int], traceless_only: bool
) -> np.ndarray:
    cols = []
    for s in sector_idx:
        m = basis.space.sizes[s]
        stack = basis.stacks[s].copy()
        if traceless_only and m > 0:
            traces = np.trace(stack, axis1=1, axis2=2) / m
            stack = stack - traces[:, None, None] * np.eye(m)
        w = np.sqrt(basis.space.weights[s])
        flat = stack.reshape(basis.dim, m * m)
        cols.append(w * flat.real)
        cols.append(w * flat.imag)
    return np.concatenate(cols, axis=1) if cols else np.zeros((basis.dim, 0))


def projected_rank(
    basis: LieBasis,
    sectors: "set[YoungDiagram | int] | list[YoungDiagram | int]",
    traceless_only: bool = False,
) -> int:
    """Real rank of the basis restricted to the chosen sectors, optionally
    with per-block trace components removed.  Singular values are thresholded
    at tol * sqrt(ambient coordinate dimension)."""
    idx = sorted(basis.sector_index(s) for s in sectors)
    rows = _restricted_rows(basis, idx, traceless_only)
    if rows.size == 0:
        return 0
    svals = np.linalg.svd(rows, compute_uv=False)
    thr = basis.tol * np.sqrt(basis.space.veclen)
    return int(np.sum(svals > thr))


@dataclass(frozen=True)
class SectorVerdict:
    shape: YoungDiagram
    m: int
    rank: int
    ok: bool


def check_sector_universality(basis: LieBasis, shape: YoungDiagram) -> SectorVerdict:
    """Does the algebra act with full traceless rank m^2 - 1 on one sector?

    Sufficient for subsystem universality there: any subalgebra of u(m)
    whose traceless part has that rank contains the full traceless algebra.
    """
    m = basis.space.sizes[basis.sector_index(shape)]
    if m == 1:
        return SectorVerdict(shape, 1, 0, True)
    rank = projected_rank(basis, [shape], traceless_only=True)
    return SectorVerdict(shape, m, rank, rank >= m * m - 1)


@dataclass(frozen=True)
class PairVerdict:
    pair: tuple[YoungDiagram, YoungDiagram]
    status: str  # "independent" | "correlated" | "trivial"
    rank: int | None
    trace_witness: tuple[float, float] | None

    @property
    def independent(self) -> bool:
        return self.status in ("independent", "trivial")


def _trace_witness(basis: LieBasis, ia: int, ib: int, seed: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal(basis.dim)
    tr = []
    for s in (ia, ib):
        acc = np.tensordot(coeff, basis.stacks[s], axes=(0, 0))
        w, v = np.linalg.eigh(-1j * acc)
        u = (v * np.exp(1j * w)) @ v.conj().T
        tr.append(float(np.abs(np.trace(u))))
    return tr[0], tr[1]


def check_pair_independence(
    basis: LieBasis, a: YoungDiagram | int, b: YoungDiagram | int, seed: int = 0
) -> PairVerdict:
    """Are the unitaries realized in two sectors independent of each other?

    Unequal multiplicity dimensions are trivially independent.  For equal
    dimensions m >= 2, the traceless joint rank decides: 2(m^2 - 1) is
    independent, m^2 - 1 is a correlated (locked) pair, anything between is
    reported as an inconsistency (a genuine subdirect product of the two
    traceless algebras admits no other rank).
    """
    if a == b:
        raise ValueError("need two distinct sectors")
    ia, ib = basis.sector_index(a), basis.sector_index(b)
    ma, mb = basis.space.sizes[ia], basis.space.sizes[ib]
    if ma != mb or ma == 1:
        return PairVerdict((a, b), "trivial", None, None)
    rank = projected_rank(basis, [a, b], traceless_only=True)
    full = ma * ma - 1
    witness = _trace_witness(basis, ia, ib, seed)
    if rank == 2 * full:
        return PairVerdict((a, b), "independent", rank, witness)
    if rank == full:
        return PairVerdict((a, b), "correlated", rank, witness)
    raise InconsistentRankError(rank, (full, 2 * full))


@dataclass(frozen=True)
class Correlation:
    pair: tuple[YoungDiagram, YoungDiagram]
    unitary: np.ndarray
    conjugated: bool
    residual: float


def find_correlation(
    basis: LieBasis, a: YoungDiagram | int, b: YoungDiagram | int, tol: float = 1e-8
) -> Correlation:
    """The unitary locking two correlated sectors together.

    Solves W A_a = A_b W (or W A_a* = A_b W, the conjugated variant) over
    the traceless parts of all basis elements, via the null vector of the
    stacked linear system; fails loudly if no one-dimensional solution space
    exists within tolerance.
    """
    ia, ib = basis.sector_index(a), basis.sector_index(b)
    m = basis.space.sizes[ia]
    if basis.space.sizes[ib] != m:
        raise ValueError("sectors have different dimensions")
    eye = np.eye(m)

    def traceless(stack):
        tr = np.trace(stack, axis1=1, axis2=2) / m
        return stack - tr[:, None, None] * eye

    blocks_a = traceless(basis.stacks[ia])
    blocks_b = traceless(basis.stacks[ib])
    keep = [
        i
        for i in range(basis.dim)
        if np.linalg.norm(blocks_a[i]) + np.linalg.norm(blocks_b[i]) > 1e-12
    ]

    best = None
    # for 2-dim blocks both variants solve (the defining rep is self-dual);
    # the plain one is tried first and wins deterministically
    for conjugated in (False, True):
        rows = []
        for i in keep:
            xa = blocks_a[i].conj() if conjugated else blocks_a[i]
            rows.append(np.kron(blocks_b[i], eye) - np.kron(eye, xa.T))
        system = np.vstack(rows)
        _, svals, vt = np.linalg.svd(system)
        resid = svals[-1] / max(1.0, svals[0])
        gap_ok = (len(svals) < 2) or (svals[-2] / max(1.0, svals[0]) > tol)
        if resid < tol and gap_ok:
            w = vt[-1].reshape(m, m)
            # scale to unitary, fix the global phase deterministically
            scale = np.sqrt(np.trace(w.conj().T @ w).real / m)
            w = w / scale
            lead = w.ravel()[np.argmax(np.abs(w.ravel()))]
            w = w * (np.conj(lead) / np.abs(lead))
            best = Correlation((a, b), w, conjugated, float(resid))
            break
    if best is None:
        raise RuntimeError(
            f"no correlation unitary found for {a}, {b} within {tol}; "
            "this contradicts the pairwise classification - check tolerances"
        )
    return best


def center(basis: LieBasis) -> list[Blocks]:
    """Basis of the center: elements of the span commuting with every
    generator (equivalently, by the Jacobi identity, with the whole span)."""
    if basis.generator_vecs is None or len(basis.generator_vecs) == 0:
        gens = basis.vecs
    else:
        gens = basis.generator_vecs
    rows = []
    gen_blocks = [basis.space.unvec(g) for g in gens]
    for s, m in enumerate(basis.space.sizes):
        gstack = np.stack([g[s] for g in gen_blocks])  # (G, m, m)
        estack = basis.stacks[s]  # (dim, m, m)
        # comm[e, g] = E_e G_g - G_g E_e
        c = np.einsum("eij,gjk->egik", estack, gstack) - np.einsum(
            "gij,ejk->egik", gstack, estack
        )
        w = np.sqrt(basis.space.weights[s])
        flat = c.reshape(basis.dim, -1)
        rows.append(w * flat.real)
        rows.append(w * flat.imag)
    system = np.concatenate(rows, axis=1)  # (dim, G * coords)
    u, svals, _ = np.linalg.svd(system, full_matrices=False)
    thr = basis.tol * np.sqrt(basis.space.veclen) * max(1.0, svals[0] if len(svals) else 1.0)
    out = []
    for i in range(len(svals)):
        if svals[i] > thr:
            continue
        coeff = u[:, i]
        blocks = [
            np.tensordot(coeff, basis.stacks[s], axes=(0, 0))
            for s in range(len(basis.space.sizes))
        ]
        out.append(blocks)
    return out


def center_dimension(basis: LieBasis) -> int:
    return len(center(basis))


def derived_dimension(basis: LieBasis) -> int:
    """Rank of the span of all pairwise commutators of basis elements."""
    dim = basis.dim
    veclen = basis.space.veclen
    ortho = np.zeros((dim, veclen))
    no = 0
    thr = basis.tol * np.sqrt(veclen)

    pairs = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    for start in range(0, len(pairs), _BATCH):
        batch = pairs[start:start + _BATCH]
        i_idx = np.array([p[0] for p in batch])
        j_idx = np.array([p[1] for p in batch])
        cols = []
        for s, m in enumerate(basis.space.sizes):
            x = basis.stacks[s][i_idx]
            y = basis.stacks[s][j_idx]
            c = x @ y - y @ x
            w = np.sqrt(basis.space.weights[s])
            flat = c.reshape(len(batch), m * m)
            cols.append(w * flat.real)
            cols.append(w * flat.imag)
        rows = np.concatenate(cols, axis=1)
        rows = rows - (rows @ ortho[:no].T) @ ortho[:no]
        for r in rows:
            if no == dim:
                return no
            r = r - (r @ ortho[:no].T) @ ortho[:no]
            nrm = np.linalg.norm(r)
            if nrm > thr:
                ortho[no] = r / nrm
                no += 1
    return no
