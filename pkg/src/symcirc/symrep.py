"""Orthogonal matrix irreps of the symmetric group on standard tableaux.

The basis is ordered recursively: tableaux are grouped by the shape left
after deleting the largest entry, groups sorted by descending child
dimension (descending lexicographic on ties), and each group internally
ordered like the child basis.  With this order, restriction to the subgroup
fixing the last point is literally block-diagonal, one block per branching
child.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .partitions import YoungDiagram, branching, multiplicity_dim
from .permutations import Perm, adjacent_word, cycle_type

INTERTWINER_TOL = 1e-10


@dataclass(frozen=True)
class StandardTableau:
    """A bijective filling of a shape with 1..n, increasing along rows and columns."""

    shape: YoungDiagram
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.shape.n
        if tuple(len(r) for r in self.rows) != self.shape.rows:
            raise ValueError("filling does not match shape")
        if sorted(v for row in self.rows for v in row) != list(range(1, n + 1)):
            raise ValueError("filling must contain 1..n exactly once")
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("rows must increase")
        for i in range(len(self.rows) - 1):
            for c in range(len(self.rows[i + 1])):
                if self.rows[i][c] >= self.rows[i + 1][c]:
                    raise ValueError("columns must increase")

    def position(self, value: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if v == value:
                    return r, c
        raise ValueError(f"{value} not in tableau")

    def content(self, value: int) -> int:
        r, c = self.position(value)
        return c - r

    def delete_largest(self) -> "StandardTableau":
        n = self.shape.n
        r, c = self.position(n)
        rows = [list(row) for row in self.rows]
        rows[r].pop()
        if not rows[r]:
            rows.pop(r)
        return StandardTableau(
            YoungDiagram(tuple(len(row) for row in rows)),
            tuple(tuple(row) for row in rows),
        )

    def swap_adjacent(self, i: int) -> "StandardTableau | None":
        """The tableau with entries i and i+1 exchanged, or None if not standard."""
        (r1, c1), (r2, c2) = self.position(i), self.position(i + 1)
        if r1 == r2 or c1 == c2:
            return None
        rows = [list(row) for row in self.rows]
        rows[r1][c1], rows[r2][c2] = i + 1, i
        return StandardTableau(self.shape, tuple(tuple(row) for row in rows))


def _child_order(shape: YoungDiagram) -> list[YoungDiagram]:
    kids = branching(shape).children
    return sorted(kids, key=lambda c: (-multiplicity_dim(c), tuple(-r for r in c.rows)))


@lru_cache(maxsize=None)
def standard_tableaux(shape: YoungDiagram) -> tuple[StandardTableau, ...]:
    """All standard tableaux of the shape, in the restriction-compatible order."""
    n = shape.n
    if n == 0:
        return (StandardTableau(shape, ()),)
    if n == 1:
        return (StandardTableau(shape, ((1,),)),)
    out = []
    for child in _child_order(shape):
        # the cell removed to reach this child
        extra = next(
            (r, c)
            for r, c in shape.cells()
            if r >= child.num_rows or c >= child.rows[r]
        )
        for sub in standard_tableaux(child):
            rows = [list(row) for row in sub.rows]
            while len(rows) <= extra[0]:
                rows.append([])
            rows[extra[0]].append(n)
            out.append(StandardTableau(shape, tuple(tuple(row) for row in rows)))
    return tuple(out)


@dataclass(frozen=True)
class IrrepRep:
    """Concrete orthogonal irrep: one generator matrix per adjacent transposition."""

    shape: YoungDiagram
    basis: tuple[StandardTableau, ...]
    generators: tuple[np.ndarray, ...]  # generators[i] represents (i+1, i+2)

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def build_irrep(shape: YoungDiagram) -> IrrepRep:
    """Generator matrices in the orthogonal (Young) form.

    For the transposition (i, i+1) the diagonal entry at tableau T is the
    reciprocal axial distance 1/rho with rho = content(i+1) - content(i);
    the off-diagonal coupling to the tableau with i, i+1 exchanged (when
    standard) is sqrt(1 - 1/rho^2).
    """
    if shape.n < 1:
        raise ValueError("need at least one box")
    basis = standard_tableaux(shape)
    index = {t: k for k, t in enumerate(basis)}
    m = len(basis)
    gens = []
    for i in range(1, shape.n):
        g = np.zeros((m, m))
        for k, t in enumerate(basis):
            rho = t.content(i + 1) - t.content(i)
            g[k, k] = 1.0 / rho
            swapped = t.swap_adjacent(i)
            if swapped is not None:
                g[index[swapped], k] = np.sqrt(1.0 - 1.0 / rho**2)
        gens.append(g)
    return IrrepRep(shape, basis, tuple(gens))


def rep_matrix(rep: IrrepRep, perm: Perm) -> np.ndarray:
    """Orthogonal matrix representing the permutation (product over a fixed
    adjacent-transposition word; the result is decomposition-independent)."""
    if len(perm) != rep.shape.n:
        raise ValueError(f"permutation of {len(perm)} points for shape with n = {rep.shape.n}")
    out = np.eye(rep.dim)
    for i in adjacent_word(perm):
        out = out @ rep.generators[i]
    return out


@lru_cache(maxsize=None)
def character_by_type(shape: YoungDiagram, ctype: tuple[int, ...]) -> int:
    """Character on a conjugacy class given by its cycle type.

    Murnaghan-Nakayama recursion over border strips; exact integers.
    """
    if shape.n == 0:
        return 1
    strip_len = ctype[0]
    rest = ctype[1:]
    total = 0
    for stripped, height in _border_strips(shape, strip_len):
        total += (-1) ** height * character_by_type(stripped, rest)
    return total


def _border_strips(shape: YoungDiagram, length: int):
    """Diagrams left after removing a connected border strip of the given
    length, with the strip height (rows spanned minus one).

    Uses first-column hook lengths (beta numbers): removing a strip of size
    L replaces one beta by beta - L, allowed when the target value is free.
    """
    rows = shape.rows
    k = len(rows)
    betas = [rows[i] + (k - 1 - i) for i in range(k)]
    taken = set(betas)
    for b in betas:
        nb = b - length
        if nb < 0 or nb in taken:
            continue
        height = sum(1 for x in betas if nb < x < b)
        new_betas = sorted((taken - {b}) | {nb}, reverse=True)
        new_rows = tuple(x - (k - 1 - pos) for pos, x in enumerate(new_betas))
        yield YoungDiagram(tuple(r for r in new_rows if r > 0)), height


def character(shape: YoungDiagram, perm: Perm) -> float:
    """Trace of the representing matrix; a class function, evaluated exactly
    through the cycle type."""
    if len(perm) != shape.n:
        raise ValueError("permutation length must match box count")
    return float(character_by_type(shape, cycle_type(perm)))


def find_twisted_intertwiner(
    a: YoungDiagram, b: YoungDiagram
) -> tuple[np.ndarray | None, bool]:
    """Real orthogonal J with J P_a(s) J^T = -P_b(s) for every adjacent
    transposition s (hence J P_a(sigma) J^T = sgn(sigma) P_b(sigma) for all
    sigma).  Exists, uniquely up to sign, exactly when b is the transpose of
    a; the sign is fixed by making the first nonzero entry positive.
    """
    if multiplicity_dim(a) != multiplicity_dim(b):
        raise ValueError(
            f"dimension mismatch: dim {a} = {multiplicity_dim(a)}, "
            f"dim {b} = {multiplicity_dim(b)}"
        )
    rep_a, rep_b = build_irrep(a), build_irrep(b)
    m = rep_a.dim
    eye = np.eye(m)
    # J G_a + G_b J = 0 for each generator, as a linear system on vec(J)
    blocks = [
        np.kron(eye, ga.T) + np.kron(gb, eye)
        for ga, gb in zip(rep_a.generators, rep_b.generators)
    ]
    system = np.vstack(blocks) if blocks else np.zeros((1, m * m))
    _, svals, vt = np.linalg.svd(system)
    null_mask = svals < INTERTWINER_TOL * max(1.0, svals[0] if len(svals) else 1.0)
    null_dim = int(np.sum(null_mask)) + (m * m - len(svals))
    if null_dim == 0:
        return None, False
    if null_dim > 1:
        raise RuntimeError(
            f"twisted intertwiner space for {a}, {b} has dimension {null_dim}"
        )
    j = vt[-1].reshape(m, m)
    j = j / np.linalg.norm(j, ord=2)  # scale to orthogonal
    flat = j.ravel()
    lead = flat[np.argmax(np.abs(flat) > INTERTWINER_TOL)]
    if lead < 0:
        j = -j
    return j, True
