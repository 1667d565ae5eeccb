"""Design-order bounds for random 3-local invariant circuits.

The moment match between the 3-local group and all invariant unitaries is
controlled by the smallest multiplicity dimension outside the two cheap
sectors (the symmetric one and the standard one); the bound is exactly
checkable from the dimension table, no sampling involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .partitions import (
    YoungDiagram,
    content_sum,
    diagram,
    enumerate_diagrams,
    multiplicity_dim,
)


@dataclass(frozen=True)
class DesignReport:
    n: int
    d: int
    mu0: YoungDiagram
    mu1: YoungDiagram
    third_min: int
    third_min_shape: YoungDiagram
    t_max: int
    formula_applies: bool  # the n >= 9, d < n-1 hypothesis
    matches_formula: bool | None  # third_min == n(n-3)/2, asserted only above

    def to_csv_row(self) -> str:
        return f"{self.n},{self.d},{self.third_min},{self.t_max},{self.matches_formula}"


def design_order(n: int, d: int) -> DesignReport:
    """Largest exact design order t_max of the 3-local circuit ensemble.

    Removes the trivial sector [n] and the standard sector [n-1,1], takes
    the minimal remaining multiplicity dimension D; moments match up to
    t = D - 1.  Under the hypotheses n >= 9 and d < n - 1 the minimum is
    n(n-3)/2, attained at [n-2,2]."""
    if n < 4 or d < 2:
        raise ValueError("need n >= 4 and d >= 2")
    mu0 = diagram(n)
    mu1 = diagram(n - 1, 1)
    rest = [s for s in enumerate_diagrams(n, d) if s not in (mu0, mu1)]
    if not rest:
        raise ValueError("no sectors beyond the two cheap ones")
    # min is attained at the first minimizer in enumeration order (ties occur:
    # a shape and its transpose share a dimension)
    dims = [(multiplicity_dim(s), s) for s in rest]
    third_min, shape = min(dims, key=lambda t: t[0])
    applies = n >= 9 and d < n - 1
    matches = (third_min == n * (n - 3) // 2) if applies else None
    return DesignReport(
        n=n,
        d=d,
        mu0=mu0,
        mu1=mu1,
        third_min=third_min,
        third_min_shape=shape,
        t_max=third_min - 1,
        formula_applies=applies,
        matches_formula=matches,
    )


@dataclass(frozen=True)
class MomentProjectorReport:
    """Eigenvalues of the two commuting projector combinations built from the
    transposition sum, on every sector (exact rational arithmetic)."""

    n: int
    table: tuple[tuple[YoungDiagram, Fraction, Fraction, Fraction], ...]
    # rows: (shape, transposition-sum eigenvalue, a0 eigenvalue, a1 eigenvalue)

    @property
    def ok(self) -> bool:
        for shape, _, a0, a1 in self.table:
            if shape.rows == (self.n,) and (a0, a1) != (1, 0):
                return False
            if shape.rows == (self.n - 1, 1) and (a0, a1) != (0, 1):
                return False
        return True


def verify_moment_projectors(n: int) -> MomentProjectorReport:
    """The combinations a0 = B/n - (n-3)/2 and a1 = (n-1)/2 - B/n of the
    transposition sum B act as (1, 0) on the symmetric sector and (0, 1) on
    the standard sector; eigenvalues elsewhere are reported for inspection.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rows = []
    for shape in enumerate_diagrams(n, n):
        b = Fraction(content_sum(shape))  # eigenvalue of the transposition sum
        a0 = b / n - Fraction(n - 3, 2)
        a1 = Fraction(n - 1, 2) - b / n
        rows.append((shape, b, a0, a1))
    return MomentProjectorReport(n, tuple(rows))


@dataclass(frozen=True)
class TwoDesignWitness:
    n: int
    d: int
    correlated_pairs: tuple[tuple[YoungDiagram, YoungDiagram], ...]
    semi_universal: bool

    @property
    def has_witness(self) -> bool:
        return not self.semi_universal


def two_design_failure(n: int, d: int, tol: float = 1e-9) -> TwoDesignWitness:
    """Structural witness that 2-local random circuits are not a 2-design:
    the correlated sector pairs that break semi-universality (a 2-design
    requires semi-universality).  No witness exists at d = 2."""
    from .semiuni import check_semiuniversality

    report = check_semiuniversality(n, d, 2, tol=tol)
    pairs = tuple(c.pair for c in report.correlations)
    return TwoDesignWitness(n, d, pairs, report.verdict)
