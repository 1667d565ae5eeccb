"""Young diagrams: enumeration, counting, branching and dimension formulas.

Everything here is exact integer (or Fraction) arithmetic.  Diagrams with n
boxes and at most d rows label simultaneously the SU(d) charge sectors and
the symmetric-group irreps that appear on n qudits, so this module is the
combinatorial substrate for the whole package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """An integer partition: non-increasing positive row lengths."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r < 1 for r in rows):
            raise ValueError(f"rows must be positive, got {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows must be non-increasing, got {rows}")

    @property
    def n(self) -> int:
        return sum(self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def cells(self):
        """Yield (row, col) pairs, row-major, both 0-based."""
        for r, length in enumerate(self.rows):
            for c in range(length):
                yield r, c

    def transpose(self) -> "YoungDiagram":
        if not self.rows:
            return self
        cols = [0] * self.rows[0]
        for r in self.rows:
            for c in range(r):
                cols[c] += 1
        return YoungDiagram(tuple(cols))

    def contains(self, other: "YoungDiagram") -> bool:
        if other.num_rows > self.num_rows:
            return False
        return all(o <= s for o, s in zip(other.rows, self.rows))

    def to_json(self) -> list[int]:
        return list(self.rows)

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.rows) + "]"


EMPTY_DIAGRAM = YoungDiagram(())


def diagram(*rows: int) -> YoungDiagram:
    """Convenience constructor: ``diagram(3, 1)`` is the shape [3,1]."""
    return YoungDiagram(tuple(rows))


@dataclass(frozen=True)
class BranchSet:
    """A diagram together with the diagrams obtained by deleting one corner box."""

    parent: YoungDiagram
    children: tuple[YoungDiagram, ...]


def _partitions_into(n: int, max_part: int, max_len: int):
    # descending lexicographic: largest first part first
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_into(n - first, first, max_len - 1):
            yield (first,) + rest


def enumerate_diagrams(n: int, d: int) -> list[YoungDiagram]:
    """All partitions of n into at most d parts, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    if n == 0:
        return [EMPTY_DIAGRAM]
    return [YoungDiagram(p) for p in _partitions_into(n, n, d)]


@lru_cache(maxsize=None)
def count_diagrams(n: int, d: int) -> int:
    """Number of partitions of n into at most d parts (exact, arbitrary precision).

    Dynamic programming on p(n, d) = p(n, d-1) + p(n-d, d); Python integers
    keep the result exact far beyond 64 bits (needed around n = 10^4, d = 10).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    # row[j] = number of partitions of j into parts of size <= current d cap
    row = [1] + [0] * n
    for part in range(1, d + 1):
        for j in range(part, n + 1):
            row[j] += row[j - part]
    return row[n]


def branching(shape: YoungDiagram) -> BranchSet:
    """Diagrams reached by deleting one removable (corner) box, multiplicity one each."""
    if shape.n < 1:
        raise ValueError("branching needs at least one box")
    rows = shape.rows
    children = []
    for i, r in enumerate(rows):
        removable = (i == len(rows) - 1) or (rows[i + 1] < r)
        if not removable:
            continue
        if r == 1:
            child = rows[:i] + rows[i + 1:]
        else:
            child = rows[:i] + (r - 1,) + rows[i + 1:]
        children.append(YoungDiagram(child))
    return BranchSet(shape, tuple(children))


def hook_lengths(shape: YoungDiagram) -> dict[tuple[int, int], int]:
    cols = shape.transpose().rows
    return {
        (r, c): shape.rows[r] - c + cols[c] - r - 1
        for r, c in shape.cells()
    }


@lru_cache(maxsize=None)
def multiplicity_dim(shape: YoungDiagram) -> int:
    """Dimension of the symmetric-group irrep (number of standard tableaux).

    Hook length formula: n! divided by the product of all hook lengths.
    """
    if shape.n == 0:
        return 1
    hooks = hook_lengths(shape)
    prod = 1
    for h in hooks.values():
        prod *= h
    quotient, rem = divmod(factorial(shape.n), prod)
    assert rem == 0
    return quotient


@lru_cache(maxsize=None)
def charge_dim(shape: YoungDiagram, d: int) -> int:
    """Dimension of the SU(d) irrep: semistandard tableaux with entries 1..d.

    Product over cells of (d + col - row) / hook; zero when the shape has
    more than d rows.
    """
    if shape.num_rows > d:
        return 0
    if shape.n == 0:
        return 1
    hooks = hook_lengths(shape)
    value = Fraction(1)
    for (r, c), h in hooks.items():
        value *= Fraction(d + c - r, h)
    assert value.denominator == 1
    return int(value)


def content_sum(shape: YoungDiagram) -> int:
    """Sum of (col - row) over cells: the scalar by which the sum of all
    transpositions acts on the multiplicity space of this shape."""
    return sum(c - r for r, c in shape.cells())


def dimension_gap(n: int, k: int, d: int) -> int:
    """count(n, d) - count(k, d): dimension deficit of the k-local group.

    Only meaningful for k >= 3, where k-local gates are semi-universal and
    the deficit is purely central.
    """
    _require_semiuniversal_locality(n, k)
    return count_diagrams(n, d) - count_diagrams(k, d)


def locality_ratio(n: int, k: int, d: int) -> Fraction:
    """(count(k,d) - count(3,d)) / (count(n,d) - count(3,d)), exact.

    The fraction of the central constraints that k-local gates resolve;
    reaches 1 exactly at k = n.
    """
    _require_semiuniversal_locality(n, k)
    if n <= 3:
        raise ValueError("ratio needs n > 3 (denominator vanishes at n = 3)")
    num = count_diagrams(k, d) - count_diagrams(3, d)
    den = count_diagrams(n, d) - count_diagrams(3, d)
    return Fraction(num, den)


def _require_semiuniversal_locality(n: int, k: int):
    if k < 3:
        raise ValueError(
            f"k = {k}: formula requires semi-universality (k >= 3)"
        )
    if k > n:
        raise ValueError(f"need k <= n, got k = {k}, n = {n}")


@dataclass(frozen=True)
class MonotonicityReport:
    d: int
    k_max: int
    violations: tuple[int, ...]  # k where the expected pattern breaks
    plateau_at: tuple[int, ...] = ()  # d = 2 only: k with count(k) == count(k-1)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_monotonicity(d: int, k_max: int) -> MonotonicityReport:
    """Check growth of count_diagrams(k, d) in k.

    For d >= 3 the count must be strictly increasing; for d = 2 it stays
    flat exactly at odd k and increases at even k.
    """
    if d < 2 or k_max < 2:
        raise ValueError("need d >= 2 and k_max >= 2")
    violations = []
    plateaus = []
    for k in range(2, k_max + 1):
        prev, cur = count_diagrams(k - 1, d), count_diagrams(k, d)
        if d >= 3:
            if cur <= prev:
                violations.append(k)
        else:
            flat = cur == prev
            if flat:
                plateaus.append(k)
            if flat != (k % 2 == 1):
                violations.append(k)
    return MonotonicityReport(d, k_max, tuple(violations), tuple(plateaus))


@dataclass(frozen=True)
class BranchingFactsReport:
    """Exhaustive check of the three branching facts over all diagrams with
    m + 1 boxes and at most d rows (1-dimensional shapes excluded)."""

    m: int
    d: int
    fact1_failures: tuple[YoungDiagram, ...] = ()
    fact2_failures: tuple[YoungDiagram, ...] = ()
    fact3_failures: tuple[tuple[YoungDiagram, YoungDiagram], ...] = ()

    @property
    def ok(self) -> bool:
        return not (self.fact1_failures or self.fact2_failures or self.fact3_failures)


def check_branching_facts(m: int, d: int) -> BranchingFactsReport:
    """Verify, over every non-1D shape with m + 1 boxes and <= d rows:

    1. every branching child again has <= d rows;
    2. some branching child has multiplicity dimension >= 3;
    3. for every pair of distinct non-1D shapes, some child of dimension
       >= 2 belongs to exactly one of the two branching sets.

    All three hold whenever m >= 4; calling with m = 3 exhibits the
    expected failures.
    """
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    shapes = [
        s for s in enumerate_diagrams(m + 1, d) if multiplicity_dim(s) > 1
    ]
    branch = {s: set(branching(s).children) for s in shapes}

    fact1 = tuple(
        s for s in shapes if any(c.num_rows > d for c in branch[s])
    )
    fact2 = tuple(
        s
        for s in shapes
        if not any(multiplicity_dim(c) >= 3 for c in branch[s])
    )
    fact3 = []
    for i, a in enumerate(shapes):
        for b in shapes[i + 1:]:
            symm_diff = branch[a] ^ branch[b]
            if not any(multiplicity_dim(c) >= 2 for c in symm_diff):
                fact3.append((a, b))
    return BranchingFactsReport(m, d, fact1, fact2, tuple(fact3))
