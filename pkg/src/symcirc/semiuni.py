"""Top-level verdict engines: semi-universality audits and the named
membership criteria for invariant gates and Hamiltonians."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blockops import (
    BlockOperator,
    local_generators,
    sector_dims,
    sector_shapes,
    two_local_obstruction,
    weighted_norm,
    weighted_trace,
)
from .liealg import (
    BlockSpace,
    Correlation,
    DEFAULT_TOL,
    PairVerdict,
    SectorVerdict,
    check_pair_independence,
    check_sector_universality,
    closure,
    closure_blocks,
    find_correlation,
)
from .partitions import count_diagrams, diagram, dimension_gap
from .symrep import find_twisted_intertwiner

PHASE_TOL = 1e-8
DET_TOL = 1e-8


@dataclass(frozen=True)
class SemiReport:
    """Full evidence record for one (n, d, k) semi-universality audit."""

    n: int
    d: int
    k: int
    verdict: bool
    dim: int
    expected_dim: int
    closed: bool
    sector_table: tuple[SectorVerdict, ...]
    pair_table: tuple[PairVerdict, ...]
    correlations: tuple[Correlation, ...] = ()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "verdict": "semi-universal" if self.verdict else "not semi-universal",
            "dim": self.dim,
            "expected_dim": self.expected_dim,
            "reliable": self.closed,
            "sectors": [
                {"shape": v.shape.to_json(), "m": v.m, "condA": v.ok, "rank": v.rank}
                for v in self.sector_table
            ],
            "pairs": [
                {
                    "shapes": [p.pair[0].to_json(), p.pair[1].to_json()],
                    "verdict": p.status,
                    "rank": p.rank,
                    "trace_witness": list(p.trace_witness) if p.trace_witness else None,
                }
                for p in self.pair_table
            ],
            "correlations": [
                {
                    "shapes": [c.pair[0].to_json(), c.pair[1].to_json()],
                    "conjugated": c.conjugated,
                    "residual": c.residual,
                    "unitary_re": np.real(c.unitary).ravel().tolist(),
                    "unitary_im": np.imag(c.unitary).ravel().tolist(),
                }
                for c in self.correlations
            ],
        }


def check_semiuniversality(
    n: int,
    d: int,
    k: int,
    tol: float = DEFAULT_TOL,
    max_dim: int | None = None,
    seed: int = 0,
) -> SemiReport:
    """Close the k-local generators and evaluate both semi-universality
    conditions on every sector and sector pair.

    The verdict is True exactly when every sector reaches its full traceless
    rank and no equal-dimension pair is locked; in that case the closure
    dimension must match sum(m^2 - 1) + count_diagrams(k, d).
    """
    basis = closure(local_generators(n, d, k), tol=tol, max_dim=max_dim)
    shapes = sector_shapes(n, d)
    mults, _ = sector_dims(n, d)
    sector_table = tuple(check_sector_universality(basis, s) for s in shapes)
    pair_table = []
    correlations = []
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            verdict = check_pair_independence(basis, shapes[i], shapes[j], seed=seed)
            pair_table.append(verdict)
            if verdict.status == "correlated":
                correlations.append(find_correlation(basis, shapes[i], shapes[j]))
    ok = all(v.ok for v in sector_table) and all(p.independent for p in pair_table)
    expected = sum(m * m - 1 for m in mults) + count_diagrams(k, d)
    return SemiReport(
        n=n,
        d=d,
        k=k,
        verdict=ok,
        dim=basis.dim,
        expected_dim=expected,
        closed=basis.closed,
        sector_table=sector_table,
        pair_table=tuple(pair_table),
        correlations=tuple(correlations),
    )


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    detail: str
    evidence: dict = field(default_factory=dict)


def check_two_local_membership(op: BlockOperator) -> MembershipVerdict:
    """Is a 3-qudit invariant unitary a product of 2-qudit invariant ones?

    Decided by the determinant constraint det v_[2,1] = det v_[3] *
    det v_[1,1,1] (phases compared on the unit circle).  Trivially true for
    d = 2, where the antisymmetric sector is absent.
    """
    if op.n != 3:
        raise ValueError("membership test is defined for 3-qudit operators")
    for b in op.blocks:
        if np.abs(b @ b.conj().T - np.eye(b.shape[0])).max() > 1e-10:
            raise ValueError("blocks must be unitary to 1e-10")
    if op.d == 2:
        return MembershipVerdict(
            True, "d = 2: the constraint holds trivially (no antisymmetric sector)"
        )
    det_mixed = np.linalg.det(op.block(diagram(2, 1)))
    det_sym = np.linalg.det(op.block(diagram(3)))
    det_anti = np.linalg.det(op.block(diagram(1, 1, 1)))
    gap = float(abs(det_mixed * np.conj(det_sym * det_anti) - 1.0))
    return MembershipVerdict(
        gap <= DET_TOL,
        f"|det phase gap| = {gap:.3e}",
        {
            "det_mixed": complex(det_mixed),
            "det_sym": complex(det_sym),
            "det_anti": complex(det_anti),
            "phase_gap": float(gap),
        },
    )


def hamiltonian_two_local_reachable(h: BlockOperator) -> MembershipVerdict:
    """Does exp(-iHt) stay inside the 2-local-generated group?  True exactly
    when H is trace-orthogonal to the obstruction operator."""
    if h.n != 3:
        raise ValueError("Hamiltonian must act on 3 qudits")
    if not h.is_hermitian(1e-10):
        raise ValueError("Hamiltonian must be Hermitian blockwise")
    obstruction = two_local_obstruction(h.d)
    pairing = weighted_trace(h @ obstruction)
    scale = weighted_norm(h) * weighted_norm(obstruction)
    ok = bool(abs(pairing) <= PHASE_TOL * max(scale, 1e-30))
    return MembershipVerdict(
        ok,
        f"|Tr(H C)| = {abs(pairing):.3e} against scale {scale:.3e}",
        {"pairing": complex(pairing), "scale": float(scale)},
    )


@dataclass(frozen=True)
class ConstraintVerdict:
    breaks: bool
    phase_distance: float
    trace_abs: tuple[float, float]
    trace_test: bool
    detail: str = ""


def breaks_sector_correlation(op: BlockOperator) -> ConstraintVerdict:
    """Does a 4-qudit invariant unitary break the conjugation lock between
    the [3,1] and [2,1,1] sectors?

    Minimizes || J Y_[3,1] J^T - e^{i phi} (Y_[2,1,1])* || analytically over
    the phase; breaking means the minimum stays away from zero.  Also
    reports the cheap witness |Tr Y_[3,1]| != |Tr Y_[2,1,1]|.
    """
    if op.n != 4:
        raise ValueError("constraint test is defined for 4-qudit operators")
    for b in op.blocks:
        if np.abs(b @ b.conj().T - np.eye(b.shape[0])).max() > 1e-10:
            raise ValueError("blocks must be unitary to 1e-10")
    if op.d == 2:
        return ConstraintVerdict(
            False, 0.0, (0.0, 0.0), False,
            "d = 2: no [2,1,1] sector, nothing to break",
        )
    j, _ = find_twisted_intertwiner(diagram(3, 1), diagram(2, 1, 1))
    y1 = op.block(diagram(3, 1))
    y2 = np.conj(op.block(diagram(2, 1, 1)))
    lhs = j @ y1 @ j.T
    overlap = np.trace(y2.conj().T @ lhs)
    dist_sq = (
        np.linalg.norm(lhs) ** 2 + np.linalg.norm(y2) ** 2 - 2.0 * abs(overlap)
    )
    dist = float(np.sqrt(max(dist_sq, 0.0)))
    m = y1.shape[0]
    tr = (float(abs(np.trace(y1))), float(abs(np.trace(op.block(diagram(2, 1, 1))))))
    return ConstraintVerdict(
        breaks=bool(dist > PHASE_TOL * np.sqrt(m)),
        phase_distance=dist,
        trace_abs=tr,
        trace_test=bool(abs(tr[0] - tr[1]) > PHASE_TOL),
    )


@dataclass(frozen=True)
class GapAuditRow:
    n: int
    k: int
    d: int
    closure_dim: int
    block_dim: int  # sum of m^2
    gap: int
    equality: bool
    proper: bool


def gap_audit(n_values: list[int], d: int, k: int, tol: float = DEFAULT_TOL) -> list[GapAuditRow]:
    """For each n, compare the k-local closure dimension against
    sum(m^2) - (count(n,d) - count(k,d)) and record whether the deficit is
    proper (strictly positive) whenever k < n and d >= 3."""
    rows = []
    for n in n_values:
        basis = closure(local_generators(n, d, k), tol=tol)
        mults, _ = sector_dims(n, d)
        gap = dimension_gap(n, k, d)
        block_dim = sum(m * m for m in mults)
        # properness is only claimed for d >= 3: the deficit must be strictly
        # positive exactly when k < n
        proper = (gap > 0) == (k < n) if d >= 3 else True
        rows.append(
            GapAuditRow(
                n=n,
                k=k,
                d=d,
                closure_dim=basis.dim,
                block_dim=block_dim,
                gap=gap,
                equality=basis.dim == block_dim - gap,
                proper=proper,
            )
        )
    return rows


@dataclass(frozen=True)
class BlockExtensionReport:
    dim_sub: int
    dim_total: int
    closure_dim: int
    commutant_dim: int
    attempts: int

    @property
    def ok(self) -> bool:
        return (
            self.commutant_dim == 1
            and self.closure_dim == self.dim_total**2 - 1
        )


def _su_basis(m: int) -> list[np.ndarray]:
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            e = np.zeros((m, m), dtype=complex)
            e[i, j] = 1.0
            e[j, i] = -1.0
            out.append(e)
            f = np.zeros((m, m), dtype=complex)
            f[i, j] = 1j
            f[j, i] = 1j
            out.append(f)
    for i in range(m - 1):
        g = np.zeros((m, m), dtype=complex)
        g[i, i] = 1j
        g[i + 1, i + 1] = -1j
        out.append(g)
    return out


def check_block_extension(
    dim_sub: int, dim_total: int, seed: int = 0, tol: float = DEFAULT_TOL
) -> BlockExtensionReport:
    """Controllability extension from one block: the traceless algebra on a
    subspace of dimension >= 3 (or 2 with odd total dimension), plus a
    single random traceless anti-Hermitian direction acting irreducibly,
    closes to the full traceless algebra.

    Irreducibility is certified by a one-dimensional commutant; reducible
    random draws are resampled up to 10 times.
    """
    if not 2 <= dim_sub <= dim_total:
        raise ValueError("need 2 <= dim_sub <= dim_total")
    rng = np.random.default_rng(seed)
    space = BlockSpace((dim_total,), (1.0,))
    embedded = []
    for g in _su_basis(dim_sub):
        big = np.zeros((dim_total, dim_total), dtype=complex)
        big[:dim_sub, :dim_sub] = g
        embedded.append([big])

    for attempt in range(1, 11):
        g = rng.standard_normal((dim_total, dim_total)) + 1j * rng.standard_normal(
            (dim_total, dim_total)
        )
        a = (g - g.conj().T) / 2
        a -= np.trace(a) / dim_total * np.eye(dim_total)
        gens = embedded + [[a]]
        commutant = _commutant_dim([blk[0] for blk in gens])
        if commutant != 1:
            continue
        basis = closure_blocks(space, gens, tol=tol)
        return BlockExtensionReport(
            dim_sub, dim_total, basis.dim, commutant, attempt
        )
    return BlockExtensionReport(dim_sub, dim_total, 0, commutant, 10)


def _commutant_dim(mats: list[np.ndarray]) -> int:
    m = mats[0].shape[0]
    eye = np.eye(m)
    rows = [np.kron(a, eye) - np.kron(eye, a.T) for a in mats]
    system = np.vstack(rows)
    svals = np.linalg.svd(system, compute_uv=False)
    thr = 1e-9 * max(1.0, svals[0]) * m
    return int(np.sum(svals <= thr)) + (m * m - len(svals))
