import itertools
import random

import numpy as np
import pytest

from symcirc.partitions import charge_dim, diagram, enumerate_diagrams
from symcirc.permutations import all_permutations, compose, transposition
from symcirc.symrep import character
from symcirc.tensor import (
    DenseState,
    apply_permutation,
    basis_state,
    product_state,
    central_projector,
    central_traces,
    mixed_sector_involution_matrix,
    three_qudit_projector,
    verify_ancilla_pair,
    verify_centerless_lift,
    verify_wedge_eigen,
    wedge_state,
)


def random_state(d, m, seed=0):
    rng = np.random.default_rng(seed)
    amp = rng.standard_normal(d**m) + 1j * rng.standard_normal(d**m)
    return DenseState(d, m, amp / np.linalg.norm(amp))


def test_apply_permutation_basics():
    s = basis_state(2, (0, 1))
    out = apply_permutation(s, transposition(2, 0, 1))
    assert np.argmax(np.abs(out.amplitudes)) == 2  # |10>
    singlet = basis_state(2, (0, 1)) - basis_state(2, (1, 0))
    flipped = apply_permutation(singlet, transposition(2, 0, 1))
    assert (flipped + (-1) * (-1) * singlet).norm == pytest.approx(
        (flipped + singlet).norm
    )
    assert np.abs(flipped.amplitudes + singlet.amplitudes).max() < 1e-15


def test_apply_permutation_group_action():
    psi = random_state(3, 4, seed=3)
    perms = all_permutations(4)
    rng = random.Random(1)
    for _ in range(40):
        p, q = rng.choice(perms), rng.choice(perms)
        a = apply_permutation(apply_permutation(psi, q), p)
        b = apply_permutation(psi, compose(p, q))
        assert (a - b).norm < 1e-12


def test_apply_permutation_unitary():
    psi = random_state(2, 5, seed=9)
    for p in random.Random(2).sample(all_permutations(5), 10):
        assert apply_permutation(psi, p).norm == pytest.approx(psi.norm)


def test_three_qudit_projectors_resolve_identity():
    psi = random_state(3, 3, seed=4)
    parts = [
        three_qudit_projector(psi, shape, (0, 1, 2))
        for shape in (diagram(3), diagram(2, 1), diagram(1, 1, 1))
    ]
    total = parts[0] + parts[1] + parts[2]
    assert (total - psi).norm < 1e-12
    for shape, part in zip((diagram(3), diagram(2, 1), diagram(1, 1, 1)), parts):
        assert (three_qudit_projector(part, shape, (0, 1, 2)) - part).norm < 1e-12
    # orthogonality
    assert abs(parts[0].inner(parts[1])) < 1e-12
    assert abs(parts[0].inner(parts[2])) < 1e-12
    assert abs(parts[1].inner(parts[2])) < 1e-12


def test_projector_edge_cases():
    assert three_qudit_projector(
        basis_state(2, (0, 0, 0)), diagram(1, 1, 1), (0, 1, 2)
    ).norm == pytest.approx(0.0)
    w = wedge_state([np.eye(3)[k] for k in range(3)])
    assert three_qudit_projector(w, diagram(3), (0, 1, 2)).norm == pytest.approx(
        0.0, abs=1e-12
    )
    assert three_qudit_projector(w, diagram(1, 1, 1), (0, 1, 2)).norm == pytest.approx(1.0)


def test_product_state():
    up, down = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert (product_state([up, down, up]) - basis_state(2, (0, 1, 0))).norm == 0.0


def test_wedge_states():
    pair = wedge_state([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    expected = (basis_state(2, (0, 1)) - basis_state(2, (1, 0))) * (1 / np.sqrt(2))
    assert (pair - expected).norm < 1e-15
    v = np.zeros(4)
    v[0] = 1.0
    assert wedge_state([v, v]).norm == pytest.approx(0.0)
    quad = wedge_state([np.eye(4)[k] for k in range(4)])
    assert quad.norm == pytest.approx(1.0)
    # antisymmetry under exchanging any pair of slots
    for i, j in itertools.combinations(range(4), 2):
        assert (
            apply_permutation(quad, transposition(4, i, j)) + quad
        ).norm == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("which", (1, 2))
@pytest.mark.parametrize("d", (2, 3, 4))
def test_ancilla_pairs(which, d):
    rep = verify_ancilla_pair(which, d)
    assert rep.ok
    assert rep.eigvec_residual <= 1e-10
    assert rep.sym_kill_residual <= 1e-10
    assert rep.anti_kill_residual <= 1e-10
    assert rep.involution_residual <= 1e-10


def test_wedge_eigen_equations():
    four = verify_wedge_eigen(4)
    assert four.ok
    assert four.eigenvalues["[1,1,1]"] == pytest.approx(1.0)
    assert four.eigenvalues["[3]"] == pytest.approx(0.0, abs=1e-12)
    assert four.eigenvalues["[2,1]"] == pytest.approx(0.0, abs=1e-12)
    assert sum(four.eigenvalues.values()) == pytest.approx(1.0)
    three = verify_wedge_eigen(3)
    assert three.ok
    assert three.eigenvalues["[2,1]"] == pytest.approx(1.0)
    assert sum(three.eigenvalues.values()) == pytest.approx(1.0)


def test_central_projector_family():
    for n, d in ((3, 2), (4, 2), (3, 3)):
        psi = random_state(d, n, seed=n * d)
        total = np.zeros(d**n, dtype=complex)
        for shape in enumerate_diagrams(n, d):
            proj = central_projector(n, d, shape)
            out = proj(psi)
            assert (proj(out) - out).norm < 1e-11  # idempotent
            total += out.amplitudes
        assert np.linalg.norm(total - psi.amplitudes) < 1e-11


def test_projectors_hermitian_as_quadratic_forms():
    # <phi|P psi> == <P phi|psi> on random states, for both projector kinds
    phi = random_state(3, 3, seed=21)
    psi = random_state(3, 3, seed=22)
    for shape in (diagram(3), diagram(2, 1), diagram(1, 1, 1)):
        lhs = phi.inner(three_qudit_projector(psi, shape, (0, 1, 2)))
        rhs = three_qudit_projector(phi, shape, (0, 1, 2)).inner(psi)
        assert lhs == pytest.approx(rhs, abs=1e-12)
    phi4 = random_state(2, 4, seed=23)
    psi4 = random_state(2, 4, seed=24)
    for shape in enumerate_diagrams(4, 2):
        proj = central_projector(4, 2, shape)
        assert phi4.inner(proj(psi4)) == pytest.approx(proj(phi4).inner(psi4), abs=1e-12)


def test_central_projector_examples():
    # antisymmetric projector on qubits is identically zero
    proj = central_projector(3, 2, diagram(1, 1, 1))
    psi = random_state(2, 3, seed=8)
    assert proj(psi).norm < 1e-12
    # the symmetrizer squares its own norm as an idempotent must
    sym = central_projector(3, 3, diagram(3))
    out = sym(basis_state(3, (0, 1, 2)))
    assert out.norm**2 == pytest.approx(np.real(basis_state(3, (0, 1, 2)).inner(out)))


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 3)])
def test_block_tensor_character_crosscheck(n, d):
    # Tr(Pi_shape P(sigma)) computed densely equals charge_dim * character
    size = d**n
    perms = all_permutations(n)
    sample = random.Random(n + d).sample(perms, min(6, len(perms)))
    for shape in enumerate_diagrams(n, d):
        proj = central_projector(n, d, shape)
        for p in sample:
            tr = 0.0 + 0j
            for idx in range(size):
                e = np.zeros(size, dtype=complex)
                e[idx] = 1.0
                moved = apply_permutation(DenseState(d, n, e), p)
                tr += proj(moved).amplitudes[idx]
            assert tr == pytest.approx(
                charge_dim(shape, d) * character(shape, p), abs=1e-9
            )


def test_central_traces_match_projector_route():
    d, n = 2, 4
    rng = np.random.default_rng(5)
    g = rng.standard_normal((d**n, d**n)) + 1j * rng.standard_normal((d**n, d**n))
    h = (g + g.conj().T) / 2
    traces = central_traces(h, n, d)
    for shape in enumerate_diagrams(n, d):
        proj = central_projector(n, d, shape)
        manual = 0.0 + 0j
        for idx in range(d**n):
            e = np.zeros(d**n, dtype=complex)
            e[idx] = 1.0
            manual += proj(DenseState(d, n, h[:, idx])).amplitudes[idx]
        assert traces[str(shape)] == pytest.approx(manual, abs=1e-9)


def test_mixed_involution_matrix_squares_to_projector_identity():
    for d in (2, 3):
        z = mixed_sector_involution_matrix(1, d)
        psi = random_state(d, 3, seed=d)
        mixed = three_qudit_projector(psi, diagram(2, 1), (0, 1, 2))
        out = DenseState(d, 3, z @ (z @ mixed.amplitudes))
        assert (out - mixed).norm < 1e-12


def test_centerless_lift():
    # invariant inputs: identity (n_sys = 1) and the exchange (n_sys = 2)
    for d in (2, 3):
        rep = verify_centerless_lift(1, d, np.eye(d, dtype=complex))
        assert rep.ok
        swap = np.zeros((d * d, d * d), dtype=complex)
        for a in range(d):
            for b in range(d):
                swap[b * d + a, a * d + b] = 1.0
        rep2 = verify_centerless_lift(2, d, swap)
        assert rep2.ok
    # any traceless system Hamiltonian lifts to a centerless operator, but
    # a non-invariant one does not commute with the global rotations
    z = np.diag([1.0, -1.0]).astype(complex)
    rep3 = verify_centerless_lift(1, 2, z)
    assert rep3.centerless_ok
    assert not rep3.invariant_ok
    zero = verify_centerless_lift(1, 2, np.zeros((2, 2), dtype=complex))
    assert zero.centerless_ok and zero.invariant_ok


def test_size_guards():
    with pytest.raises(ValueError, match="guard"):
        basis_state(2, (0,) * 25)
    with pytest.raises(ValueError, match="guard"):
        central_projector(9, 2, diagram(9))
    with pytest.raises(ValueError, match="guard"):
        verify_centerless_lift(5, 3, np.eye(3**5, dtype=complex))
