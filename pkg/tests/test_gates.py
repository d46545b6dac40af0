import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlbraid.errors import (
    ArityError,
    DenseLimitExceeded,
    InvalidInvolution,
    LevelError,
    OutOfUnitaryWindow,
    PivotCollision,
    PositionError,
    ShapeError,
)
from tlbraid.gates import (
    GateParams,
    Involution,
    apply_gate,
    gate_from_dict,
    gate_to_dense,
    local_identity_residuals,
    make_braid_gate,
    make_local_ops,
    make_tl_generators,
    realize_involution,
    sigma_pair,
)
from tlbraid.linalg import check_property, matrix_residual, tensor_product
from tlbraid.reference import hadamard
from tlbraid.register import QuditRegisterState, basis_state, digits_to_index, index_to_digits
from tlbraid.states import schmidt_coefficients
from tlbraid.tla import TlaPair, check_braid, check_tla
from tlbraid.verify import random_config

from conftest import random_state_vector


# -- local operators ----------------------------------------------------------

def test_qubit_local_ops():
    e1, e2, e3 = make_local_ops(2, 0, 1, math.sqrt(0.5))
    assert np.allclose(e1, np.diag([1, 0]))
    assert np.allclose(e2, np.diag([0.5, 0.5]), atol=1e-15)
    assert np.allclose(e3, [[0, 0.5], [0.5, 0]], atol=1e-15)


def test_relabeled_pivot_support():
    e1, e2, e3 = make_local_ops(3, 1, 2, math.sqrt(0.7), phi=0.4)
    assert np.array_equal(e1, np.diag([0, 1, 0]))
    for e in (e1, e2, e3):
        assert not e[0].any() and not e[:, 0].any()


def test_local_ops_errors():
    with pytest.raises(PivotCollision):
        make_local_ops(3, 1, 1, 0.8)
    with pytest.raises(OutOfUnitaryWindow):
        make_local_ops(3, 0, 1, math.sqrt(0.2))
    with pytest.raises(LevelError):
        make_local_ops(3, 0, 3, 0.8)


@settings(max_examples=200, deadline=None)
@given(
    D=st.integers(2, 6),
    data=st.data(),
    a2=st.floats(0.25, 1.0),
    phi=st.floats(0, 2 * math.pi),
    b_sign=st.sampled_from([1, -1]),
)
def test_local_identity_suite(D, data, a2, phi, b_sign):
    q = data.draw(st.integers(0, D - 1))
    l = data.draw(st.integers(0, D - 1).filter(lambda x: x != q))
    e1, e2, e3 = make_local_ops(D, q, l, math.sqrt(a2), b_sign, phi)
    res = local_identity_residuals(e1, e2, e3, a2)
    assert len(res) == 7
    assert max(res.values()) < 1e-13, res


# -- involutions --------------------------------------------------------------

def test_realize_involution_examples():
    assert np.array_equal(realize_involution(Involution.identity(), 3), np.eye(3))
    swap = realize_involution(Involution.transposition(0, 2), 3)
    assert np.array_equal(swap, np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    H = realize_involution(Involution.custom(hadamard()), 2)
    assert np.allclose(H, hadamard())


@pytest.mark.parametrize("m", [
    [[1, 1], [0, 1]],                     # not Hermitian
    [[2, 0], [0, 1]],                     # Hermitian, squares to diag(4, 1)
    np.eye(3),                            # wrong size for D = 2
])
def test_realize_involution_rejects(m):
    with pytest.raises(InvalidInvolution):
        realize_involution(Involution.custom(m), 2)


def test_transposition_out_of_range():
    with pytest.raises(InvalidInvolution):
        realize_involution(Involution.transposition(0, 3), 3)


def test_involution_dict_roundtrip():
    for inv in (Involution.identity(), Involution.transposition(1, 2), Involution.custom(hadamard())):
        assert Involution.from_dict(json.loads(json.dumps(inv.to_dict()))) == inv


# -- TL generators ------------------------------------------------------------

def test_generators_single_qudit_reduce_to_qubit_pair():
    a2, phi = 0.6, 0.9
    p = GateParams.from_a2(2, 1, 1, 0, 1, a2, 1, phi)
    E1, E2 = make_tl_generators(p, [])
    a, b = math.sqrt(a2), math.sqrt(1 - a2)
    expected = np.array([[a2, np.exp(-1j * phi) * a * b], [np.exp(1j * phi) * a * b, b * b]])
    assert matrix_residual(E1.dense(), np.diag([1, 0])) == 0
    assert matrix_residual(E2.dense(), expected) < 1e-15


def test_generators_identity_dressing_block_diagonal():
    p = GateParams.from_a2(2, 2, 2, 0, 1, 0.5)
    _, E2 = make_tl_generators(p, [Involution.identity()])
    _, e2, e3 = make_local_ops(2, 0, 1, math.sqrt(0.5))
    M = E2.dense()
    assert matrix_residual(M, np.kron(np.eye(2), e2 + e3)) < 1e-15
    assert not M[:2, 2:].any() and not M[2:, :2].any()


def test_generators_qutrit_tla(rng):
    for _ in range(5):
        a2 = rng.uniform(0.25, 1)
        p = GateParams.from_a2(3, 3, 2, 0, int(rng.integers(1, 3)), a2, 1, rng.uniform(0, 6))
        lams = [Involution.transposition(0, 1), Involution.transposition(0, 2)]
        E1, E2 = make_tl_generators(p, lams)
        E1d, E2d = E1.dense(), E2.dense()
        for E in (E1d, E2d):
            assert check_property(E, "projector", 1e-12).passed
            assert check_property(E, "hermitian", 1e-12).passed
        assert matrix_residual(E1d @ E2d @ E1d, a2 * E1d) < 1e-12
        assert matrix_residual(E2d @ E1d @ E2d, a2 * E2d) < 1e-12
        assert check_tla(TlaPair(p.d * E1d, p.d * E2d, p.d), 1e-10).passed


def test_generators_arity():
    p = GateParams.from_a2(3, 3, 2, 0, 1, 0.5)
    with pytest.raises(ArityError):
        make_tl_generators(p, [Involution.identity()])


def test_params_validation():
    with pytest.raises(PivotCollision):
        GateParams.from_a2(3, 2, 1, 1, 1, 0.5)
    with pytest.raises(PositionError):
        GateParams.from_a2(3, 2, 3, 0, 1, 0.5)
    with pytest.raises(OutOfUnitaryWindow):
        GateParams.from_a2(3, 2, 1, 0, 1, 0.2)
    with pytest.raises(OutOfUnitaryWindow):
        GateParams(3, 2, 1, 0, 1, -0.8)
    p = GateParams.from_a2(3, 2, 1, 1, 0, 0.3, b_sign=-1)
    assert p.a**2 + p.b**2 == pytest.approx(1.0)
    assert p.b < 0 and p.d == pytest.approx(1 / math.sqrt(0.3))


# -- braid gate ---------------------------------------------------------------

def test_single_qubit_gate_column():
    g = make_braid_gate(GateParams.from_a2(2, 1, 1, 0, 1, 0.5), [])
    B = gate_to_dense(g)
    s1, s2 = sigma_pair(g.params, [])
    assert matrix_residual(B, s1 @ s2) < 1e-15
    assert np.allclose(np.abs(B[:, 0]), [1 / math.sqrt(2)] * 2, atol=1e-15)
    # closed-form 2x2 entries
    p = g.params
    A = p.A
    expected = np.array([
        [p.d * p.a2, -A**4 * p.d * p.a * p.b],
        [p.d * p.a * p.b, p.d * p.b**2 + A**-2],
    ])
    assert matrix_residual(B, expected) < 1e-15


def test_identity_lambdas_give_local_gate(rng):
    p = GateParams.from_a2(3, 3, 2, 0, 2, 0.4, 1, 0.3)
    g = make_braid_gate(p, [Involution.identity()] * 2)
    # product input
    factors = [random_state_vector(rng, 3) for _ in range(3)]
    v = tensor_product([f.reshape(-1, 1) for f in factors]).ravel()
    out = QuditRegisterState(3, 3, apply_gate(g, v))
    for cut in ([1], [2], [3]):
        sv = schmidt_coefficients(out, cut)
        assert np.sum(sv > 1e-12) == 1


def test_pivot_collision_and_relabeling_allowed():
    make_braid_gate(GateParams.from_a2(3, 2, 1, 1, 0, 0.5), None)
    with pytest.raises(PivotCollision):
        make_braid_gate(GateParams.from_a2(3, 2, 1, 1, 1, 0.5), None)


def _action_oracle(p, lam_levels, digits):
    """Predicted expansion of B|digits> for transposition/identity dressing."""
    k = p.k - 1
    s = digits[k]
    d, a, b, A, phi = p.d, p.a, p.b, p.A, p.phi

    def tilde(new_pivot):
        out, it = [], iter(lam_levels)
        for j, x in enumerate(digits):
            if j == k:
                out.append(new_pivot)
                continue
            pair = next(it)
            if pair is None:
                out.append(x)
            else:
                u, w = pair
                out.append(w if x == u else u if x == w else x)
        return tuple(out)

    if s == p.q:
        return {tuple(digits): d * a * a, tilde(p.l): np.exp(1j * phi) * d * a * b}
    if s == p.l:
        return {tuple(digits): d * b * b + A**-2, tilde(p.q): -np.exp(-1j * phi) * A**4 * d * a * b}
    return {tuple(digits): A**-2}


def test_basis_action_three_cases():
    p = GateParams.from_a2(3, 3, 2, 0, 1, 0.7, -1, 1.1)
    pairs = [(0, 2), None]
    lams = [Involution.transposition(0, 2), Involution.identity()]
    g = make_braid_gate(p, lams)
    for idx in range(27):
        digits = index_to_digits(idx, 3, 3)
        out = apply_gate(g, basis_state(3, 3, digits)).amplitudes
        expected = np.zeros(27, dtype=complex)
        for dg, amp in _action_oracle(p, pairs, digits).items():
            expected[digits_to_index(dg, 3)] += amp
        assert matrix_residual(out, expected) < 1e-14, digits


def test_other_level_is_pure_phase():
    p = GateParams.from_a2(4, 2, 1, 0, 1, 0.5)
    g = make_braid_gate(p, [Involution.transposition(0, 1)])
    out = apply_gate(g, basis_state(4, 2, [3, 2]))
    assert out.amplitude([3, 2]) == pytest.approx(p.A**-2, abs=1e-15)
    assert abs(out.norm() - 1) < 1e-15


def test_structured_matches_dense_qutrits(rng):
    params, lams = random_config(3, 4, rng)
    g = make_braid_gate(params, lams)
    v = random_state_vector(rng, 81)
    assert matrix_residual(apply_gate(g, v), gate_to_dense(g) @ v) < 1e-12


def test_sampled_closed_form_equals_sigma_product(rng):
    for D, n in [(2, 1), (2, 3), (3, 2), (4, 2), (5, 2), (3, 3)]:
        for _ in range(4):
            params, lams = random_config(D, n, rng)
            g = make_braid_gate(params, lams)
            s1, s2 = sigma_pair(params, lams)
            B = gate_to_dense(g)
            assert matrix_residual(B, s1 @ s2) < 1e-12
            assert check_property(B, "unitary", 1e-10).passed
            assert check_braid(s1, s2, 1e-9).passed


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), D=st.integers(2, 4), n=st.integers(1, 5))
def test_apply_preserves_norm(seed, D, n):
    rng = np.random.default_rng(seed)
    params, lams = random_config(D, n, rng)
    v = random_state_vector(rng, D**n) * rng.uniform(0.1, 3)
    out = apply_gate(make_braid_gate(params, lams), v)
    assert abs(np.linalg.norm(out) - np.linalg.norm(v)) < 1e-12


def test_apply_beyond_dense_limit_keeps_norm():
    p = GateParams.from_a2(4, 7, 4, 0, 3, 0.3, 1, 0.5)
    g = make_braid_gate(p, [Involution.transposition(0, 3)] * 6)
    out = apply_gate(g, basis_state(4, 7, [0] * 7))
    assert abs(out.norm() - 1) < 1e-12
    with pytest.raises(DenseLimitExceeded):
        gate_to_dense(g)


def test_apply_shape_mismatch():
    g = make_braid_gate(GateParams.from_a2(3, 2, 1, 0, 1, 0.5))
    with pytest.raises(ShapeError):
        apply_gate(g, basis_state(3, 3, [0, 0, 0]))
    with pytest.raises(ShapeError):
        apply_gate(g, np.ones(8))


def test_gate_dict_roundtrip():
    lams = [Involution.transposition(0, 2), Involution.custom(realize_involution(Involution.transposition(1, 2), 3))]
    g = make_braid_gate(GateParams.from_a2(3, 3, 2, 0, 1, 0.45, -1, 0.2), lams)
    obj = json.loads(json.dumps(g.to_dict()))
    assert set(obj) == {"D", "n", "k", "q", "l", "a2", "b_sign", "phi", "lambdas"}
    g2 = gate_from_dict(obj)
    assert matrix_residual(gate_to_dense(g2), gate_to_dense(g)) < 1e-15
