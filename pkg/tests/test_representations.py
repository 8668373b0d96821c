import numpy as np
import pytest

import permqg as pq
from permqg.errors import (
    BadFamily,
    CommutationMismatch,
    DimensionOverflow,
    InvalidParam,
    UnsupportedParam,
)
from permqg.representations import SIGMA_A, blocks_to_matrix


def _is_unitary(u):
    return np.abs(u @ u.conj().T - np.eye(u.shape[0])).max() <= 1e-14


# ---------------------------------------------------------------------------
# clock and shift
# ---------------------------------------------------------------------------

def test_clock_shift_commutation():
    for numer, lam1 in ((0, 1.0), (1, 1.0), (2, 1j), (-1, np.exp(0.7j))):
        spec = pq.RotationRepSpec(numer=numer, phases=(lam1, 1.0))
        v1, v2 = pq.clock_shift_pair(spec)
        omega = spec.omega
        assert np.abs(v1 @ v2 - omega * (v2 @ v1)).max() <= 1e-15
        assert _is_unitary(v1) and _is_unitary(v2)


def test_clock_shift_theta_zero_commutes():
    v1, v2 = pq.clock_shift_pair(pq.RotationRepSpec(numer=0))
    assert np.abs(v1 @ v2 - v2 @ v1).max() == 0.0


def test_rotation_spec_rejects_non_unit_phase():
    with pytest.raises(InvalidParam):
        pq.RotationRepSpec(numer=1, phases=(2.0, 1.0))


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------

def test_diagonal_rep_blocks():
    rep = pq.diagonal_rep(np.exp(0.4j), np.exp(-1.1j))
    assert rep.dim == 1
    prod = rep.block(1, 1) * rep.block(2, 2) * rep.block(3, 3)
    assert abs(prod[0, 0] - 1.0) <= 1e-15
    assert rep.block(1, 2)[0, 0] == 0


def test_akm_irreps_family_gate():
    with pytest.raises(BadFamily):
        pq.akm_irreps(2.0, 1, 2, "family2")
    with pytest.raises(BadFamily):
        pq.akm_irreps(2.0, 0, 0, "family3")
    with pytest.raises(InvalidParam):
        pq.akm_irreps(2.0, 1, 0, "family9")


def test_akm_irreps_block_support():
    rep = pq.akm_irreps(2.0, 1, 0, "family2")
    nonzero = {(i, j) for i in range(1, 4) for j in range(1, 4)
               if np.abs(rep.block(i, j)).max() > 0}
    assert nonzero == {(1, 2), (2, 3), (3, 1)}
    rep3 = pq.akm_irreps(2.0, 1, 0, "family3")
    nonzero3 = {(i, j) for i in range(1, 4) for j in range(1, 4)
                if np.abs(rep3.block(i, j)).max() > 0}
    assert nonzero3 == {(1, 3), (2, 1), (3, 2)}


def test_akm_irreps_pass_defining_relations():
    arr = pq.def_akm(1.0, 1, 0)
    for which in ("family2", "family3"):
        rep = pq.akm_irreps(1.0, 1, 0, which)
        resid, _ = pq.check_unitarity(rep)
        assert resid <= 1e-12
        resid, _ = pq.check_twisted_determinant(rep, arr)
        assert resid <= 1e-10


def test_apm_torus_twist_requirements():
    # sigma = "a" at m = 1 commutes with phase zeta, not its inverse
    rep = pq.apm_torus_rep(2.0, 1, "a", pq.RotationRepSpec(numer=1))
    arr = pq.def_akm(2.0, 2, 1)  # k = -m (mod 3)
    resid, _ = pq.check_twisted_determinant(rep, arr)
    assert resid <= 1e-10
    with pytest.raises(CommutationMismatch):
        pq.apm_torus_rep(2.0, 1, "a", pq.RotationRepSpec(numer=2))
    with pytest.raises(CommutationMismatch):
        pq.apm_torus_rep(2.0, 1, "b", pq.RotationRepSpec(numer=1))
    rep_b = pq.apm_torus_rep(2.0, 2, "b", pq.RotationRepSpec(numer=1))
    resid, _ = pq.check_twisted_determinant(rep_b, pq.def_akm(2.0, 1, 2))
    assert resid <= 1e-10


def test_apm_torus_scalar_case():
    rep = pq.apm_torus_rep(2.0, 0, "a", one_dimensional=True)
    assert rep.dim == 1
    arr = pq.def_akm(2.0, 0, 0)
    resid, _ = pq.check_twisted_determinant(rep, arr)
    assert resid <= 1e-14
    with pytest.raises(CommutationMismatch):
        pq.apm_torus_rep(2.0, 1, "a", one_dimensional=True)


# ---------------------------------------------------------------------------
# twisted point representations
# ---------------------------------------------------------------------------

def test_semidirect_identity_and_first_rule():
    theta = pq.zeta_pow(-1)
    g = pq.SemidirectElement(np.exp(0.2j), np.exp(1.4j), "x")
    e = pq.SemidirectElement(1.0, 1.0, "e")
    prod = pq.semidirect_mul(e, g, theta)
    assert (prod.z, prod.w, prod.a) == (g.z, g.w, g.a)
    prod = pq.semidirect_mul(g, e, theta)
    assert prod.a == "x" and abs(prod.z - g.z * 1.0) <= 1e-15
    z1, w1, z2, w2 = np.exp(1j * np.array([0.3, 0.9, -0.4, 2.2]))
    lhs = pq.semidirect_mul(pq.SemidirectElement(z1, w1, "e"),
                            pq.SemidirectElement(z2, w2, "e"), theta)
    assert (lhs.a, abs(lhs.z - z1 * z2) <= 1e-15, abs(lhs.w - w1 * w2) <= 1e-15) == ("e", True, True)


def test_semidirect_homomorphism_and_associativity():
    rng = np.random.default_rng(17)
    for m in (0, 1, 2):
        theta = pq.zeta_pow(-m)
        for _ in range(100):
            zs = np.exp(1j * rng.uniform(0, 2 * np.pi, 6))
            labels = rng.choice(["e", "x", "y"], 3)
            g1 = pq.SemidirectElement(zs[0], zs[1], labels[0])
            g2 = pq.SemidirectElement(zs[2], zs[3], labels[1])
            g3 = pq.SemidirectElement(zs[4], zs[5], labels[2])
            lhs = pq.semidirect_matrix(pq.semidirect_mul(g1, g2, theta), theta)
            rhs = pq.semidirect_matrix(g1, theta) @ pq.semidirect_matrix(g2, theta)
            assert np.abs(lhs - rhs).max() <= 1e-14
            left = pq.semidirect_mul(pq.semidirect_mul(g1, g2, theta), g3, theta)
            right = pq.semidirect_mul(g1, pq.semidirect_mul(g2, g3, theta), theta)
            assert left.a == right.a
            assert abs(left.z - right.z) <= 1e-14 and abs(left.w - right.w) <= 1e-14


def test_semidirect_element_validation():
    with pytest.raises(InvalidParam):
        pq.SemidirectElement(2.0, 1.0, "x")
    with pytest.raises(InvalidParam):
        pq.SemidirectElement(1.0, 1.0, "z")


# ---------------------------------------------------------------------------
# two-block family models
# ---------------------------------------------------------------------------

def test_uq2_one_dim_blocks():
    rep = pq.uq2_one_dim(2j, np.exp(0.3j), np.exp(-0.8j))
    assert rep.dim == 1
    assert rep.block(3, 2)[0, 0] == 0  # c = 0 in the scalar model
    arr = pq.uq2_example(2j, 1.0, 1.0)
    resid, _ = pq.check_twisted_determinant(rep, arr)
    assert resid <= 1e-14


def test_uq2_generator_relations_interior():
    q, dim = 0.5, 20
    a, c, v = pq.uq2_generators(q, dim)
    res = pq.uq2_generator_residuals(q, a, c, v, interior=True)
    boundary = res.pop("boundary")
    assert max(res.values()) <= 1e-12
    assert abs(boundary - (1 - q ** (2 * dim))) <= 1e-12


def test_uq2_generator_relations_full_space_fail_at_corner():
    q, dim = 0.5, 20
    a, c, v = pq.uq2_generators(q, dim)
    res = pq.uq2_generator_residuals(q, a, c, v, interior=False)
    assert res["aa*+q2c*c"] > 0.9  # truncation artifact, not an error
    assert res["a*a+c*c"] <= 1e-12  # this one is exact on the whole space


def test_uq2_fock_unsupported_parameters():
    with pytest.raises(UnsupportedParam):
        pq.uq2_fock_truncated(1.5, dim=8)
    with pytest.raises(UnsupportedParam):
        pq.uq2_fock_truncated(0.5 + 0.2j, dim=8)
    with pytest.raises(UnsupportedParam):
        pq.uq2_fock_truncated(0.5, dim=1)


def test_uq2_reps_dispatch():
    rep = pq.uq2_reps(0.5, "fock_truncated", dim=6)
    assert rep.dim == 6 and rep.meta["truncated"]
    rep = pq.uq2_reps(2.0, "one_dim")
    assert rep.dim == 1
    with pytest.raises(InvalidParam):
        pq.uq2_reps(2.0, "nope")


# ---------------------------------------------------------------------------
# tensor powers
# ---------------------------------------------------------------------------

def test_tensor_power_low_orders():
    rep = pq.akm_irreps(2.0, 1, 0, "family2")
    t0 = pq.tensor_power(rep, 0)
    assert t0.shape == (1, 1, 3, 3)
    assert np.array_equal(t0[0, 0], np.eye(3))
    t1 = pq.tensor_power(rep, 1)
    assert np.array_equal(t1, rep.blocks)


def test_tensor_power_diag_rep_stays_diagonal():
    rep = pq.diagonal_rep(np.exp(0.2j), np.exp(0.9j))
    t3 = pq.tensor_power(rep, 3)
    for big_i in range(27):
        for big_j in range(27):
            if big_i != big_j:
                assert np.abs(t3[big_i, big_j]).max() == 0.0


def test_tensor_power_family2_sparsity():
    rep = pq.akm_irreps(2.0, 1, 0, "family2")
    t2 = pq.tensor_power(rep, 2)
    shift = {1: 2, 2: 3, 3: 1}  # nonzero pattern of the single-factor blocks
    for i1 in range(3):
        for i2 in range(3):
            for j1 in range(3):
                for j2 in range(3):
                    block = t2[3 * i1 + i2, 3 * j1 + j2]
                    expected = (j1 + 1 == shift[i1 + 1]) and (j2 + 1 == shift[i2 + 1])
                    assert (np.abs(block).max() > 0) == expected


def test_tensor_power_caps_and_bounds():
    rep = pq.uq2_fock_truncated(0.5, dim=20)
    with pytest.raises(DimensionOverflow):
        pq.tensor_power(rep, 3, size_cap=500)
    with pytest.raises(InvalidParam):
        pq.tensor_power(rep, 4)


def test_blocks_to_matrix_layout():
    rep = pq.akm_irreps(2.0, 1, 0, "family2")
    big = blocks_to_matrix(rep.blocks)
    assert big.shape == (9, 9)
    assert np.array_equal(big[0:3, 3:6], rep.block(1, 2))


def test_representation_json_roundtrip():
    rep = pq.apm_torus_rep(2.0, 1, "a")
    doc = rep.to_json_dict()
    back = pq.representation_from_json(doc)
    assert back.dim == rep.dim
    assert np.abs(back.blocks - rep.blocks).max() == 0.0


def test_representation_validates_shape():
    with pytest.raises(InvalidParam):
        pq.Representation(dim=2, blocks=np.zeros((3, 3, 3, 3)), meta={})


def test_sigma_a_is_the_cycle_231():
    assert SIGMA_A == (2, 3, 1)
