import numpy as np
import pytest

import permqg as pq
from permqg.classifier import BlockStructure
from permqg.errors import InvalidParam, Unclassifiable

from support import max_entry_diff, random_sigma_scale, seeded_arrays


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def test_classify_two_block_example():
    result = pq.classify(pq.uq2_example(2.0, 1.0, 1.0))
    assert result.family == "Uq2"
    assert abs(result.q - 2.0) <= 1e-12
    assert result.nontrivial == "yes"


def test_classify_distinct_diagonal_is_torus():
    result = pq.classify(pq.from_tuple((1, 2, 1, 1, 1, 5)))
    assert result.family == "Torus"
    assert result.nontrivial == "no"


def test_classify_inversion_array_reduces_to_su():
    for q in (0.5, 2.0):
        result = pq.classify(pq.su3_inversions(q))
        assert result.family == "SUpm"
        assert abs(result.p - (-q)) <= 1e-9
        assert result.m == 0


def test_classify_akm_generic():
    p = 2 * np.exp(1j * np.pi / 5)
    result = pq.classify(pq.def_akm(p, 1, 0))
    assert result.family == "Apkm"
    assert abs(result.p - p) <= 1e-9
    assert (result.k, result.m) == (1, 0)
    assert result.nontrivial == "yes"


def test_classify_all_ones_coincidence():
    result = pq.classify(pq.all_ones())
    assert result.family == "SUpm"
    assert (abs(result.p - 1.0), result.m) == (0.0, 0)
    assert result.alias == {"family": "Apkm", "p": [1.0, 0.0], "k": 0, "m": 0}


def test_classify_char_pair_branch():
    # equal diagonal constants, exactly one reciprocal pair of unit ratios
    result = pq.classify(pq.uq2_example(1j, 1 - 1j, 1.0))
    assert result.family == "Uq2"
    assert abs(result.q - 1j) <= 1e-12
    assert any(step["step"] == "relabel_char_pair" for step in result.trace)


def test_classify_trace_ends_in_single_leaf():
    for a in seeded_arrays(101, 50) + [pq.def_akm(2.0, 1, 2), pq.def_su(2j, 1)]:
        result = pq.classify(a)
        leaves = [s for s in result.trace if s["step"] == "leaf"]
        assert len(leaves) == 1
        assert result.trace[-1]["step"] == "leaf"


# ---------------------------------------------------------------------------
# uq2_match
# ---------------------------------------------------------------------------

def test_uq2_match_worked_example():
    a = pq.from_tuple((1, -2, 1, 1, -2, -2))
    assert abs(pq.uq2_match(a, 1) - 2.0) <= 1e-12


def test_uq2_match_all_ones():
    assert abs(pq.uq2_match(pq.all_ones(), 1) - (-1.0)) <= 1e-15


def test_uq2_match_failing_ratio():
    a = pq.from_tuple((1, -2, 1, 1, 2, -2))
    assert pq.uq2_match(a, 1) is None


def test_uq2_match_bad_singleton():
    with pytest.raises(InvalidParam):
        pq.uq2_match(pq.all_ones(), 4)


# ---------------------------------------------------------------------------
# pattern matches
# ---------------------------------------------------------------------------

def test_akm_pattern_roundtrip():
    got = pq.akm_pattern_match(pq.def_akm(3j, 2, 1))
    assert got is not None
    p, k, m = got
    assert (abs(p - 3j) <= 1e-12, k, m) == (True, 2, 1)


def test_akm_pattern_all_ones_and_miss():
    assert pq.akm_pattern_match(pq.all_ones()) == (1, 0, 0)
    assert pq.akm_pattern_match(pq.from_tuple((1, 1, 1, 1, 1, 5))) is None
    with pytest.raises(InvalidParam):
        pq.akm_pattern_match(pq.from_tuple((2, 1, 1, 1, 1, 1)))


def test_case3_solve_su_row():
    sol = pq.case3_solve(pq.def_su(2j, 1))
    assert (sol.case, sol.m) == (2, 1)
    assert abs(sol.p - 2j) <= 1e-12
    assert sol.matches == ((2, 1),)


def test_case3_solve_all_ones_coincidence():
    sol = pq.case3_solve(pq.all_ones())
    assert (sol.case, sol.m) == (1, 0)
    assert sol.coincident
    assert set(sol.matches) == {(1, 0), (2, 0), (3, 0), (4, 0)}


def test_case3_solve_third_row_roundtrip():
    sol = pq.case3_solve(pq.constrained_family_array(3, 2.0, 1))
    assert (sol.case, sol.m) == (3, 1)
    assert abs(sol.p - 2.0) <= 1e-12


def test_case3_solve_rejects_foreign_array():
    with pytest.raises(Unclassifiable):
        pq.case3_solve(pq.normalize(pq.def_akm(2.0, 1, 0)))


def test_constrained_family_rows_satisfy_hypotheses():
    for case in (1, 2, 3, 4):
        for p in (2.0, 1 + 1j):
            for m in (0, 1, 2):
                a = pq.constrained_family_array(case, p, m)
                inv = pq.compute_invariants(a)
                assert inv.char_one_count == 6
                assert inv.diagonal_partition == ((1, 2, 3),)


def test_reduce_case3_mappings():
    family, params, alias = pq.reduce_case3(4, 2.0, 1)
    assert (family, params["m"]) == ("SUpm", 1)
    assert abs(params["p"] - 0.5) <= 1e-15
    assert alias is None

    family, params, alias = pq.reduce_case3(1, 2.0, 1)
    assert family == "Apkm"
    assert (params["k"], params["m"]) == (2, 1)

    family, params, alias = pq.reduce_case3(2, 1.0, 0)
    assert family == "SUpm"
    assert alias == {"family": "Apkm", "p": [1.0, 0.0], "k": 0, "m": 0}

    family, params, _ = pq.reduce_case3(3, 2.0, 1)
    assert family == "SUpm"
    assert abs(params["p"] - 2.0 * pq.zeta_pow(-1)) <= 1e-15


def test_case3_and_case4_rows_relabel_onto_su_arrays():
    # independent oracle for the case-3/4 reductions: an explicit
    # relabel-and-rescale carries each row onto the claimed target array
    for p in (2.0, 1 + 1j, 0.3 - 0.7j):
        for m in range(3):
            row3 = pq.constrained_family_array(3, p, m)
            moved = pq.permute_and_scale(row3, (2, 1, 3), row3.entry(2, 1, 3))
            target = pq.def_su(np.conj(p) * pq.zeta_pow(-m), m)
            assert max_entry_diff(moved, target) <= 1e-12

            row4 = pq.constrained_family_array(4, p, m)
            moved = pq.permute_and_scale(row4, (1, 3, 2), row4.entry(1, 3, 2))
            target = pq.def_su(1.0 / p, m)
            assert max_entry_diff(moved, target) <= 1e-12


# ---------------------------------------------------------------------------
# nontriviality
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("family,params,verdict", [
    ("Torus", {}, "no"),
    ("Uq2", {"q": 1.0 + 0j}, "no"),
    ("Uq2", {"q": 2.0 + 0j}, "yes"),
    ("Apkm", {"p": 2.0 + 0j, "k": 1, "m": 0}, "yes"),
    ("Apkm", {"p": 2.0 + 0j, "k": 1, "m": 1}, "no"),
    ("Apkm", {"p": 2.0 + 0j, "k": 2, "m": 1}, "yes"),
    ("Apkm", {"p": 0.5 + 0j, "k": 0, "m": 0}, "no"),
    ("Apkm", {"p": np.exp(0.3j), "k": 0, "m": 0}, "yes"),
    ("Apkm", {"p": 1.0 + 0j, "k": 0, "m": 0}, "unknown"),
    ("SUpm", {"p": 2.0 + 0j, "m": 1}, "yes-with-note"),
    ("SUpm", {"p": -1.0 + 0j, "m": 1}, "unknown"),
])
def test_nontriviality_table(family, params, verdict):
    got, _ = pq.nontriviality(family, **params)
    assert got == verdict


# ---------------------------------------------------------------------------
# invariance under relabeling and rescaling
# ---------------------------------------------------------------------------

def test_family_invariance_random_batch():
    rng = np.random.default_rng(2024)
    for a in seeded_arrays(2024, 200):
        sigma, c = random_sigma_scale(rng)
        assert pq.classify(a).family == pq.classify(pq.permute_and_scale(a, sigma, c)).family


def test_family_invariance_named_battery():
    rng = np.random.default_rng(55)
    battery = [
        pq.def_akm(2.0, 1, 0), pq.def_akm(1 + 1j, 2, 2), pq.def_su(2j, 1),
        pq.def_su(0.7, 2), pq.uq2_example(2.0), pq.uq2_example(1 + 1j),
        pq.su3_inversions(0.5), pq.all_ones(),
    ]
    for a in battery:
        base = pq.classify(a).family
        for _ in range(6):
            sigma, c = random_sigma_scale(rng)
            assert pq.classify(pq.permute_and_scale(a, sigma, c)).family == base


def test_akm_tag_stable_under_every_relabeling():
    a = pq.def_akm(2.0, 1, 0)
    for sigma in pq.PERMS:
        moved = pq.permute_and_scale(a, sigma, 1.0)
        assert pq.classify(moved).family == "Apkm"


def test_uq2_parameter_modulus_under_relabeling():
    q0 = 2.0
    a = pq.uq2_example(q0, 1.0, 1.0)
    for sigma in pq.PERMS:
        result = pq.classify(pq.permute_and_scale(a, sigma, 1.0))
        assert result.family == "Uq2"
        assert min(abs(abs(result.q) - abs(q0)), abs(abs(result.q) - 1 / abs(q0))) <= 1e-9


def test_scaling_invariance_of_classification():
    a = pq.def_su(1.2 - 0.4j, 2)
    for c in (2.0, 0.1j, 3 - 4j):
        moved = pq.permute_and_scale(a, (1, 2, 3), c)
        result = pq.classify(moved)
        assert result.family == "SUpm"
        assert abs(result.p - (1.2 - 0.4j)) <= 1e-9


# ---------------------------------------------------------------------------
# block structure
# ---------------------------------------------------------------------------

def test_block_structure_kinds():
    assert BlockStructure.from_partition(((1,), (2,), (3,))).kind == "three_blocks"
    two = BlockStructure.from_partition(((1, 3), (2,)))
    assert (two.kind, two.singleton, two.pair) == ("two_blocks", 2, (1, 3))
    assert BlockStructure.from_partition(((1, 2, 3),)).kind == "irreducible_candidate"


def test_classification_json_shape():
    doc = pq.classify(pq.def_su(2j, 1)).to_json_dict()
    assert doc["family"] == "SUpm"
    assert doc["p"] == [0.0, 2.0]
    assert doc["m"] == 1
    assert isinstance(doc["trace"], list) and doc["trace"]
