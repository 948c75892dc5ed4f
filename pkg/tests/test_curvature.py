from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from acblie import (
    ETA, G, FamilySpec, StructureConstants, associated_metric, check_r3_identity, classify, construct_class_family,
    curvature_report, curvature_template_check, einstein_taxonomy, kulkarni_nomizu, levi_civita, random_lie_algebra,
)
from acblie.algebra import ETA_ETA, curvature_symmetry_defects, max_abs, nonzero_entries
from acblie.curvature import curvature_template, ricci_template, sectional_curvatures
from acblie.errors import NotALieAlgebra, UnsupportedClass
from acblie.families import heisenberg
from oracles import lie_algebras, oracle_connection, oracle_curvature, oracle_ricci, from_sympy

R = Fraction


def _canon(arr):
    return {k: v for k, v in nonzero_entries(arr).items() if k[0] < k[1] and k[2] < k[3] and k[:2] <= k[2:]}


def report(cid, a, b=0):
    return curvature_report(construct_class_family(FamilySpec(cid, a, b)))


def test_connection_matches_linear_solve(random_algebras):
    for c in random_algebras[:5] + [heisenberg(3)]:
        gam = levi_civita(c).gamma
        ref = oracle_connection(c)
        assert all(gam[k] == from_sympy(v) for k, v in ref.items())


def test_curvature_matches_commutator_oracle(random_algebras):
    for c in random_algebras[:5]:
        rep = curvature_report(c)
        ref = oracle_curvature(c)
        assert np.all(rep.r == ref)
        assert np.all(rep.rho == oracle_ricci(ref))


@settings(max_examples=25, deadline=None)
@given(lie_algebras())
def test_identities_on_random_algebras(c):
    rep = curvature_report(c)
    conn = rep.connection
    assert conn.torsion_defect(c) == 0
    assert conn.metric_defect() == 0
    assert all(v == 0 for v in curvature_symmetry_defects(rep.r).values())
    assert np.all(rep.r == rep.r.transpose(2, 3, 0, 1))
    assert rep.r3_defect == 0
    assert np.all(rep.rho == rep.rho.T)


def test_F1_values():
    rep = report("F1", 1, 2)
    assert _canon(rep.r) == {(1, 2, 1, 2): -3}
    assert rep.tau == -6 and rep.k12 == -3 and (rep.k01, rep.k02) == (0, 0)
    assert nonzero_entries(rep.rho_star) == {(1, 2): -3, (2, 1): -3}


def test_F4_values_from_metric_connection():
    rep = report("F4", 1)
    # nabla_1 E2 = nabla_2 E1 = -alpha E0 is required by metric compatibility
    assert rep.connection.gamma[1, 2, 0] == -1 and rep.connection.gamma[2, 1, 0] == -1
    assert _canon(rep.r) == {(0, 1, 0, 1): -1, (0, 2, 0, 2): 1, (1, 2, 1, 2): -1}
    assert nonzero_entries(rep.rho) == {(0, 0): 2}
    assert nonzero_entries(rep.rho_star) == {(1, 2): -1, (2, 1): -1}
    assert (rep.tau, rep.tau_star, rep.k01, rep.k02, rep.k12) == (2, 0, 1, 1, -1)
    assert np.all(rep.rho == rep.tau * ETA_ETA)


def test_F5_values():
    rep = report("F5", 1)
    assert _canon(rep.r) == {(0, 1, 0, 1): 1, (0, 2, 0, 2): -1, (1, 2, 1, 2): -1}
    assert (rep.tau, rep.k01, rep.k02, rep.k12) == (-6, -1, -1, -1)


@pytest.mark.parametrize("cid", ["F8", "F9"])
def test_F8_F9_values(cid):
    rep = report(cid, 2)
    assert _canon(rep.r) == {(0, 1, 0, 1): 4, (0, 2, 0, 2): -4, (1, 2, 1, 2): 4}
    assert (rep.tau, rep.k01, rep.k02, rep.k12) == (-8, -4, -4, 4)
    assert nonzero_entries(rep.rho) == {(0, 0): -8}


def test_F10_flat():
    assert report("F10", 5).flat


def test_F11_values():
    rep = report("F11", 1, 2)
    assert _canon(rep.r) == {(0, 1, 0, 1): 1, (0, 1, 0, 2): 2, (0, 2, 0, 2): 4}
    assert rep.tau == 6 and rep.tau_star == -4
    assert rep.rho[0, 0] == 3 and rep.rho[1, 2] == -2
    # the xi-xi entry of rho* is -2 alpha beta
    assert nonzero_entries(rep.rho_star) == {(0, 0): -4}
    assert (rep.k01, rep.k02, rep.k12) == (-1, 4, 0)


def test_sectional_curvature_convention():
    # R_1212 = -3 on a plane with (g ⊼ g)_1212 = -2 gives k12 = -3
    r = np.zeros((3, 3, 3, 3), dtype=object)
    r[:] = R(0)
    r[1, 2, 1, 2] = r[2, 1, 2, 1] = R(-3)
    r[1, 2, 2, 1] = r[2, 1, 1, 2] = R(3)
    assert sectional_curvatures(r) == (0, 0, -3)


def test_r3_identity_detects_non_curvature():
    rep = report("F5", 1)
    assert check_r3_identity(rep.r, rep.rho, rep.tau) == 0
    assert check_r3_identity(rep.r, rep.rho + G, rep.tau) != 0


@pytest.mark.parametrize("cid, a, b", [("F1", 2, 1), ("F5", R(1, 2), 0), ("F8", -1, 0), ("F9", 2, 0),
                                       ("F10", 1, 0), ("F11", 1, -2)])
def test_templates_hold(cid, a, b):
    c = construct_class_family(FamilySpec(cid, a, b))
    tc = curvature_template_check(classify(c), curvature_report(c))
    assert (tc.class_id, tc.r_defect, tc.rho_defect) == (cid, 0, 0)


def test_F4_template_defect():
    rep = report("F4", 1)
    tc = curvature_template_check(classify(construct_class_family(FamilySpec("F4", 1))), rep)
    assert tc.r_defect == 1 and tc.rho_defect == 1
    diff = rep.r - curvature_template("F4", rep)
    assert _canon(diff) == {(0, 1, 0, 1): R(-1, 2), (0, 2, 0, 2): R(1, 2), (1, 2, 1, 2): -1}
    assert nonzero_entries(ricci_template("F4", rep)) == {(0, 0): 1, (1, 1): R(1, 2), (2, 2): R(-1, 2)}


def test_template_rejects_mixed_membership():
    c = random_lie_algebra(1)
    with pytest.raises(UnsupportedClass):
        curvature_template_check(classify(c), curvature_report(c))


def test_kaehler_only_where_flat_for_F1():
    assert report("F1", 1, 1).kaehler_defect == 0
    assert report("F1", 2, 1).kaehler_defect != 0


def test_einstein_labels():
    gt = associated_metric()
    assert einstein_taxonomy(3 * G).labels >= {"Einstein", "eta-Einstein"}
    v = einstein_taxonomy(2 * G + gt - ETA_ETA)
    assert v.coefficients == (2, 1, -1) and "eta-Einstein" not in v.labels
    assert "v-Einstein" in einstein_taxonomy(5 * ETA_ETA).labels
    bad = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=object) * R(1)
    assert einstein_taxonomy(bad).labels == {"none"}


@pytest.mark.parametrize("cid, label", [("F1", "phi-Einstein"), ("F4", "eta-Einstein"), ("F5", "Einstein"),
                                        ("F8", "v-Einstein"), ("F9", "v-Einstein")])
def test_einstein_per_class(cid, label):
    rep = report(cid, 2, 1 if cid == "F1" else 0)
    assert label in einstein_taxonomy(rep.rho).labels


def test_float_mode_matches_exact():
    exact = report("F11", R(1, 3), 2)
    flt = report("F11", 1 / 3, 2.0)
    assert max_abs(np.vectorize(float, otypes=[object])(exact.r) - flt.r) < 1e-12
    assert abs(float(exact.tau) - flt.tau) < 1e-12


def test_curvature_rejects_non_lie():
    bad = StructureConstants.from_brackets({(0, 1): (0, 1, 0), (1, 2): (1, 0, 0)})
    with pytest.raises(NotALieAlgebra):
        curvature_report(bad)


def test_kn_of_g_eta_matches_definition():
    t = kulkarni_nomizu(G, ETA_ETA)
    assert t[0, 1, 0, 1] == G[1, 1] * ETA[0] ** 2
