from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_rationals
from racahalg.algebra import (
    RelationReport,
    build_operator_set,
    k1_argument_report,
    raise_on_failure,
    verify_casimir_catalog,
    verify_qr9_catalog,
    verify_univariate_qr3,
)
from racahalg.errors import SuiteFailure
from racahalg.gridop import commutator, degree_set, is_zero
from racahalg.racah1 import SU11Weights, beta_from_nu, kappa
from racahalg.racah2 import gamma_params, racah2_my_table

W = SU11Weights.of(["3/5", "3/4", "1", "7/6"])


@pytest.fixture(scope="module")
def ops():
    return build_operator_set(W, 3)


@pytest.fixture(scope="module")
def qr9(ops):
    return {r.relation_id: r for r in verify_qr9_catalog(ops)}


@pytest.fixture(scope="module")
def casimir(ops):
    return verify_casimir_catalog(ops)


def test_operator_set_basics(ops):
    assert is_zero(commutator(ops.K1, ops.K3))
    assert is_zero(commutator(ops.K2, ops.K3))
    p = ops.p
    for i, (x1, x2) in enumerate(ops.grid):
        assert ops.K3.rows[i][i] == -kappa(x2, (p.beta2 + 1) / 2) / 2
    assert ops.K1.is_diagonal() and ops.K3.is_diagonal()
    assert ops.Qtot == kappa(3, (p.beta3 + 1) / 2)


def test_total_casimir_linear_relation(ops):
    q = ops.q
    lhs = ops.Q[(1, 3)] + ops.Q[(1, 2)] + ops.Q[(2, 3)] - (q[1] + q[2] + q[3])
    assert lhs == ops.Q[(1, 2, 3)]
    total = sum((ops.Q[pr] for pr in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))), ops.I * 0)
    assert total - sum(q.values()) * 2 == ops.I * ops.Qtot


def test_shift_directions(ops):
    support = ops.offset_support()
    assert support["K1"] == support["K3"] == {(0, 0)}
    assert support["K2"] <= {(0, 0), (1, 0), (-1, 0)}
    assert support["K5"] <= {(0, 0), (0, 1), (0, -1)}


def test_qr9_catalog_never_fails_in_both_forms(qr9):
    assert not [rid for rid, r in qr9.items() if r.failed]
    raise_on_failure(list(qr9.values()))


def test_first_copy_holds_as_printed(qr9):
    assert qr9["copy1:[K2,L1]"].printed_holds
    assert qr9["copy1:[L1,K1]"].printed_holds
    assert qr9["extra:[K3,L1]"].printed_holds


@pytest.mark.parametrize(
    "rid",
    [
        "copy2:L2",
        "copy2:[K4,L2]",
        "copy2:[L2,K1]",
        "copy3:[K5,L3]",
        "copy3:[L3,K3]",
        "copy4:[K5,L4]",
        "copy4:[L4,K2]",
        "closure:[K3,K4]",
        "extra:[K4,L1]",
        "extra:[K5,L1]",
    ],
)
def test_adjudicated_relations(qr9, rid):
    r = qr9[rid]
    assert (r.printed_holds, r.corrected_holds) == (False, True)
    assert r.witness is not None and r.witness.residual != 0


def test_single_swap_candidates_are_not_enough(qr9):
    assert qr9["copy3:[L3,K3]"].candidates["d3K3 only"] is False
    assert qr9["copy4:[K5,L4]"].candidates["d4K5 only"] is False
    assert qr9["copy4:[L4,K2]"].candidates["{K2,K5} only"] is False


def test_k1_argument():
    r = k1_argument_report(W, 2)
    assert (r.printed_holds, r.corrected_holds) == (False, True)


def test_casimir_catalog(casimir):
    assert not [r.relation_id for r in casimir if r.failed]
    by_id = {r.relation_id: r for r in casimir}
    # a sample instance of each family
    assert by_id["QR3-form:[R123,Q12]"].verdict in ("printed", "corrected")
    assert by_id["[R234,Q12]"].corrected_holds
    # sign-factor convention: plain commutators are antisymmetric
    anti = by_id["R_ijk = -R_jik"]
    assert anti.candidates == {"printed": False, "corrected": True}
    assert by_id["[Q(ijk),Q(ij)] = 0"].printed_holds


def test_casimir_catalog_covers_all_index_assignments(casimir):
    plain = [r for r in casimir if r.relation_id.startswith("[R") and "," in r.relation_id]
    assert len(plain) == 48
    # the literal sign factor is +1 on even permutations, so exactly half hold as printed
    assert sum(r.printed_holds for r in plain) == 24


def test_plain_R_antisymmetry(ops):
    Q = ops.Q
    R123 = commutator(Q[(1, 2)], Q[(2, 3)])
    R213 = commutator(Q[(1, 2)], Q[(1, 3)])
    assert R213 == -R123


@given(small_rationals(), small_rationals(), small_rationals(), st.integers(1, 5))
def test_univariate_qr3_reports(a, b, c, N):
    p = beta_from_nu(SU11Weights(a, b, c), N)
    reports = {r.relation_id: r for r in verify_univariate_qr3(p)}
    for rid in ("qr3:[k1,k2]=k3", "qr3:[k2,k3]", "qr3:[k3,k1]", "qr3-beta:[k3,k1]"):
        assert reports[rid].printed_holds
    assert reports["qr3-beta:[k2,k3]"].corrected_holds


def test_qr3_verdicts_stable_when_N_doubles():
    w = SU11Weights.of(["3/4", "5/6", "7/8"])
    small = [r.verdict for r in verify_univariate_qr3(beta_from_nu(w, 3))]
    large = [r.verdict for r in verify_univariate_qr3(beta_from_nu(w, 6))]
    assert small == large


def test_k3_antisymmetric():
    from racahalg.gridop import OperatorMatrix
    from racahalg.racah1 import lambda1_matrix

    p = beta_from_nu(SU11Weights.of(["3/4", "5/6", "7/8"]), 4)
    k1 = OperatorMatrix.diagonal([-kappa(x, (p.beta1 + 1) / 2) / 2 for x in range(5)])
    k2 = lambda1_matrix(p) * Fraction(-1, 2)
    assert commutator(k1, k2) == -commutator(k2, k1)


def test_reports_are_reproducible():
    a = [r.to_json() for r in verify_qr9_catalog(build_operator_set(W, 2))]
    b = [r.to_json() for r in verify_qr9_catalog(build_operator_set(W, 2))]
    assert a == b


def test_k5_spectrum_on_my_table(ops):
    N = ops.N
    g, _ = gamma_params(W, N)
    for m, row in zip(degree_set(N), racah2_my_table(W, N)):
        assert ops.K5.apply(row) == [-kappa(m[0], (g[2] - g[0]) / 2) / 2 * v for v in row]


def test_report_json_and_failure():
    ok = RelationReport("x", True)
    assert ok.to_json() == {
        "relationId": "x",
        "printedFormHolds": True,
        "correctedFormHolds": "n/a",
        "correctionNote": "",
        "residualWitness": None,
    }
    bad = RelationReport("y", False, False)
    assert bad.failed and bad.verdict == "FAILED"
    with pytest.raises(SuiteFailure):
        raise_on_failure([ok, bad])
