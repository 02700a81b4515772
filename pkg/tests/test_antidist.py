import itertools
import random

import pytest

from antictx.antidist import (
    AntidistCertificate,
    TripleOverlaps,
    corollary_check,
    load_certificate,
    scenario_antidistinguishable,
    triple_antidistinguishable,
    verify_certificate,
)
from antictx.ensembles import generate_scenario
from antictx.errors import OverlapRangeError, UnknownLabelError
from antictx.quantum import PureStateSet, scenario_from_states
from antictx.scenario import make_scenario, validate_scenario

from helpers import random_scenario


def test_yu_oh_triple_is_boundary_antidistinguishable():
    verdict = triple_antidistinguishable(TripleOverlaps(1 / 9, 1 / 3, 1 / 3))
    assert verdict.antidistinguishable
    assert verdict.boundary
    assert abs(verdict.margin_strict - 2 / 9) < 1e-12
    assert abs(verdict.margin_quadratic) < 1e-12


def test_orthogonal_triple():
    verdict = triple_antidistinguishable(TripleOverlaps(0, 0, 0))
    assert verdict.antidistinguishable
    assert not verdict.boundary


def test_sum_one_fails_strictly():
    verdict = triple_antidistinguishable(TripleOverlaps(1, 0, 0))
    assert not verdict.antidistinguishable
    verdict = triple_antidistinguishable(TripleOverlaps(1 / 3, 1 / 3, 1 / 3))
    assert not verdict.antidistinguishable


def test_sic_triple_is_boundary():
    verdict = triple_antidistinguishable(TripleOverlaps(0.25, 0.25, 0.25))
    assert verdict.antidistinguishable
    assert verdict.boundary


def test_quadratic_condition_can_fail_alone():
    # sum < 1 but (sum-1)^2 < 4 x1 x2 x3
    x = TripleOverlaps(0.3, 0.3, 0.3)
    verdict = triple_antidistinguishable(x)
    assert verdict.margin_strict > 0
    assert verdict.margin_quadratic < 0
    assert not verdict.antidistinguishable


def test_overlaps_out_of_range():
    with pytest.raises(OverlapRangeError):
        TripleOverlaps(1.5, 0, 0)
    # values within tolerance are clamped
    x = TripleOverlaps(1.0 + 1e-12, -1e-12, 0)
    assert x.x1 == 1.0
    assert x.x2 == 0.0


def test_corollary_examples():
    assert corollary_check(TripleOverlaps(0.2, 0.2, 0.2))
    assert corollary_check(TripleOverlaps(0.25, 0.25, 0.25))
    assert not corollary_check(TripleOverlaps(1 / 3, 1 / 9, 1 / 9))
    # the condition is only sufficient: the full criterion still accepts this one
    assert triple_antidistinguishable(TripleOverlaps(1 / 9, 1 / 9, 1 / 3)).antidistinguishable


def test_sufficient_condition_implies_criterion_on_random_triples():
    rng = random.Random(77)
    for _ in range(20000):
        x = TripleOverlaps(rng.random(), rng.random(), rng.random())
        if corollary_check(x):
            assert triple_antidistinguishable(x).antidistinguishable


def test_criterion_verdict_is_permutation_invariant():
    rng = random.Random(78)
    for _ in range(2000):
        values = (rng.random(), rng.random(), rng.random())
        verdicts = {
            triple_antidistinguishable(TripleOverlaps(*perm)).antidistinguishable
            for perm in itertools.permutations(values)
        }
        assert len(verdicts) == 1


# ------------------------------------------------------------ certificates


def test_caves_certificate_is_valid(fixtures_dir):
    targets, cert = load_certificate((fixtures_dir / "caves_certificate.json").read_bytes())
    report = verify_certificate(targets, cert)
    assert report.valid
    assert report.max_residual() < 1e-9


def test_distinguishable_states_are_antidistinguishable():
    targets = PureStateSet.from_pairs(3, [("t0", [1, 0, 0]), ("t1", [0, 1, 0])])
    basis = PureStateSet.from_pairs(
        3, [("b0", [0, 1, 0]), ("b1", [1, 0, 0]), ("b2", [0, 0, 1])]
    )
    report = verify_certificate(targets, AntidistCertificate(("t0", "t1"), basis))
    assert report.valid
    assert report.residual_extra == 0.0


def test_extra_basis_vectors_must_avoid_all_targets():
    # the second basis vector is orthogonal to the target, but the unused
    # third one is not, so the certificate cannot rule anything out with it
    targets = PureStateSet.from_pairs(2, [("t", [1, 0])])
    basis = PureStateSet.from_pairs(2, [("b0", [0, 1]), ("b1", [1, 0])])
    report = verify_certificate(targets, AntidistCertificate(("t",), basis))
    assert not report.valid
    assert report.residual_matched < 1e-12
    assert abs(report.residual_extra - 1.0) < 1e-12


def test_identity_pairing_fails_with_residual_one():
    targets = PureStateSet.from_pairs(3, [("t", [1, 0, 0])])
    basis = PureStateSet.from_pairs(
        3, [("b0", [1, 0, 0]), ("b1", [0, 1, 0]), ("b2", [0, 0, 1])]
    )
    report = verify_certificate(targets, AntidistCertificate(("t",), basis))
    assert not report.valid
    assert abs(report.residual_matched - 1.0) < 1e-12


def test_certificate_bridges_to_combinatorial_definition(fixtures_dir):
    targets, cert = load_certificate((fixtures_dir / "caves_certificate.json").read_bytes())
    assert verify_certificate(targets, cert).valid
    combined = targets.union(cert.basis)
    s = scenario_from_states(combined)
    verdict = scenario_antidistinguishable(s, targets.labels)
    assert verdict.antidistinguishable


# ------------------------------------------------------- scenario search


def test_example3_targets_witnessed_by_perp_context():
    s = generate_scenario("antidist_example")
    verdict = scenario_antidistinguishable(s, ["a1", "a2", "a3"])
    assert verdict.antidistinguishable
    assert verdict.context == ("a1_perp", "a2_perp", "a3_perp")
    assert verdict.blockers == (("a1", "a1_perp"), ("a2", "a2_perp"), ("a3", "a3_perp"))


def test_classical_singleton_is_not_antidistinguishable():
    s = generate_scenario("classical", 3)
    assert not scenario_antidistinguishable(s, ["x1"]).antidistinguishable


def test_specker_singleton_witness():
    s = generate_scenario("specker")
    verdict = scenario_antidistinguishable(s, ["c"])
    assert verdict.antidistinguishable
    assert verdict.context == ("a", "b")
    assert verdict.blockers == (("c", "a"),)


def test_unknown_labels_and_empty_set():
    s = generate_scenario("specker")
    with pytest.raises(UnknownLabelError):
        scenario_antidistinguishable(s, ["zz"])
    with pytest.raises(UnknownLabelError):
        scenario_antidistinguishable(s, [])


def test_monotone_under_added_sets():
    rng = random.Random(31)
    found = 0
    while found < 15:
        s = random_scenario(rng, max_outcomes=7)
        if not s.contexts:
            continue
        targets = rng.sample(sorted(s.outcomes), rng.randint(1, 2))
        if not scenario_antidistinguishable(s, targets).antidistinguishable:
            continue
        found += 1
        # graft two fresh outcomes and a fresh partial context; verdict stays
        extra = make_scenario(
            list(s.outcomes) + ["zz1", "zz2"],
            s.contexts,
            list(s.partial_contexts) + [["zz1", "zz2"]],
        )
        assert validate_scenario(extra).valid
        assert scenario_antidistinguishable(extra, targets).antidistinguishable
