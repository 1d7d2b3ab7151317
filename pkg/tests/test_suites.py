import pytest
from hypothesis import given, settings, strategies as st

from merodiff.suites import (
    Perturbation,
    PerturbationError,
    SUITES,
    run_suite,
    suite_dkp,
    suite_first,
    suite_frobenius,
    suite_paper,
    suite_second,
    suite_wdvv_theta,
)

# smaller bounds than the acceptance run; the shapes of the checks are the same
FAST = {
    "paper": lambda p=None: suite_paper(p),
    "first": lambda p=None: suite_first(10, hurwitz_degree=5, oracle_weight=10, perturb=p),
    "dkp": lambda p=None: suite_dkp(6, p),
    "second": lambda p=None: suite_second(8, max_a=6, max_pole=8, perturb=p),
    "wdvv-theta": lambda p=None: suite_wdvv_theta(10, p),
    "frobenius": lambda p=None: suite_frobenius(8, index_bound=3, unit_bound=5, max_pos=3,
                                                alpha_max=3, perturb=p),
}

PROBES = {
    "paper": ["R:2,2", "R:3,3=1/3", "theta:4,1,1"],
    "first": ["R:2,2", "R:1,3=-1", "R:3,4=2"],
    "dkp": ["R:2,2", "R:1,4=1/2", "R:3,3=-2"],
    "second": ["theta:4,1,1", "theta:5,2,1=-1", "P:3,3"],
    "wdvv-theta": ["theta:3,1,1", "P:1,2", "P:2,2=5"],
    "frobenius": ["F:1,1,2,2", "F:0,2,4=-1/2", "F:2,2,3,3=3", "R:2,2"],
}


def test_every_suite_has_a_fast_variant():
    assert set(FAST) == set(SUITES) == set(PROBES)


@pytest.mark.parametrize("name", SUITES)
def test_unperturbed_suite_passes(name):
    res = FAST[name]()
    assert res.passed, [c.as_dict() for c in res.checks if not c.passed]
    assert res.as_dict()["passed"] is True


@pytest.mark.parametrize("name, key", [(n, k) for n in SUITES for k in PROBES[n]])
def test_single_perturbation_fails_suite(name, key):
    res = FAST[name](Perturbation.parse([key]))
    assert not res.passed


def test_stated_subsystem_sign_fails():
    res = suite_frobenius(6, index_bound=2, unit_bound=3, max_pos=2, alpha_max=2,
                          subsystem="stated")
    failed = [c for c in res.checks if not c.passed]
    assert len(failed) == 1
    assert "observed signs [-1]" in failed[0].detail


@pytest.mark.parametrize("spec", ["R:2", "theta:1,1", "F:1,1", "F:-1,3,2", "Q:1,1",
                                  "R:0,2", "R:2,2=x", "R:2,2=1/0"])
def test_bad_perturbation_keys(spec):
    with pytest.raises((PerturbationError, ZeroDivisionError)):
        Perturbation.parse([spec])


def test_perturbation_delta_and_accumulation():
    p = Perturbation.parse(["R:2,3=1/2", "R:2,3=1/2", "theta:4,1,1=-3"])
    assert p.R == {(2, 3): 1} and p.theta == {(4, 1, 1): -3}
    assert not Perturbation.parse([])


@pytest.mark.parametrize("name, key", [("first", "F:1,1,2,2"), ("dkp", "theta:4,1,1"),
                                       ("second", "R:2,2"), ("frobenius", "P:1,1")])
def test_suite_refuses_perturbation_it_never_reads(name, key):
    with pytest.raises(PerturbationError):
        run_suite(name, perturb=Perturbation.parse([key]))


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


# -- randomly drawn probes ------------------------------------------------------------------

deltas = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool)


@settings(max_examples=15)
@given(st.integers(2, 4), st.integers(2, 4), deltas)
def test_random_R_probe_fails_dkp(i, j, delta):
    assert not FAST["dkp"](Perturbation(R={(i, j): delta})).passed


@settings(max_examples=15)
@given(st.sampled_from([(3, 1, 1), (4, 1, 1), (4, 2, 1), (5, 1, 3), (5, 2, 2)]), deltas)
def test_random_theta_probe_fails_seven_term_relation(key, delta):
    assert not FAST["wdvv-theta"](Perturbation(theta={key: delta})).passed


@settings(max_examples=10)
@given(st.sampled_from([(1, 1, 2, 2), (0, 2, 4), (1, 2, 5), (0, 0, 2), (2, 2, 3, 3)]), deltas)
def test_random_F_probe_fails_frobenius(key, delta):
    assert not FAST["frobenius"](Perturbation(F={key: delta})).passed


@settings(max_examples=10)
@given(st.sampled_from([(2, 2), (3, 3), (1, 3), (2, 4), (4, 4)]), deltas)
def test_random_P_probe_fails_seven_term_relation(key, delta):
    assert not FAST["wdvv-theta"](Perturbation(P={key: delta})).passed


@settings(max_examples=10)
@given(st.sampled_from([(4, 1, 1), (4, 2, 2), (5, 3, 1), (6, 1, 1)]), deltas)
def test_random_theta_probe_fails_second(key, delta):
    assert not FAST["second"](Perturbation(theta={key: delta})).passed
