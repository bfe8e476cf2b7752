import math
from fractions import Fraction

import pytest

from groupmeasure.scenarios import Scenario, ScenarioError, parse_scenario, run


def test_parse_die_marginal():
    s = parse_scenario('{"kind":"die","query":"marginal_up"}')
    assert s == Scenario(kind="die", query="marginal_up")


def test_parse_scale_interval():
    s = parse_scenario('{"kind":"interval","family":"scale","lower":1,"upper":2}')
    assert s.kind == "interval"
    assert s.family == "scale"
    assert (s.lower, s.upper) == (1.0, 2.0)


def test_parse_rejects_scale_with_nonpositive_lower():
    with pytest.raises(ScenarioError, match="'lower'"):
        parse_scenario('{"kind":"interval","family":"scale","lower":-1,"upper":2}')


def test_parse_rejects_unknown_keys():
    with pytest.raises(ScenarioError, match="unknown keys"):
        parse_scenario('{"kind":"coin","sides":2}')


def test_parse_rejects_unknown_kind():
    with pytest.raises(ScenarioError, match="unknown kind"):
        parse_scenario('{"kind":"dice"}')


def test_parse_reports_position_for_malformed_documents():
    with pytest.raises(ScenarioError, match="line 1"):
        parse_scenario('{"kind": "coin"')


def test_parse_requires_object_document():
    with pytest.raises(ScenarioError, match="object"):
        parse_scenario('["coin"]')


def test_die_conditional_requires_north():
    with pytest.raises(ScenarioError, match="north"):
        parse_scenario('{"kind":"die","query":"conditional_north"}')
    with pytest.raises(ScenarioError, match="1..6"):
        parse_scenario('{"kind":"die","query":"conditional_north","north":9}')
    with pytest.raises(ScenarioError, match="only valid"):
        parse_scenario('{"kind":"die","query":"joint","north":2}')


def test_interval_validates_bounds_and_quantile():
    with pytest.raises(ScenarioError, match="below"):
        parse_scenario('{"kind":"interval","family":"translation","lower":2,"upper":1}')
    with pytest.raises(ScenarioError, match="quantile"):
        parse_scenario(
            '{"kind":"interval","family":"translation","lower":0,"upper":1,"quantile":1.5}'
        )


def test_spin_state_must_be_normalized():
    with pytest.raises(ScenarioError, match="state"):
        parse_scenario('{"kind":"spin","theta":0,"state":[1,1]}')


def test_spin_state_accepts_complex_pairs():
    s = parse_scenario('{"kind":"spin","theta":0.5,"state":[[0,1],0]}')
    assert s.state == (1j, 0j)


def test_chain_validation():
    with pytest.raises(ScenarioError, match="thetas"):
        parse_scenario('{"kind":"spin_chain","thetas":[]}')
    with pytest.raises(ScenarioError, match="seed"):
        parse_scenario('{"kind":"spin_chain","thetas":[0.1],"seed":-3}')
    with pytest.raises(ScenarioError, match="trials"):
        parse_scenario('{"kind":"spin_chain","thetas":[0.1],"trials":0}')
    with pytest.raises(ScenarioError, match="number"):
        parse_scenario('{"kind":"spin_chain","thetas":[0.1, true]}')


@pytest.mark.parametrize(
    "doc",
    [
        '{"kind":"coin"}',
        '{"kind":"die","query":"conditional_north","north":2}',
        '{"kind":"interval","family":"scale","lower":1,"upper":2,"at":1.5,"quantile":0.5}',
        '{"kind":"von_mises","ratio_lower":1,"ratio_upper":2}',
        '{"kind":"spin","theta":0.7,"state":[[0.6,0],[0,0.8]]}',
        '{"kind":"spin_chain","thetas":[1.5707963267948966,0],"seed":9,"trials":3}',
    ],
)
def test_canonical_form_round_trips(doc):
    first = parse_scenario(doc)
    canonical = first.canonical_json()
    second = parse_scenario(canonical)
    assert first == second
    assert second.canonical_json() == canonical


def test_run_die_joint_is_uniform_over_24():
    report = run(parse_scenario('{"kind":"die","query":"joint"}'))
    assert len(report.outcomes.outcomes) == 24
    assert all(p == Fraction(1, 24) for _, p in report.outcomes.outcomes)


def test_run_die_conditional_north():
    report = run(parse_scenario('{"kind":"die","query":"conditional_north","north":5}'))
    assert len(report.outcomes.outcomes) == 4
    assert all(p == Fraction(1, 4) for _, p in report.outcomes.outcomes)
    assert all(label.endswith("north5") for label, _ in report.outcomes.outcomes)


def test_run_coin():
    report = run(parse_scenario('{"kind":"coin"}'))
    assert dict(report.outcomes.outcomes) == {
        "heads": Fraction(1, 2),
        "tails": Fraction(1, 2),
    }


def test_run_von_mises_summary():
    report = run(parse_scenario('{"kind":"von_mises","ratio_lower":1,"ratio_upper":2}'))
    summary = dict(report.summary)
    assert summary["support_lower"] == pytest.approx(0.5, abs=1e-15)
    assert summary["support_upper"] == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert summary["density"] == pytest.approx(6.0, abs=1e-12)
    assert summary["median"] == pytest.approx(7.0 / 12.0, abs=1e-12)
    assert report.columns == ("x", "density", "cdf")
    assert len(report.records) == 101


def test_run_interval_answers_queries():
    report = run(
        parse_scenario(
            '{"kind":"interval","family":"scale","lower":1,"upper":4,"at":2,"quantile":0.5}'
        )
    )
    summary = dict(report.summary)
    assert summary["cdf_at"] == pytest.approx(0.5, abs=1e-12)
    assert summary["quantile"] == pytest.approx(2.0, abs=1e-8)
    assert summary["density_form"] == "reciprocal"


def test_run_spin_at_pole_is_certain():
    report = run(parse_scenario('{"kind":"spin","theta":0}'))
    rows = {row[0]: row for row in report.records}
    assert rows[1][1] == pytest.approx(1.0, abs=1e-15)
    assert rows[-1][1] == pytest.approx(0.0, abs=1e-15)
    assert dict(report.summary)["eigenvalue_unit"] == "hbar/2"


def test_run_chain_single_trial_records_trajectory():
    report = run(parse_scenario('{"kind":"spin_chain","thetas":[0,0],"seed":4}'))
    assert len(report.records) == 2
    steps = [row[0] for row in report.records]
    outcomes = [row[2] for row in report.records]
    assert steps == [0, 1]
    assert outcomes == [1, 1]


def test_run_chain_many_trials_reports_frequency():
    report = run(
        parse_scenario('{"kind":"spin_chain","thetas":[1.5707963267948966],"seed":0,"trials":2000}')
    )
    summary = dict(report.summary)
    assert abs(summary["final_plus_frequency"] - 0.5) <= 4.0 * math.sqrt(0.25 / 2000)
    assert report.records[0][0] == 1
    assert report.records[0][1] + report.records[1][1] == 2000


def test_run_attaches_scenario_context_to_module_errors():
    s = Scenario(kind="von_mises", ratio_lower=1.0, ratio_upper=2.0)
    object.__setattr__(s, "ratio_upper", -3.0)  # corrupt a validated scenario
    with pytest.raises(ScenarioError, match="von_mises scenario"):
        run(s)


def test_run_is_deterministic():
    doc = '{"kind":"spin_chain","thetas":[0.3,1.1,2.2],"seed":17,"trials":40}'
    a = run(parse_scenario(doc))
    b = run(parse_scenario(doc))
    assert a == b
