import subprocess
import sys

import pytest

from metakernel.cli import main
from metakernel.core import ParseError, Symbol, parse, show
from metakernel.events import EventError, RunOptions, run_events, run_text, stub_body
from metakernel.gen import VAR_POOL, random_env, random_scenario, random_term, random_value, random_world
from metakernel.properties import SUITES, run_all, shrink_term

S = Symbol
FAST = RunOptions(samples=200)


def lines(report):
    return [ln for ln in report.lines]


def test_nth_symbolp_scenario(scenarios):
    r = run_events(scenarios / "nth_symbolp.events", FAST)
    outs = [s.output for s in r.simplifications]
    assert outs == [parse("(car y)"), parse("(nth (foo x) y)")]
    assert r.obligations == 2 and not r.violations and r.exit_code == 0


def test_stobj_scenario(scenarios):
    r = run_events(scenarios / "stobj_read_over_write.events", FAST)
    assert parse("'3") in [s.output for s in r.simplifications]
    assert r.exit_code == 0


def test_bounds_scenario(scenarios):
    r = run_events(scenarios / "rewrite_bounds.events", FAST)
    assert any(ln.endswith("=> PROVED") for ln in r.lines)
    assert r.exit_code == 0


def test_context_scenario(scenarios):
    r = run_events(scenarios / "context_rewriting.events", FAST)
    want = parse("(logbitp '4 (logand (logior a (logior b (logior c d))) (logand f g)))")
    assert r.simplifications[-1].output == want
    assert r.exit_code == 0


def test_mixed_scenario(scenarios):
    assert run_events(scenarios / "mixed.events", FAST).exit_code == 0


def test_corrupted_scenario(scenarios):
    r = run_events(scenarios / "corrupted.events", FAST)
    assert r.violations and r.exit_code == 1


def test_unproved_goal_exit_code():
    r = run_text("(prove-bounds (< x x) ())", FAST)
    assert r.unproved == 1 and r.exit_code == 3


def test_false_theorem_is_reported():
    r = run_text("(defthm bad (equal (car x) (cdr x)))", FAST)
    assert r.claim_failures and r.exit_code == 1


def test_false_rule_is_reported():
    r = run_text("(defrule bad () equal (car (cons a b)) b)\n(simplify (car (cons '1 '2)))", FAST)
    assert r.exit_code == 1


def test_event_errors():
    with pytest.raises(EventError):
        run_text("(defun f (x) x)\n(defun f (x) x)", FAST)
    with pytest.raises(EventError):
        run_text("(frobnicate)", FAST)
    with pytest.raises(EventError):
        run_text("(simplify (undefined-fn x))", FAST)
    with pytest.raises(ParseError):
        run_text("(simplify (car x)", FAST)


def test_trace_lines():
    seen = []
    run_text("(defstobj st a b)\n(simplify (a (update-b '1 st)))",
             RunOptions(samples=50, trace=True, out=seen.append))
    assert "(NTH-UPDATE-NTH-META-FN (A (UPDATE-B '1 ST)) -> (A ST))" in seen


def test_same_seed_same_report(scenarios):
    a = run_events(scenarios / "mixed.events", RunOptions(samples=100, seed=5)).text()
    b = run_events(scenarios / "mixed.events", RunOptions(samples=100, seed=5)).text()
    assert a == b


def test_stub_bodies_are_deterministic():
    f = (S("X"),)
    assert stub_body(S("FOO"), f) == stub_body(S("FOO"), f)


def test_generators_replay():
    for seed in range(20):
        assert random_value(seed) == random_value(seed)
        assert random_term(4, VAR_POOL, seed) == random_term(4, VAR_POOL, seed)
        assert random_env(VAR_POOL, seed) == random_env(VAR_POOL, seed)
        assert random_world(seed) == random_world(seed)
        assert random_scenario(seed) == random_scenario(seed)


def test_generated_scenarios_are_clean():
    for seed in range(5):
        r = run_text(random_scenario(seed), RunOptions(samples=100, seed=seed))
        assert not r.violations, r.violations


def test_shrink_term_reduces():
    t = parse("(binary-+ (car (cons x y)) (cdr z))")
    small = shrink_term(t, lambda u: "CDR" in show(u))
    assert "CDR" in show(small)
    assert len(show(small)) < len(show(t))


@pytest.mark.parametrize("name", sorted(SUITES))
def test_property_suite(name):
    scale = 0.2 if name == "scenarios" else 0.5
    (res,) = run_all(seed=1, scale=scale, only=[name])
    assert res.passed, res.line()
    if res.cases == 0:
        pytest.skip(res.counterexample or "no cases")


def test_cli_run(scenarios, capsys, tmp_path):
    report = tmp_path / "r.txt"
    code = main(["run", str(scenarios / "nth_symbolp.events"), "--samples", "100",
                 "--report", str(report)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("seed: 0\n")
    assert "(SIMPLIFY (NTH (FOO X) Y)) => (CAR Y)" in out
    assert "OBLIGATION CONTEXTUAL" in report.read_text()


def test_cli_exit_codes(scenarios, tmp_path, capsys):
    assert main(["run", str(scenarios / "corrupted.events"), "--samples", "50"]) == 1
    bad = tmp_path / "bad.events"
    bad.write_text("(simplify (car x)")
    assert main(["run", str(bad)]) == 2
    assert main(["run", str(tmp_path / "missing.events")]) == 2
    assert main(["run", str(scenarios / "mixed.events"), "--samples", "0"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["run"])
    assert e.value.code == 2
    capsys.readouterr()


def test_cli_selftest(capsys):
    assert main(["selftest", "--scale", "0.05", "--suite", "roundtrip", "--suite", "linarith"]) == 0
    out = capsys.readouterr().out
    assert "kernel:" in out and "0 suite(s) failed" in out


def test_module_entry_point(scenarios):
    p = subprocess.run([sys.executable, "-m", "metakernel", "run",
                        str(scenarios / "nth_symbolp.events"), "--samples", "20"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert "=> (CAR Y)" in p.stdout
