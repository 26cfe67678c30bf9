"""Acceptance criteria. Run directly (``python3 tests/test_acceptance.py``) or under pytest."""
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jetwronsk import randomgen as rg
from jetwronsk.jets import JetContext
from jetwronsk.suites import ORACLE_CONTEXTS, SuiteResult, homgluing_trial, run_suite
from jetwronsk.wronskian import WronskianSpec, multiplicativity_check, nondegeneracy_witness

from cli_cases import GOLDEN, run_cli, without_timing

SEED = 0


def _counts(res, *names):
    return {n: (res.checks[n].passed, res.checks[n].failed) if n in res.checks else (0, 0) for n in names}


def _all_pass(counts, minimum):
    return all(f == 0 and p >= minimum.get(n, 1) for n, (p, f) in counts.items())


def criterion_1():
    start = time.perf_counter()
    res = run_suite("oracle", SEED, 2400)
    elapsed = time.perf_counter() - start
    # trials cycle through the (n, k) grid
    ok = res.ok and 2400 // len(ORACLE_CONTEXTS) == 200 and elapsed < 30
    return ok, f"oracle equivalence, 2400 cases (200 per (n,k)), {_counts(res, 'oracle-equivalence')}, {elapsed:.1f}s"


def criterion_2():
    res = run_suite("invariance", SEED, 600)
    c = _counts(res, "invariance", "weight-exponent")
    return res.ok and _all_pass(c, {"invariance": 600}), f"invariance, 200 per k in 1..3, exponent unique: {c}"


def criterion_3():
    res = run_suite("multiplicativity", SEED, 300)
    coc = run_suite("cocycle", SEED, 60)
    k0 = 0
    for i in range(100):
        rng = rg.trial_rng(SEED, "multiplicativity-k0", i)
        ctx = JetContext(rng.randint(1, 3), 0)
        spec = WronskianSpec(ctx, (rg.polynomial(rng, ctx.base_variables, degree=2, terms=3),))
        k0 += multiplicativity_check(rg.polynomial(rng, ctx.base_variables, degree=2, terms=2), spec)
    c = {**_counts(res, "multiplicativity"), **_counts(coc, "cocycle", "cocycle-composite")}
    ok = res.ok and coc.ok and _all_pass(c, {"multiplicativity": 300}) and k0 == 100
    return ok, f"multiplicativity, 100 per k in 0..3, plus cocycle: {c}, k=0: {k0}/100"


def criterion_4():
    values = {(n, k): nondegeneracy_witness(JetContext(n, k))[2] for n in (1, 2, 3) for k in range(5)}
    bad = {key: v for key, v in values.items() if v != 1}
    return not bad, f"nondegeneracy witness equals 1 on {len(values)} (n,k) pairs" + (f", bad {bad}" if bad else "")


def criterion_5():
    res = run_suite("factorization", SEED, 100)
    glue = SuiteResult("homgluing", SEED, 0)
    i = 0
    # a trial is skipped when the random spec has too few non-zero coefficients
    while sum(_counts(glue, "reduced-wronskian-identity")["reduced-wronskian-identity"]) < 25:
        homgluing_trial(glue, i, rg.trial_rng(SEED, "homgluing", i))
        i += 1
    c = {**_counts(res, "divisibility"), **_counts(glue, "reduced-wronskian-identity")}
    ok = res.ok and glue.ok and _all_pass(c, {"divisibility": 100, "reduced-wronskian-identity": 25})
    return ok, f"divisibility on 100 specs, reduced-Wronskian identity on 25: {c}"


def criterion_6():
    res = run_suite("incidence", SEED, 100)
    c = _counts(res, "germ-in-hypersurface", "incidence", "perturbed-fails")
    return res.ok and _all_pass(c, {k: 100 for k in c}), f"incidence 100 pass, 100 perturbed fail: {c}"


def criterion_7():
    res = run_suite("frame-determinant", SEED, 50)
    c = _counts(res, "frame-determinant", "per-index-rank")
    ok = res.ok and _all_pass(c, {"frame-determinant": 50, "per-index-rank": 20})
    return ok, f"frame determinant lhs = rhs at 50 points, rank k+1 per index: {c}"


def criterion_8():
    res = run_suite("plucker", SEED, 200)
    c = _counts(res, "degenerate-iff-rank-deficient", "quadratic-relations")
    ok = res.ok and _all_pass(c, {"degenerate-iff-rank-deficient": 200})
    return ok, f"Plücker relations on 200 matrices, degeneracy cross-checked: {c}"


def criterion_9():
    start = time.perf_counter()
    res = run_suite("bounds", SEED, 5)
    elapsed = time.perf_counter() - start
    c = _counts(res, "deng-n2", "deng-inequality", "decompose-degree", "basic-iff-margin")
    ok = res.ok and _all_pass(c, {"deng-inequality": 49, "basic-iff-margin": 29 * 31 * 31}) and elapsed < 10
    return ok, f"bounds: {c}, {elapsed:.1f}s"


def criterion_10():
    codes = {label: run_cli(argv)[0] for label, argv, _ in GOLDEN}
    wrong = {label: codes[label] for label, _, expected in GOLDEN if codes[label] != expected}
    same = []
    for argv in (["verify", "--suite", "plucker", "--seed", "11", "--trials", "20"],
                 ["diff", "--expr", "z1^3*z2 - z2", "--p", "2", "--n", "2", "--k", "3"]):
        a, b = run_cli(argv), run_cli(argv)
        same.append(a[0] == b[0] and without_timing(a[1]) == without_timing(b[1]))
    ok = not wrong and all(same) and len(GOLDEN) == 12
    return ok, f"CLI: {len(GOLDEN) - len(wrong)}/{len(GOLDEN)} exit codes match, deterministic reports: {all(same)}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _report(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    print(line)
    return line


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print()
        _report(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = [CRITERIA[i]() for i in range(10)]
    for i, (ok, detail) in enumerate(results, start=1):
        _report(i, ok, detail)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
