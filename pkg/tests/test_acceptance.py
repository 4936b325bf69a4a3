"""One pass/fail test per acceptance criterion, each timed from cold caches."""

import time

import pytest

import idp
from idp.config import load_config
from idp.ipolys import divided_family
from idp.qarith import qint
from idp.verify import run_suite

CFG = load_config()


def timed(fn):
    idp.clear_caches()
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_suite(name, bound, **kw):
    report, elapsed = timed(lambda: run_suite(name, CFG, **kw))
    bad = [c.to_json() for c in report.cases if c.verdict != "pass"]
    assert report.cases, f"{name}: no cases ran"
    assert not bad, bad[:3]
    assert elapsed < bound, f"{name} took {elapsed:.1f}s (bound {bound}s)"
    return report


def test_grid_matches_criteria():
    assert CFG.n_max == 6 and CFG.module_n_max == 5
    assert list(CFG.ells) == [-2, -1, 0, 1, 2]
    assert CFG.mu_max == 20 and CFG.oracle_lambda_max == 8
    assert CFG.poly_n_max == 12 and list(CFG.poly_ells) == list(range(-4, 5))


def test_criterion_01_relations():
    check_suite("relations", 10)


def test_criterion_02_golden_examples():
    report = check_suite("golden-examples", 5)
    assert len(report.cases) == 59


def test_criterion_03_expansion_theorems():
    report = check_suite("expansion-equality", 120)
    assert len(report.cases) == 4 * 5 * 7


def test_criterion_04_polynomial_propositions():
    check_suite("ipolys", 10)


def test_criterion_05_integral_form():
    report = check_suite("integrality", 120)
    assert len(report.cases) == 4 * 5 * 6


def test_criterion_06_module_oracle():
    report = check_suite("module-oracle", 60)
    assert len(report.cases) == 4 * 5 * 6


def test_criterion_07_lattice():
    report = check_suite("lattice", 60)
    names = [c.name for c in report.cases]
    assert sum(n.startswith("negative witness") for n in names) > 0
    assert sum(not n.startswith("negative witness") for n in names) == 4 * 5 * 6


def test_criterion_08_sigma():
    report = check_suite("sigma", 60)
    assert len(report.cases) == 4 * 5 * 7


def test_criterion_09_appendix():
    check_suite("genk", 30)


def test_criterion_10_degree_property():
    def run():
        out = []
        for ell in range(1, 5):
            for n in range(9):
                top = divided_family("p", n)(qint(2 * ell)).as_laurent().max_exp
                out.append((ell, n, top, (2 * ell - 1) * n - n * (n - 1) // 2))
        return out

    rows, elapsed = timed(run)
    assert [r for r in rows if r[2] != r[3]] == []
    assert elapsed < 1


@pytest.mark.parametrize("jobs", [2])
def test_parallel_grid_matches_serial(jobs):
    serial = run_suite("sigma", CFG.with_overrides(n_max=3)).to_json()
    par = run_suite("sigma", CFG.with_overrides(n_max=3), jobs=jobs).to_json()
    assert serial == par
