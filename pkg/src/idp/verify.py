"""Verification suites.

Each suite returns an ordered list of :class:`Case` records; a
:class:`VerificationReport` bundles them with the grid. The JSON body of a
report is deterministic for a given grid, so wall time is kept in a
separate attribute and only printed when asked for.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .config import GridConfig, load_config
from .genk import (
    diamond,
    lemmaA_check,
    second_dp,
    second_dp_integral,
    second_dp_threshold,
    specialization_matches,
    t22_formula,
)
from .idivided import (
    ALL_REGIMES,
    REGIMES,
    ParityRegime,
    divided_closed_t,
    divided_expansion,
    divided_recursive,
    expand_in_t,
)
from .ipolys import (
    XPoly,
    divided_family,
    frak_p_poly,
    frakp_in_frakg_expansion,
    p_in_g_expansion,
    p_poly,
    reconstruct,
)
from .pbw import (
    E_check,
    E_plain,
    F_div,
    F_plain,
    K_pow,
    PBWElement,
    apply_sigma,
    h_element,
    hbinom,
    hbrace,
    monomial,
    multiply,
    normalize_word,
    reorder_FE,
)
from .qarith import ONE, RatFunc, as_ratfunc, q_pow, qint
from .repmod import (
    NotFound,
    SimpleModule,
    action_matrix,
    divided_action_closed,
    divided_action_generic,
    find_lattice_threshold,
    icb_lattice_check,
    integrality_witness,
    mat_add,
    mat_mul,
    negative_witness,
)

SUITES = (
    "relations",
    "ipolys",
    "expansion-equality",
    "integrality",
    "module-oracle",
    "lattice",
    "sigma",
    "genk",
    "golden-examples",
)

FAMILY_REGIME = {d.family: ParityRegime(*key) for key, d in REGIMES.items()}


@dataclass
class Case:
    name: str
    verdict: str  # pass / fail / finding
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"case": self.name, "verdict": self.verdict, "detail": self.detail}


def _case(name, ok, **detail):
    return Case(name, "pass" if ok else "fail", detail)


@dataclass
class VerificationReport:
    suite: str
    grid: dict
    cases: list
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.verdict == "pass" for c in self.cases)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "finding": 0}
        for c in self.cases:
            out[c.verdict] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        body = {
            "suite": self.suite,
            "grid": self.grid,
            "summary": self.counts(),
            "ok": self.ok,
            "cases": [c.to_json() for c in self.cases],
        }
        if timing:
            body["wall_time_s"] = round(self.wall_time, 3)
        return body

    def to_text(self, verbose: bool = False) -> str:
        lines = []
        for c in self.cases:
            if verbose or c.verdict != "pass":
                extra = f"  {formats.dumps(c.detail)}" if c.detail and c.verdict != "pass" else ""
                lines.append(f"{c.verdict.upper():8s}{c.name}{extra}")
        cnt = self.counts()
        lines.append(
            f"{self.suite}: {cnt['pass']} pass, {cnt['fail']} fail, {cnt['finding']} finding"
        )
        return "\n".join(lines)


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _regimes(regime):
    return ALL_REGIMES if regime is None else [regime]


# -- relations ---------------------------------------------------------------


def _fyn(n: int) -> PBWElement:
    """q^{-2n} Ec^(n) F + Ec^(n-1) (q^{3-3n} K^-2 - q^{1-n})/(q^2-1)."""
    den = q_pow(2) - 1
    return monomial(n, 0, 1, q_pow(-2 * n)) + PBWElement(
        {
            (n - 1, -2, 0): RatFunc(q_pow(3 - 3 * n), den),
            (n - 1, 0, 0): RatFunc(-q_pow(1 - n), den),
        }
    )


def _random_element(rng, max_exp=2, terms=3):
    out = PBWElement()
    for _ in range(terms):
        a, b = rng.randint(0, max_exp), rng.randint(0, max_exp)
        s = rng.randint(-2, 2)
        out = out + monomial(a, s, b, q_pow(rng.randint(-2, 2)) * rng.choice([1, -1, 2]))
    return out


def suite_relations(cfg: GridConfig, seed: int = 0, **_):
    cases = []
    Ec, F, K, Ki = E_check(), F_div(), K_pow(1), K_pow(-1)
    E, Fp = E_plain(), F_plain()
    cases.append(_case("K Ec = q^2 Ec K", multiply(K, Ec) == multiply(Ec, K).scale(q_pow(2))))
    cases.append(_case("F K = q^2 K F", multiply(F, K) == multiply(K, F).scale(q_pow(2))))
    cases.append(_case("K K^-1 = 1", multiply(K, Ki) == monomial()))
    cases.append(_case("F Ec - q^-2 Ec F = h", multiply(F, Ec) - multiply(Ec, F).scale(q_pow(-2)) == h_element()))
    cartan = PBWElement({(0, 1, 0): RatFunc(1, q_pow(1) - q_pow(-1)), (0, -1, 0): RatFunc(-1, q_pow(1) - q_pow(-1))})
    cases.append(_case("E F - F E = (K - K^-1)/(q - q^-1)", multiply(E, Fp) - multiply(Fp, E) == cartan))
    cases.append(_case("K E = q^2 E K", multiply(K, E) == multiply(E, K).scale(q_pow(2))))
    cases.append(_case("K F = q^-2 F K", multiply(K, Fp) == multiply(Fp, K).scale(q_pow(-2))))
    for n in range(1, cfg.n_max + 1):
        cases.append(_case(f"F Ec^({n}) reorder formula", reorder_FE(n) == _fyn(n)))
    for kind, fn in (("hbinom", hbinom), ("hbrace", hbrace)):
        for a in range(-2, 3):
            for n in range(0, 4):
                c = fn(a, n)
                ok_f = multiply(c, F) == multiply(F, fn(a + 1, n))
                ok_e = multiply(c, Ec) == multiply(Ec, fn(a - 1, n))
                cases.append(_case(f"{kind}({a},{n}) past F and Ec", ok_f and ok_e))
    rng = random.Random(seed)
    for i in range(12):
        x, y, z = (_random_element(rng) for _ in range(3))
        cases.append(_case(f"associativity #{i}", multiply(multiply(x, y), z) == multiply(x, multiply(y, z))))
    for i in range(12):
        word = [rng.choice([("E", 1), ("F", 1), ("K", rng.choice([-1, 1]))]) for _ in range(rng.randint(2, 6))]
        left = normalize_word(word, "leftmost")
        right = normalize_word(word, "rightmost")
        direct = PBWElement({(0, 0, 0): ONE})
        for letter, e in word:
            direct = multiply(direct, {"E": Ec, "F": F}[letter] if letter != "K" else K_pow(e))
        w = " ".join(f"{l}{e if l == 'K' else ''}" for l, e in word)
        cases.append(_case(f"word rewriting [{w}]", left == right == direct))
    for mu in range(cfg.mu_max + 1):
        L = SimpleModule(mu)
        mE, mF, mK, mKi = L.matrix_E(), L.matrix_F(), L.matrix_K(1), L.matrix_K(-1)
        comm = mat_add(mat_mul(mE, mF), mat_mul(mF, mE), -1)
        want = {(b, b): qint(mu - 2 * b) for b in range(mu + 1) if mu != 2 * b}
        ke = mat_mul(mK, mE) == {k: v.shift(2) for k, v in mat_mul(mE, mK).items()}
        kf = mat_mul(mK, mF) == {k: v.shift(-2) for k, v in mat_mul(mF, mK).items()}
        kk = mat_mul(mK, mKi) == {(b, b): qint(1) for b in range(mu + 1)}
        # the PBW action of E and F agrees with the generator matrices
        agree = all(
            action_matrix(x, L) == {k: as_ratfunc(v) for k, v in m.items()}
            for x, m in ((E, mE), (Fp, mF), (K, mK))
        )
        cases.append(_case(f"L({mu}) relations", comm == want and ke and kf and kk and agree))
    return cases


# -- polynomials ---------------------------------------------------------------


def _in_N_qinv(p: XPoly) -> bool:
    for c in p.coeffs:
        if not c.is_laurent():
            return False
        lp = c.as_laurent()
        if any(e > 0 or v < 0 for e, v in lp.coeffs.items()):
            return False
    return True


def top_q_exponent(n: int, ell: int) -> int:
    return divided_family("p", n)(qint(2 * ell)).as_laurent().max_exp


def suite_ipolys(cfg: GridConfig, **_):
    cases = []
    N = cfg.poly_n_max
    for n in range(1, N + 1):
        cases.append(_case(f"p^({n}) from g expansion", reconstruct(p_in_g_expansion(n), n, "g") == divided_family("p", n)))
        cases.append(
            _case(
                f"frak p^({n}) from frak g expansion",
                reconstruct(frakp_in_frakg_expansion(n), n, "frakg") == divided_family("frakp", n),
            )
        )
    for n in range(N + 1):
        bad = []
        for ell in cfg.poly_ells:
            ke, ko = qint(2 * ell), qint(2 * ell - 1)
            for fam, k in (("g", ke), ("p", ke), ("frakg", ko), ("frakp", ko)):
                if not divided_family(fam, n)(k).is_laurent():
                    bad.append(f"{fam}^({n}) at l={ell}")
        cases.append(_case(f"integrality of g, p, frak g, frak p at n={n}", not bad, failures=bad))
    for n in range(N + 1):
        p = p_poly(n)
        cases.append(_case(f"p_{n} in N[q^-1][x] with parity {n % 2}", _in_N_qinv(p) and p.only_parity(n)))
    for n in range(2, N + 1):
        quo, rem = frak_p_poly(n).divide_linear(1)
        cases.append(_case(f"frak p_{n}/(x-1) in N[q^-1][x]", not rem and _in_N_qinv(quo)))
    for ell in range(1, 5):
        for n in range(0, 9):
            got = top_q_exponent(n, ell)
            want = (2 * ell - 1) * n - n * (n - 1) // 2
            cases.append(_case(f"deg_q p^({n})([{2 * ell}])", got == want, got=got, want=want))
    return cases


# -- divided powers ------------------------------------------------------------


def _grid(cfg, regime, n_max):
    return [(r.weight, r.kappa, ell, n) for r in _regimes(regime) for ell in cfg.ells for n in range(n_max + 1)]


def _equality_point(pt):
    w, k, ell, n = pt
    r = ParityRegime(w, k)
    kappa = r.kappa_for(ell)
    rec = divided_recursive(n, r, kappa)
    closed = expand_in_t(divided_closed_t(n, r), kappa)
    ehf = divided_expansion(n, r, kappa, "EhF")
    fhe = divided_expansion(n, r, kappa, "FhE")
    res = {"closed": rec == closed, "EhF": rec == ehf, "FhE": rec == fhe}
    return Case(f"{r.name} l={ell} n={n}", "pass" if all(res.values()) else "fail", {} if all(res.values()) else res)


def suite_expansion_equality(cfg, regime=None, jobs=1, **_):
    return _pmap(_equality_point, _grid(cfg, regime, cfg.n_max), jobs)


def _sigma_point(pt):
    w, k, ell, n = pt
    r = ParityRegime(w, k)
    kappa = r.kappa_for(ell)
    ehf = divided_expansion(n, r, kappa, "EhF")
    fhe = divided_expansion(n, r, kappa, "FhE")
    ok1 = apply_sigma(ehf) == fhe
    ok2 = apply_sigma(ehf) == ehf
    return Case(f"{r.name} l={ell} n={n}", "pass" if ok1 and ok2 else "fail", {} if ok1 and ok2 else {"EhF->FhE": ok1, "fixed": ok2})


def suite_sigma(cfg, regime=None, jobs=1, **_):
    return _pmap(_sigma_point, _grid(cfg, regime, cfg.n_max), jobs)


def _integrality_point(args):
    (w, k, ell, n), mu_max = args
    r = ParityRegime(w, k)
    x = divided_expansion(n, r, r.kappa_for(ell))
    wit = integrality_witness(x, r.weight, mu_max)
    if wit is None:
        return Case(f"{r.name} l={ell} n={n}", "pass")
    mu, j, i, val = wit
    return Case(f"{r.name} l={ell} n={n}", "fail", {"mu": mu, "input_b": j, "output_b": i, "coeff": str(val)})


def suite_integrality(cfg, regime=None, jobs=1, **_):
    pts = [(pt, cfg.mu_max) for pt in _grid(cfg, regime, cfg.module_n_max)]
    return _pmap(_integrality_point, pts, jobs)


def _oracle_point(args):
    (w, k, ell, n), lam_max = args
    r = ParityRegime(w, k)
    bad = [lam for lam in range(lam_max + 1) if divided_action_closed(n, r, ell, lam) != divided_action_generic(n, r, ell, lam)]
    return Case(f"{r.name} l={ell} n={n}", "fail" if bad else "pass", {"lambdas": bad} if bad else {})


def suite_module_oracle(cfg, regime=None, jobs=1, **_):
    pts = [(pt, cfg.oracle_lambda_max) for pt in _grid(cfg, regime, cfg.module_n_max)]
    return _pmap(_oracle_point, pts, jobs)


def suite_lattice(cfg, regime=None, **_):
    cases = []
    for r in _regimes(regime):
        for ell in cfg.ells:
            for n in range(cfg.module_n_max + 1):
                cap = cfg.lattice_cap(n, ell)
                name = f"{r.name} l={ell} n={n}"
                try:
                    lam = find_lattice_threshold(n, r, ell, cap)
                except NotFound:
                    cases.append(Case(name, "finding", {"cap": cap, "reason": "no lambda up to the cap"}))
                    continue
                ok, _ = icb_lattice_check(divided_action_closed(n, r, ell, lam), n)
                cases.append(_case(name, ok, threshold=lam, cap=cap))
    if regime is None or (regime.weight, regime.kappa) == ("even", "even"):
        for ell in range(1, 4):
            for m in range(1, 4):
                for lam in range(m, m + ell):
                    coeff, predicted, ok, wit = negative_witness(ell, m, lam)
                    good = coeff == predicted and not ok
                    cases.append(
                        _case(
                            f"negative witness l={ell} m={m} lambda={lam}",
                            good,
                            coeff=str(coeff),
                            predicted=str(predicted),
                            witness=wit,
                        )
                    )
    return cases


# -- general kappa ---------------------------------------------------------------


def suite_genk(cfg, **_):
    cases = []
    for n in range(-6, 7):
        want = 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)
        got = diamond(qint(n))
        cases.append(_case(f"diamond([{n}])", got == want, got=got, want=want))
    for text, k in cfg.kappa_values():
        cases.append(_case(f"(kappa - diamond)/[2] in A at kappa={text}", lemmaA_check(k)))
        for w in ("even", "odd"):
            _, x = second_dp(k, w)
            cases.append(_case(f"t-polynomial = explicit form, {w}, kappa={text}", x == t22_formula(k, w)))
            cases.append(_case(f"integrality, {w}, kappa={text}", second_dp_integral(k, w, cfg.mu_max)))
            lam = second_dp_threshold(k, w, cfg.genk_lambda_max)
            cases.append(_case(f"lattice, {w}, kappa={text}", lam is not None, threshold=lam))
    for n in range(-6, 7):
        for w in ("even", "odd"):
            cases.append(_case(f"kappa=[{n}] {w} weight reduces to the n=2 family member", specialization_matches(n, w)))
    return cases


# -- golden files ----------------------------------------------------------------


def default_golden_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "tests" / "golden"


def golden_render(name: str) -> str | None:
    """Engine output for a golden file name, or None if the name is unknown."""
    stem = name[:-4] if name.endswith(".txt") else name
    parts = stem.split("_")
    if parts[0] in ("p", "frakp") and len(parts) == 2:
        fam = p_poly if parts[0] == "p" else frak_p_poly
        return formats.xpoly_text(fam(int(parts[1]))) + "\n"
    if parts[0] in FAMILY_REGIME and len(parts) == 3:
        r = FAMILY_REGIME[parts[0]]
        n, ell = int(parts[1][1:]), int(parts[2][1:])
        return formats.pbw_text(divided_expansion(n, r, r.kappa_for(ell))) + "\n"
    return None


def suite_golden(cfg, golden_dir=None, **_):
    gdir = Path(golden_dir) if golden_dir else default_golden_dir()
    files = sorted(gdir.glob("*.txt")) if gdir.is_dir() else []
    if not files:
        return [Case("golden directory", "fail", {"path": str(gdir), "reason": "no golden files"})]
    cases = []
    for path in files:
        got = golden_render(path.name)
        if got is None:
            cases.append(Case(path.name, "fail", {"reason": "unrecognized golden file"}))
            continue
        want = path.read_text()
        cases.append(_case(path.name, got == want, **({} if got == want else {"expected": want, "got": got})))
    return cases


RUNNERS = {
    "relations": suite_relations,
    "ipolys": suite_ipolys,
    "expansion-equality": suite_expansion_equality,
    "integrality": suite_integrality,
    "module-oracle": suite_module_oracle,
    "lattice": suite_lattice,
    "sigma": suite_sigma,
    "genk": suite_genk,
    "golden-examples": suite_golden,
}


def run_suite(name: str, cfg: GridConfig | None = None, **kw) -> VerificationReport:
    cfg = cfg or load_config()
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in RUNNERS:
            raise ValueError(f"unknown suite {n!r}")
    t0 = time.perf_counter()
    cases = []
    for n in names:
        for c in RUNNERS[n](cfg, **kw):
            if name == "all":
                c = Case(f"{n}: {c.name}", c.verdict, c.detail)
            cases.append(c)
    grid = cfg.as_dict()
    grid["regime"] = str(kw["regime"]) if kw.get("regime") else "all"
    grid["seed"] = kw.get("seed", 0)
    return VerificationReport(name, grid, cases, time.perf_counter() - t0)
