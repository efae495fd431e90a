"""Named self-check suites used by ``rmt-charpoly validate``.

Each suite is a list of (name, thunk) pairs; a thunk returns True on
success. The ``budget`` ("small" or "full") controls how far each suite
reaches.
"""

import random
import time
from fractions import Fraction
from math import factorial

from . import asymptotics as asy
from . import combinatorics as cb
from . import expansions as ex
from . import moments as mo
from . import secular as sec
from .exact import cofactor_det, det_exact
from .orthopoly import (
    check_orthogonality,
    elementary_multipoly,
    ensemble_expectation,
    gue,
    jue,
    lue,
    multipoly_mul,
)

BUDGETS = ("small", "full")


def _rat(rng, lo=-9, hi=9, den=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _specs(N):
    return [gue(N), lue(N, Fraction(1, 2)), jue(N, Fraction(1, 2), Fraction(1, 3))]


def suite_exact(budget):
    rng = random.Random(11)
    size = 4 if budget == "small" else 6

    def dets():
        for _ in range(20):
            m = [[_rat(rng) for _ in range(size)] for _ in range(size)]
            if det_exact(m) != cofactor_det(m):
                return False
        return True

    return [("bareiss_vs_cofactor", dets)]


def suite_combinatorics(budget):
    nmax = 7 if budget == "small" else 10

    def dims():
        for n in range(1, nmax + 1):
            parts = list(cb.partitions_of(n))
            if any(cb.dim_V(l) != cb.hook_length_dim(l) for l in parts):
                return False
            if sum(cb.dim_V(l) ** 2 for l in parts) != factorial(n):
                return False
        return True

    def characters():
        # column orthogonality: sum_mu chi^mu_rho^2 = z_rho
        for n in range(1, nmax + 1):
            parts = list(cb.partitions_of(n))
            for rho in parts:
                if sum(cb.character(mu, rho) ** 2 for mu in parts) != cb.centralizer_order(rho):
                    return False
        return True

    def kostka_identity():
        # sum_mu K_{mu lam} dim V_mu = multinomial(|lam|; lam)
        for n in range(1, nmax + 1):
            for lam in cb.partitions_of(n):
                total = sum(cb.kostka(mu, lam) * cb.dim_V(mu) for mu in cb.partitions_of(n))
                multi = factorial(n)
                for x in lam:
                    multi //= factorial(x)
                if total != multi:
                    return False
        return True

    def boxes():
        for N in range(0, 6):
            for p in range(0, 5):
                parts = list(cb.partitions_in_box(N, p))
                if len(parts) != cb.box_count(N, p):
                    return False
                tildes = {cb.tilde(l, N, p) for l in parts} if N and p else set()
                if N and p and len(tildes) != len(parts):
                    return False
        return True

    return [("dim_formulas", dims), ("character_orthogonality", characters),
            ("kostka_multinomial", kostka_identity), ("box_enumeration", boxes)]


def suite_orthopoly(budget):
    n_max = 6 if budget == "small" else 12
    checks = []
    for spec in _specs(3):
        checks.append((f"orthogonality_{spec.kind}", lambda s=spec: check_orthogonality(s, n_max).ok))
    return checks


def suite_expansions(budget):
    side = 3 if budget == "small" else 4
    rng = random.Random(5)
    specs = [gue(side), lue(side, Fraction(1, 2)), jue(side, 0, 0)]

    def inverse(spec):
        parts = list(cb.partitions_in_box(side, side))
        for lam in parts:
            for nu in parts:
                s = sum(
                    ex.psi(spec, lam, mu, side) * ex.upsilon(spec, mu, nu, side)
                    for mu in parts
                    if cb.contains(lam, mu) and cb.contains(mu, nu)
                )
                if s != (1 if lam == nu else 0):
                    return False
        return True

    def cauchy():
        reps = 3 if budget == "small" else 20
        for _ in range(reps):
            for N in (1, 2, 3):
                for p in (1, 2, 3):
                    for spec in [None] + _specs(N):
                        t = [_rat(rng) for _ in range(p)]
                        x = [_rat(rng) for _ in range(N)]
                        lhs, rhs = ex.dual_cauchy_sides(spec, t, x)
                        if lhs != rhs:
                            return False
        return True

    def phi_routes():
        for spec in _specs(3):
            for lam in cb.partitions_in_box(3, 3):
                pts = [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4)]
                if ex.phi_eval(spec, lam, pts) != ex.phi_eval(spec, lam, pts, route="det"):
                    return False
        return True

    checks = [(f"inverse_pair_{s.kind}", lambda s=s: inverse(s)) for s in specs]
    checks += [("dual_cauchy", cauchy), ("phi_routes", phi_routes)]
    return checks


def suite_moments(budget):
    nmax = 4 if budget == "small" else 8
    pmax = 2 if budget == "small" else 3
    points = [Fraction(0), Fraction(1, 2), Fraction(-3, 7)]

    def routes():
        for N in range(2, nmax + 1):
            for spec in _specs(N):
                for p in range(1, pmax + 1):
                    poly = mo.moment_poly(spec, p)
                    for t in points:
                        v = poly(t)
                        if v != mo.moment_derivative_det(spec, p, t) or v != mo.moment_box_phi(spec, p, t):
                            return False
        return True

    def t0():
        return mo.gue_moment_t0(2, 1) == Fraction(3, 4) and all(
            mo.gue_moment_t0(N, p) == mo.moment_poly(gue(N), 2 * p)(0)
            for N in range(1, nmax + 1)
            for p in range(1, pmax)
        )

    def second():
        return all(
            mo.second_moment_poly(N) == mo.moment_poly(gue(N), 2) for N in range(1, nmax + 5)
        )

    def table():
        return all(a == b for N in (4, 5, 6, 7) for p in (1, 2, 3) for _, a, b in mo.table_check(N, p))

    return [("route_agreement", routes), ("t0_closed_form", t0), ("second_moment_sums", second),
            ("table_ratios", table)]


def suite_asymptotics(budget):
    pmax = 4 if budget == "small" else 12

    def audit():
        for parity in asy.PARITIES:
            for p in range(1, pmax + 1):
                if asy.cd_series_generated(p, parity, 6).coefficients != asy.cd_series(p, parity, 6).coefficients:
                    return False
            if asy.cd_series_generated(1, parity, 9).coefficients != asy.cd_series(1, parity, 9).coefficients:
                return False
        return True

    def recovery():
        return asy.semicircle_recovery(1, 10, 9).ok

    def parity_t2():
        for p in (1, 2, 3):
            b = asy.parity_leading_brackets(p, 2)
            odd = {1: Fraction(p), 0: Fraction(p * p * (2 * p * p - 1), 3)}
            if b["even"][1] != {} or b["odd"][1] != odd:
                return False
        return True

    def convergence():
        Ns = (200, 400) if budget == "full" else (100, 200)
        for p in (1, 2):
            for K in (1, 2, 3):
                k = asy.observed_order(p, K, *Ns)
                if abs(k - (K + 1)) > 0.15 * (K + 1):
                    return False
        return True

    return [("stored_series_audit", audit), ("semicircle_p1", recovery), ("parity_t2", parity_t2),
            ("numeric_convergence", convergence)]


def suite_secular(budget):
    nmax = 6 if budget == "small" else 12

    def generating():
        return all(sec.secular_generating_check(s).ok for N in range(1, nmax + 1) for s in _specs(N))

    def pairs():
        for N in range(1, 9 if budget == "full" else 5):
            for a in range(7):
                for b in range(7):
                    cls = "mixed" if (a + b) % 2 else ("even" if a % 2 == 0 else "odd")
                    if sec.secular_pair_gue(N, a // 2, b // 2, cls) != sec.secular_joint(gue(N), (a, b)):
                        return False
        return True

    def brute():
        for spec in [gue(2), gue(3), lue(2, Fraction(1, 2)), lue(3, 1)]:
            N = spec.N
            for n in range(1, 6):
                for lam in cb.partitions_of(n, max_part=N):
                    f = {(0,) * N: Fraction(1)}
                    for x in lam:
                        f = multipoly_mul(f, elementary_multipoly(x, N))
                    if ensemble_expectation(spec, f) != sec.secular_joint(spec, lam):
                        return False
        return True

    return [("generating_polynomial", generating), ("pair_vs_joint", pairs), ("brute_force_joint", brute)]


def suite_montecarlo(budget):
    from .montecarlo import MCConfig, Moment, SecularProduct, concordance, estimate

    samples = 20000 if budget == "small" else 10**6
    cases = [
        (gue(4), Moment(2, Fraction(0))),
        (gue(4), Moment(2, Fraction(1, 2))),
        (lue(3, 1), Moment(1, Fraction(1))),
        (jue(3, 1, 1), Moment(1, Fraction(1, 2))),
        (gue(4), SecularProduct((2,))),
    ]
    checks = []
    for spec, f in cases:
        checks.append((f"mc_{spec.kind}_{f.describe()}", lambda s=spec, f=f: concordance(MCConfig(s, samples, 1), f)[2]))

    def determinism():
        runs = [estimate(MCConfig(gue(4), 30000, 9, w, 4096), Moment(2, Fraction(1, 2))) for w in (1, 2, 8)]
        return len({(r.mean, r.stderr) for r in runs}) == 1

    checks.append(("mc_determinism", determinism))
    return checks


SUITES = {
    "exact": suite_exact,
    "combinatorics": suite_combinatorics,
    "orthopoly": suite_orthopoly,
    "expansions": suite_expansions,
    "moments": suite_moments,
    "asymptotics": suite_asymptotics,
    "secular": suite_secular,
    "montecarlo": suite_montecarlo,
}


def run_suites(names, budget="small"):
    """Run the named suites; returns a list of {suite, check, ok, seconds}."""
    if budget not in BUDGETS:
        raise ValueError(f"budget must be one of {BUDGETS}")
    results = []
    for name in names:
        for check, thunk in SUITES[name](budget):
            t0 = time.perf_counter()
            try:
                ok = bool(thunk())
                err = None
            except Exception as e:  # a crashing check is a failing check
                ok, err = False, f"{type(e).__name__}: {e}"
            row = {"suite": name, "check": check, "ok": ok, "seconds": round(time.perf_counter() - t0, 3)}
            if err:
                row["error"] = err
            results.append(row)
    return results
