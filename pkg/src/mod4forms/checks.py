"""Verification sweeps run by the command-line tool.

Each ``check_*`` function takes keyword parameters and returns a list of
CheckResult; results keep the order in which the sub-checks are declared.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from math import gcd
from typing import Callable

from . import elliptic, galois, hecke, qseries, squares, tower

# first coefficients printed in the introduction
F_COEFFICIENTS = (1, 1416, 842654, 271386544, 50558981478, 5356057726176, 290719505955308)
T2F_COEFFICIENTS = (1416, 34631124912, 5356057726176)
T3F_MINUS_2F_COEFFICIENTS = (842652, 5356057723344, 113674493459566148)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    parameters: dict
    verdict: str
    witness: dict | None = None
    elapsed_millis: int = 0

    def __post_init__(self):
        if self.verdict == FAIL and self.witness is None:
            raise ValueError(f"failing check {self.name} needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict:
        return {
            "checkName": self.name,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "elapsedMillis": self.elapsed_millis,
        }


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


DEFAULTS = {
    "bound": _env_int("MOD4FORMS_BOUND", 4096),
    "max_prime": _env_int("MOD4FORMS_MAX_PRIME", 3000),
    "series_prec": _env_int("MOD4FORMS_SERIES_PREC", 10_000),
    "max_ell": _env_int("MOD4FORMS_MAX_ELL", 61),
    "max_n": 2000,
    "squares_max_prime": 5000,
    "twist_max_prime": 200,
    "hecke_bound": 300,
    "hatada_bound": 500,
}


def _strs(d: dict) -> dict:
    """Witness payloads carry integers as decimal strings."""
    out = {}
    for k, v in d.items():
        if isinstance(v, bool) or v is None:
            out[k] = v
        elif isinstance(v, int):
            out[k] = str(v)
        elif isinstance(v, (list, tuple)):
            out[k] = [str(x) if isinstance(x, int) and not isinstance(x, bool) else x for x in v]
        elif isinstance(v, dict):
            out[k] = _strs(v)
        else:
            out[k] = str(v)
    return out


class _Collector:
    def __init__(self):
        self.results: list[CheckResult] = []

    def run(self, name: str, params: dict, fn: Callable[[], dict | None]):
        """``fn`` returns None on success or a witness dict on failure."""
        start = time.perf_counter()
        witness = fn()
        elapsed = int((time.perf_counter() - start) * 1000)
        verdict = PASS if witness is None else FAIL
        self.results.append(CheckResult(name, params, verdict, None if witness is None else _strs(witness), elapsed))


def _first_failure(items, predicate, describe):
    for x in items:
        if not predicate(x):
            return describe(x)
    return None


# -- hecke -------------------------------------------------------------------------------


def check_weak_eigenform(bound: int = DEFAULTS["hecke_bound"], **_) -> list[CheckResult]:
    c = _Collector()
    ops = tuple(range(2, 11))
    f = qseries.build_f(bound * max(ops))

    def displayed_values():
        t2 = hecke.hecke_apply(f, 2)
        t3 = hecke.hecke_apply(f, 3) - 2 * f.truncate(f.prec // 3)
        got2, got3 = t2.coeffs[1:4], t3.coeffs[1:4]
        if got2 != T2F_COEFFICIENTS or got3 != T3F_MINUS_2F_COEFFICIENTS:
            return {"T2f": list(got2), "T3f-2f": list(got3)}
        if any(x % 4 for x in got2 + got3):
            return {"nonzero_mod4": [x % 4 for x in got2 + got3]}
        return None

    c.run("hecke-displayed-values", {"coefficients": 3}, displayed_values)
    c.run("s36-basis-triangularity", {"prec": 8},
          lambda: None if hecke.s36_basis_triangularity_check(8) else
          {"leading": [hecke.leading_term(b) for b in hecke.s36_basis(8)]})

    def weak(ns):
        def run():
            rep = hecke.weak_eigenform_check(f, 2, ns, bound)
            if rep.passed:
                return None
            n = next(k for k, w in rep.witnesses.items() if w)
            return {"operator": n, "index": rep.witnesses[n][0]}
        return run

    c.run("weak-eigenform-generators", {"mod": 4, "operators": [2, 3], "bound": bound}, weak((2, 3)))
    c.run("weak-eigenform-sweep", {"mod": 4, "operators": list(ops), "bound": bound}, weak(ops))

    def commutativity():
        for name, h in (("delta", qseries.delta(600)), ("f", f.truncate(600))):
            a = hecke.hecke_apply(hecke.hecke_apply(h, 3), 2)
            b = hecke.hecke_apply(hecke.hecke_apply(h, 2), 3)
            n = min(a.prec, b.prec)
            for j in range(n):
                if a[j] != b[j]:
                    return {"form": name, "index": j}
        return None

    c.run("hecke-commutativity", {"prec": 600}, commutativity)

    def tau_multiplicative():
        tau = qseries.delta(400).coeffs
        for m in range(1, 400):
            for n in range(1, 400 // m + 1):
                if m * n < 400 and gcd(m, n) == 1 and tau[m] * tau[n] != tau[m * n]:
                    return {"m": m, "n": n}
        return None

    c.run("tau-multiplicativity", {"prec": 400}, tau_multiplicative)
    return c.results


def check_hatada(bound: int = DEFAULTS["hatada_bound"], **_) -> list[CheckResult]:
    c = _Collector()
    for k in sorted(hecke.HATADA_GENERATORS):
        def run(k=k):
            rep = hecke.hatada_consistency_check([k], bound)[k]
            return None if rep.passed else {"index": rep.mismatch[0], "residues": list(rep.mismatch[1:])}
        c.run(f"hatada-weight-{k}", {"weight": k, "mod": 4, "bound": bound}, run)
    return c.results


def check_congruence(bound: int = DEFAULTS["bound"], jobs: int = 1, **_) -> list[CheckResult]:
    c = _Collector()
    g = elliptic.g_coefficients(bound, jobs)

    def congruence():
        f = qseries.build_f(bound + 1)
        rep = hecke.congruence_check(f, g, 2, bound)
        if rep.passed:
            return None
        n, x, y = rep.mismatch
        return {"index": n, "residue_f": x, "residue_g": y}

    c.run("congruence-f-g", {"mod": 4, "bound": bound, "level": elliptic.E_LEVEL}, congruence)

    def hasse():
        return _first_failure(
            squares.odd_primes_up_to(bound),
            lambda p: g[p] ** 2 <= 4 * p,
            lambda p: {"prime": p, "a_p": g[p]},
        )

    c.run("hasse-bound", {"max_prime": bound}, hasse)
    return c.results


# -- squares -------------------------------------------------------------------------------


def check_f_rule(max_prime: int = DEFAULTS["max_prime"], **_) -> list[CheckResult]:
    c = _Collector()

    def run():
        f = qseries.build_f(max_prime + 1)
        return _first_failure(
            squares.primes_up_to(max_prime),
            lambda p: f[p] % 4 == squares.f_mod4_rule(p),
            lambda p: {"prime": p, "a_p_mod4": f[p] % 4, "rule": squares.f_mod4_rule(p)},
        )

    c.run("f-prime-rule", {"max_prime": max_prime}, run)
    return c.results


def check_squares(max_n: int = DEFAULTS["max_n"], max_prime: int = DEFAULTS["squares_max_prime"], **_) -> list[CheckResult]:
    c = _Collector()
    def eisenstein_dirichlet(domain):
        def run():
            bad = [n for n in range(1, max_n + 1) if domain(n) and squares.r3_closed(n) != squares.r3_brute(n)]
            if not bad:
                return None
            n = bad[0]
            return {"n": n, "closed": squares.r3_closed(n), "brute": squares.r3_brute(n), "mismatches": len(bad),
                    "mismatches_in_valid_domain": sum(1 for m in bad if squares.r3_closed_valid(m))}
        return run

    c.run("eisenstein-dirichlet", {"max_n": max_n, "domain": "n = 1, 3 mod 4"},
          eisenstein_dirichlet(lambda n: n % 4 in (1, 3)))
    c.run("eisenstein-dirichlet-squarefree", {"max_n": max_n, "domain": "squarefree n > 1, n = 1 mod 4 or 3 mod 8"},
          eisenstein_dirichlet(squares.r3_closed_valid))

    def odd_squares_corollary(ell):
        q3 = squares.q3_brute(ell)
        tally = squares.residue_tally(ell)
        r3 = squares.r3_brute(ell)
        return (
            8 * q3 == r3
            and q3 == tally.difference
            and q3 == 2 * tally.residues - (ell - 1) // 2
            and q3 % 2 == 1
        )

    primes = squares.odd_primes_up_to(max_prime)
    c.run("three-odd-squares-corollary", {"max_prime": max_prime, "residue_mod_8": 3}, lambda: _first_failure(
        (p for p in primes if p % 8 == 3),
        odd_squares_corollary,
        lambda p: {"prime": p, "q3": squares.q3_brute(p), "r3": squares.r3_brute(p),
                   "R": squares.residue_tally(p).residues, "N": squares.residue_tally(p).nonresidues},
    ))
    c.run("three-odd-squares-vanishing", {"max_prime": max_prime}, lambda: _first_failure(
        (p for p in primes if p % 8 != 3),
        lambda p: squares.q3_brute(p) == 0,
        lambda p: {"prime": p, "q3": squares.q3_brute(p)},
    ))

    def kolberg():
        tau = qseries.delta(max_prime + 1)
        if tau[2] != -24:
            return {"prime": 2, "tau": tau[2]}
        return _first_failure(
            primes,
            lambda p: tau[p] % 4 == squares.kolberg_residue(p),
            lambda p: {"prime": p, "tau_mod4": tau[p] % 4},
        )

    c.run("kolberg", {"max_prime": max_prime}, kolberg)

    def jacobi_multiplicative():
        for n in range(3, 100, 2):
            for a in range(1, 51):
                for b in range(1, 51):
                    if squares.jacobi(a * b, n) != squares.jacobi(a, n) * squares.jacobi(b, n):
                        return {"a": a, "b": b, "n": n}
        return None

    c.run("jacobi-multiplicativity", {"max_numerator": 50, "max_modulus": 99}, jacobi_multiplicative)
    return c.results


def check_eta(prec: int = DEFAULTS["series_prec"], **_) -> list[CheckResult]:
    c = _Collector()

    def delta_mod2():
        lhs = qseries.reduce(qseries.delta(prec), 1)
        rhs = qseries.theta_odd_squares(prec)
        return _first_failure(range(prec), lambda n: lhs[n] == rhs[n], lambda n: {"index": n})

    c.run("delta-mod-2-theta", {"prec": prec}, delta_mod2)

    def jacobi_identity():
        ok, n = qseries.eta_cubed_identity_check(prec)
        return None if ok else {"index": n}

    c.run("jacobi-eta-cubed", {"prec": prec}, jacobi_identity)
    return c.results


# -- elliptic / galois ----------------------------------------------------------------------


def check_torsion(**_) -> list[CheckResult]:
    c = _Collector()

    def points():
        rep = elliptic.torsion_verify()
        return None if rep.passed else {"failed": rep.failures}

    c.run("four-torsion-points", {}, points)

    def matrices():
        got = galois.torsion_matrices()
        rho = galois.build_rho()
        want = (rho(galois.R), rho(galois.S))
        if got != want:
            return {"M_r": str(got[0]), "M_s": str(got[1])}
        return None

    c.run("four-torsion-matrices", {"basis": "P1,P2"}, matrices)

    def group_axioms():
        EK, pts = elliptic.torsion_points()
        combos = elliptic.four_torsion_combinations(EK, pts["P1"], pts["P2"])
        index = {pt: ab for ab, pt in combos.items()}
        keys = list(combos)
        table = {}
        for a in keys:
            for b in keys:
                s = elliptic.point_add(EK, combos[a], combos[b])
                if s not in index:
                    return {"left": a, "right": b, "reason": "sum outside <P1, P2>"}
                table[a, b] = index[s]
                if table[a, b] != ((a[0] + b[0]) % 4, (a[1] + b[1]) % 4):
                    return {"left": a, "right": b, "reason": "sum disagrees with Z/4 x Z/4"}
        for a in keys:
            if index[elliptic.point_neg(EK, combos[a])] != ((-a[0]) % 4, (-a[1]) % 4):
                return {"element": a, "reason": "inverse"}
            for b in keys:
                if table[a, b] != table[b, a]:
                    return {"left": a, "right": b, "reason": "commutativity"}
                for d in keys:
                    if table[table[a, b], d] != table[a, table[b, d]]:
                        return {"triple": [a, b, d], "reason": "associativity"}
        return None

    c.run("four-torsion-group-law", {"elements": 16}, group_axioms)
    return c.results


def _tower_checks(c: _Collector, field_name: str):
    builder = tower.build_K if field_name == "K" else tower.build_L
    T, r, s = builder()

    def presentation():
        group = tower.generated_group([r, s])
        if len(group) != 8:
            return {"size": len(group)}
        if tower.order(r) != 4 or tower.order(s) != 2:
            return {"order_r": tower.order(r), "order_s": tower.order(s)}
        if tower.compose(s, tower.compose(r, s)) != r**3:
            return {"reason": "srs != r^3"}
        return None

    c.run(f"dihedral-galois-group-{field_name}", {"field": field_name}, presentation)

    if field_name == "K":
        def r_action():
            i, _, g = T.gens()
            return None if r(g) * r(g) == 1 - i == r(1 + i) else {"r(g)^2": str(r(g) * r(g))}

        c.run("r-action-consistency-K", {}, r_action)

    def field_axioms():
        rng = random.Random(20180613)
        for k in range(100):
            a = T.random_element(rng, nonzero=True)
            if a * a.inverse() != 1:
                return {"sample": k, "element": str(a)}
        for k in range(50):
            a, b = T.random_element(rng), T.random_element(rng)
            for sigma in (r, s):
                if sigma(a * b) != sigma(a) * sigma(b) or sigma(a + b) != sigma(a) + sigma(b):
                    return {"sample": k, "automorphism": sigma.name}
        return None

    c.run(f"tower-field-axioms-{field_name}", {"field": field_name, "samples": 100, "seed": 20180613}, field_axioms)


def check_frobenius(field: str = "K", max_prime: int = DEFAULTS["max_prime"], jobs: int = 1, **_) -> list[CheckResult]:
    if field not in ("K", "L"):
        raise ValueError("field must be K or L")
    c = _Collector()
    _tower_checks(c, field)
    builder = galois.build_rho if field == "K" else galois.build_rho_prime
    classify = galois.frobenius_class_K if field == "K" else galois.frobenius_class_L

    def embedding():
        # construction runs the 64-product homomorphism and injectivity checks
        try:
            rep = builder()
        except galois.RepresentationError as exc:
            return {"error": str(exc)}
        if rep.image_r.order() != 4 or rep.image_s.order() != 2:
            return {"order_r": rep.image_r.order(), "order_s": rep.image_s.order()}
        return None

    c.run(f"embedding-{'rho' if field == 'K' else 'rho-prime'}", {"products": 64}, embedding)
    rep = builder()

    def traces():
        primes = squares.odd_primes_up_to(max_prime)
        f = qseries.build_f(max_prime + 1)
        a_E = elliptic.traces(primes, jobs)
        for p in primes:
            t = galois.trace_mod4(rep, classify(p))
            values = {"trace": t, "a_p(f)": f[p] % 4, "rule": squares.f_mod4_rule(p), "a_p(E)": a_E[p] % 4}
            if len(set(values.values())) != 1:
                return {"prime": p, **values}
        return None

    c.run(f"frobenius-traces-{field}", {"field": field, "representation": rep.name, "max_prime": max_prime}, traces)
    return c.results


def check_twists(max_prime: int = DEFAULTS["twist_max_prime"], **_) -> list[CheckResult]:
    c = _Collector()
    for D in elliptic.TWIST_DISCRIMINANTS:
        C = elliptic.quadratic_twist(elliptic.E, D)

        def run(C=C, D=D):
            for p in squares.odd_primes_up_to(max_prime):
                a_t = elliptic.trace_a(p, C)
                a_e = elliptic.trace_a(p)
                if a_t != squares.legendre(D, p) * a_e or (a_t - a_e) % 4:
                    return {"prime": p, "a_twist": a_t, "a_E": a_e}
            return None

        c.run(f"twist-{D}", {"D": D, "max_prime": max_prime}, run)
    return c.results


def check_weight1(max_prime: int = DEFAULTS["max_prime"], **_) -> list[CheckResult]:
    c = _Collector()

    def run():
        rep = galois.weight1_noncongruence_check(max_prime)
        return None if rep.passed else {"exceptions": rep.exceptions}

    c.run("weight1-noncongruence", {"max_prime": max_prime, "residues_mod_8": [3, 5]}, run)
    return c.results


def check_fsq_identity(max_ell: int = DEFAULTS["max_ell"], **_) -> list[CheckResult]:
    c = _Collector()

    def run():
        for p in squares.odd_primes_up_to(max_ell):
            rep = elliptic.frobenius_square_identity(p, guard=max(max_ell, elliptic.F_ELL_SQUARED_GUARD))
            if not rep.passed:
                return {"prime": p, "count": rep.count, "expected": rep.expected,
                        "divisible_by_16": rep.divisible_by_16}
        return None

    c.run("frobenius-square-identity", {"max_ell": max_ell}, run)
    return c.results


REGISTRY: dict[str, Callable[..., list[CheckResult]]] = {
    "weak-eigenform": check_weak_eigenform,
    "f-rule": check_f_rule,
    "squares": check_squares,
    "eta": check_eta,
    "torsion": check_torsion,
    "frobenius": check_frobenius,
    "congruence": check_congruence,
    "twists": check_twists,
    "weight1": check_weight1,
    "fsq-identity": check_fsq_identity,
    "hatada": check_hatada,
}


def run_all(jobs: int = 1) -> list[CheckResult]:
    results = []
    for name, fn in REGISTRY.items():
        if name == "frobenius":
            results += fn(field="K", jobs=jobs) + fn(field="L", jobs=jobs)
        else:
            results += fn(jobs=jobs)
    names = [r.name for r in results]
    if len(names) != len(set(names)):
        raise AssertionError("duplicate check names")
    return results
