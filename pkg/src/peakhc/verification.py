"""Named verification suites: every identity, decomposition and restriction
rule the package certifies, packaged as report-producing cases.

Each suite returns a list of report dicts {"claim", "params", "status",
"witness"} with status "verified" / "failed" / "skipped-resource".  The CLI
serializes them; the acceptance tests call them directly at the stated
bounds.  Suites accept a bound argument so coverage can be traded for time.
"""

from __future__ import annotations

import random

from .combinat import (
    Composition,
    compositions_of,
    peak_sets_in,
    strict_partitions_of,
)
from .characteristic import (
    cartan_image,
    gessel_pairing,
    theta_ribbon_formula,
    verify_bialgebra_compatibility,
    verify_corner_restriction,
    verify_diagrams,
    verify_projective_pairings,
    verify_restriction_to_hecke,
    verify_restriction_vectors,
)
from .hecke_clifford import (
    AlgebraElement,
    algebra_basis,
    frobenius_gram,
    gen_c,
    gen_T,
    morphism_matrix,
    multiply,
    unit as algebra_unit,
)
from .heisenberg import (
    filtration_component,
    fock_action,
    fock_action_on_word,
    free_basis_over_omega,
    hilbert_series_identity,
)
from .hopf import (
    FreeElement,
    convert,
    coproduct,
    k_expansions,
    pairing,
    peak_pairing,
    product,
    term,
    theta_sym,
    theta_transform,
    unit,
    vartheta_map,
)
from .linalg import Echelon, SpanSolver
from .scalars import GaussianRational
from .supermodules import (
    end_clifford_check,
    find_isomorphism,
    projective_hecke,
    simple_hecke,
    split_simple,
    stated_twist_isomorphism,
    twist,
)

__all__ = ["SUITES", "run_suite", "suite_names"]


def _report(claim, params, ok, witness=None):
    return {
        "claim": claim,
        "params": params,
        "status": "verified" if ok else "failed",
        "witness": witness,
    }


def _q_in_h(m: int) -> FreeElement:
    if m == 0:
        return unit("NSym", "H")
    return convert(term("NSym", "Q", Composition((m,))), "H")


def suite_euler(max_n: int = 12, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        total = FreeElement.zero("NSym", "H")
        for r in range(0, n + 1):
            total = total + product(_q_in_h(r), _q_in_h(n - r)).scale((-1) ** r)
        out.append(_report("euler", {"n": n}, not total, str(total)))
    return out


def suite_generators(max_n: int = 10, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        rhs = FreeElement.zero("NSym", "R")
        for k in range(n):
            rhs = rhs + term("NSym", "R", Composition(tuple([1] * k + [n - k])), 2)
        lhs = convert(term("NSym", "Q", Composition((n,))), "R")
        out.append(_report("generator-ribbons", {"n": n}, lhs == rhs))
    return out


def suite_theta_ribbon(max_n: int = 8, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            rep = theta_ribbon_formula(a)
            if rep["status"] != "verified":
                bad.append(str(a))
        out.append(_report("theta-ribbon", {"n": n}, not bad, bad))
    return out


def suite_duality(max_n: int = 7, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            ta = theta_transform(term("NSym", "R", a))
            ta_nsym = convert(ta, "H", "NSym")
            for b in compositions_of(n):
                fb = term("QSym", "F", b)
                lhs = pairing(ta_nsym, fb)
                mid = pairing(term("NSym", "R", a), convert(vartheta_map(fb), "F", "QSym"))
                rhs = peak_pairing(ta, vartheta_map(fb))
                if not lhs == mid == rhs:
                    bad.append((str(a), str(b)))
        out.append(_report("duality-chain", {"n": n}, not bad, bad))
    return out


def suite_peak_functions(max_n: int = 8, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        ok = True
        witness = None
        for P in peak_sets_in(n):
            f, m = k_expansions(P)
            if convert(m, "F") != f:
                ok, witness = False, "expansions disagree at %r" % (P,)
                break
        if ok:
            f, _m = k_expansions(peak_sets_in(n)[0])
            total = FreeElement.zero("QSym", "F")
            for a in compositions_of(n):
                total = total + term("QSym", "F", a, 2)
            qn = convert(
                theta_sym(term("Sym", "h", (n,))), "podd"
            )
            from .hopf import omega_into_peakdual

            ok = f == total and omega_into_peakdual(qn) == term(
                "PeakDual", "K", peak_sets_in(n)[0]
            )
            witness = None if ok else "empty-peak expansion mismatch"
        out.append(_report("peak-function-expansions", {"n": n}, ok, witness))
    return out


def suite_gessel(max_n: int = 6, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            for b in compositions_of(n):
                try:
                    gessel_pairing(a, b)
                except AssertionError:
                    bad.append((str(a), str(b)))
        out.append(_report("gessel", {"n": n}, not bad, bad))
    return out


def _random_homogeneous(rng, n, parity):
    basis = algebra_basis(n)
    terms = {}
    for _ in range(3):
        d, w = rng.choice(basis)
        if len(d) % 2 != parity:
            continue
        terms[(d, w)] = GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2))
    return AlgebraElement(n, terms)


def suite_algebra(max_n: int = 4, triples: int = 500, **_kw) -> list:
    import math

    out = []
    rng = random.Random(123)
    for n in range(1, max_n + 1):
        basis = algebra_basis(n)
        ok = len(basis) == 2 ** n * math.factorial(n)
        witness = None if ok else "basis count"
        one = algebra_unit(n)
        if ok:
            for i in range(1, n):
                Ti = gen_T(i, n)
                if multiply(Ti, Ti) != -Ti:
                    ok, witness = False, "quadratic T relation"
                for j in range(i + 2, n):
                    if multiply(Ti, gen_T(j, n)) != multiply(gen_T(j, n), Ti):
                        ok, witness = False, "distant T commutation"
                if i + 1 < n:
                    a = multiply(multiply(Ti, gen_T(i + 1, n)), Ti)
                    b = multiply(multiply(gen_T(i + 1, n), Ti), gen_T(i + 1, n))
                    if a != b:
                        ok, witness = False, "braid relation"
            for i in range(1, n + 1):
                ci = gen_c(i, n)
                if multiply(ci, ci) != -one:
                    ok, witness = False, "Clifford square"
                for j in range(1, n + 1):
                    if i != j and multiply(ci, gen_c(j, n)) != -multiply(
                        gen_c(j, n), ci
                    ):
                        ok, witness = False, "Clifford anticommutation"
            for i in range(1, n):
                for j in range(1, n + 1):
                    if j not in (i, i + 1):
                        if multiply(gen_T(i, n), gen_c(j, n)) != multiply(
                            gen_c(j, n), gen_T(i, n)
                        ):
                            ok, witness = False, "distant cross relation"
                if multiply(gen_T(i, n), gen_c(i, n)) != multiply(
                    gen_c(i + 1, n), gen_T(i, n)
                ):
                    ok, witness = False, "first cross relation"
                if multiply(gen_T(i, n) + one, gen_c(i + 1, n)) != multiply(
                    gen_c(i, n), gen_T(i, n) + one
                ):
                    ok, witness = False, "second cross relation"
        if ok:
            for _ in range(triples):
                a = _random_homogeneous(rng, n, rng.randint(0, 1))
                b = _random_homogeneous(rng, n, rng.randint(0, 1))
                c = _random_homogeneous(rng, n, rng.randint(0, 1))
                if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
                    ok, witness = False, "associativity"
                    break
        out.append(_report("algebra-relations", {"n": n}, ok, witness))
        # Frobenius form: invertible Gram, evenness, Nakayama identity
        gram = frobenius_gram(n)
        ech = Echelon()
        for j in range(gram.ncols):
            ech.add(dict(gram.cols[j]))
        ok = ech.rank == gram.ncols
        witness = None if ok else "Gram rank %d" % ech.rank
        if ok:
            parities = [len(d) % 2 for (d, _w) in basis]
            for i, j, v in gram.entries():
                if parities[i] != parities[j] and v:
                    ok, witness = False, "form not even"
                    break
        if ok:
            phi = morphism_matrix("phi", n)
            rhs = gram.transpose() @ phi
            for j in range(gram.ncols):
                col = gram.cols[j]
                rcol = rhs.cols[j]
                keys = set(col) | set(rcol)
                for i in keys:
                    sign = (-1) ** (parities[i] * parities[j])
                    left = col.get(i, GaussianRational(0))
                    right = rcol.get(i, GaussianRational(0)) * sign
                    if left != right:
                        ok, witness = False, "Nakayama identity"
                        break
                if not ok:
                    break
        out.append(_report("frobenius-form", {"n": n}, ok, witness))
    return out


def suite_simples(max_n: int = 5, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            res = split_simple(a)
            peaks = a.peak_set().elements
            l = (len(peaks) + 1) // 2
            if res.copies != 2 ** l:
                bad.append((str(a), "copies"))
                continue
            if any(c.dim != 2 ** (n - l) for c in res.components):
                bad.append((str(a), "component dimension"))
                continue
            expected = "M" if len(peaks) % 2 == 1 else "Q"
            if res.type_tag != expected:
                bad.append((str(a), "type"))
                continue
            if any(p is None for p in res.pair_parities.values()):
                bad.append((str(a), "pairwise isomorphism"))
                continue
            rep = end_clifford_check(a)
            if not rep["ok"]:
                bad.append((str(a), "endomorphism algebra"))
        out.append(_report("simple-decomposition", {"n": n}, not bad, bad))
    return out


def suite_projectives(max_n: int = 4, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        rep = verify_projective_pairings(n)
        rep["params"] = {"n": n}
        out.append(rep)
    return out


def suite_cartan(max_n: int = 6, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        images = []
        for a in compositions_of(n):
            rep = cartan_image(a)
            if rep["status"] != "verified":
                bad.append(str(a))
            else:
                images.append(convert(rep["value"], "F", "QSym"))
        ok = not bad
        witness = {"bad": bad}
        if ok:
            from .hopf import graded_rank

            rank = graded_rank(images, n)
            expected = len(strict_partitions_of(n))
            witness["rank"] = rank
            ok = rank == expected
        out.append(_report("cartan-square", {"n": n}, ok, witness))
    return out


def suite_restriction(max_n: int = 8, module_max_n: int = 6, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            rep = verify_restriction_to_hecke(a, module_level=False)
            if rep["status"] != "verified":
                bad.append(str(a))
        out.append(_report("restriction-classes", {"n": n}, not bad, bad))
    for n in range(1, module_max_n + 1):
        out.append(verify_restriction_vectors(n))
    return out


def suite_corner(max_n: int = 5, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            rep = verify_corner_restriction(a, max_n=max_n)
            if rep["status"] != "verified":
                bad.append((str(a), rep["status"]))
        out.append(_report("corner-restriction", {"n": n}, not bad, bad))
    return out


def suite_twists(max_n: int = 4, **_kw) -> list:
    out = []
    for n in range(1, max_n + 1):
        bad = []
        for a in compositions_of(n):
            for part in (1, 2, 3, 4):
                f = stated_twist_isomorphism(a, part)
                want_parity = n % 2 if part in (1, 4) else 0
                if f.parity != want_parity or not f.is_morphism() or not f.is_invertible():
                    bad.append((str(a), part))
            tw = twist(simple_hecke(a), "phi_bar")
            if not find_isomorphism(tw, simple_hecke(a.reverse())).found:
                bad.append((str(a), "simple reversal"))
            twp = twist(projective_hecke(a), "phi_bar")
            if not find_isomorphism(twp, projective_hecke(a.reverse())).found:
                bad.append((str(a), "projective reversal"))
        out.append(_report("twisted-isomorphisms", {"n": n}, not bad, bad))
    return out


def suite_bialgebra(max_total: int = 5, **_kw) -> list:
    out = []
    bad = []
    for total in range(2, max_total + 1):
        for m in range(1, total):
            n = total - m
            for a in compositions_of(m):
                for b in compositions_of(n):
                    rep = verify_bialgebra_compatibility(a, b)
                    if rep["status"] != "verified":
                        bad.append((str(a), str(b)))
    out.append(_report("bialgebra-compatibility", {"max_total": max_total}, not bad, bad))
    return out


def suite_heisenberg(max_degree: int = 8, **_kw) -> list:
    out = []
    # lowering property
    bad = []
    span_cache: dict = {}

    def filtration_solver(level, degree):
        key = (level, degree)
        got = span_cache.get(key)
        if got is None:
            basis, _rank = filtration_component(level, degree, max_degree=max_degree)
            got = SpanSolver()
            for i, b in enumerate(basis):
                got.add(i, dict(convert(b, "K").coeffs))
            span_cache[key] = got
        return got

    for n in range(1, max_degree + 1):
        for a in compositions_of(n):
            for m in range(1, n + 1):
                img = fock_action_on_word(m, a)
                if not img:
                    continue
                solver = filtration_solver(a.length - 1, n - m)
                if not solver.contains(dict(img.coeffs)):
                    bad.append((str(a), m))
    out.append(_report("fock-lowering", {"max_degree": max_degree}, not bad, bad))
    # module-algebra law on random pairs of bounded degree
    rng = random.Random(31)
    keys = [P for d in (1, 2, 3) for P in peak_sets_in(d)]
    bad = []
    for _ in range(20):
        x = term("PeakDual", "K", rng.choice(keys), rng.randint(1, 3))
        y = term("PeakDual", "K", rng.choice(keys), rng.randint(1, 3))
        for m in (1, 2, 3):
            qm = convert(term("NSym", "Q", Composition((m,))), "Xi", "Peak")
            lhs = fock_action(qm, product(x, y))
            rhs = FreeElement.zero("PeakDual", "K")
            for (a1, a2), c in coproduct(qm).coeffs.items():
                left = fock_action(term("Peak", "Xi", a1), x)
                right = fock_action(term("Peak", "Xi", a2), y)
                if left and right:
                    rhs = rhs + product(left, right).scale(c)
            if lhs != rhs:
                bad.append((str(x), str(y), m))
    out.append(_report("fock-module-algebra", {"samples": 20}, not bad, bad))
    # freeness certificate and the Hilbert identity
    cert = free_basis_over_omega(max_degree)
    out.append(
        _report(
            "freeness-certificate",
            {"max_degree": max_degree},
            cert.ok,
            [dict(r) for r in cert.per_degree],
        )
    )
    out.append(hilbert_series_identity(max_degree))
    return out


def suite_diagrams(max_n: int = 5, **_kw) -> list:
    return [verify_diagrams(n) for n in range(1, max_n + 1)]


def suite_freeness(max_degree: int = 8, **_kw) -> list:
    """The freeness certificate alone (generators + per-degree ranks +
    Hilbert identity), without the lowering and module-algebra batteries."""
    cert = free_basis_over_omega(max_degree)
    out = [
        _report(
            "freeness-certificate",
            {"max_degree": max_degree},
            cert.ok,
            [dict(r) for r in cert.per_degree],
        ),
        hilbert_series_identity(max_degree),
    ]
    return out


SUITES = {
    "euler": (suite_euler, {"max_n": 12}),
    "generators": (suite_generators, {"max_n": 10}),
    "theta-ribbon": (suite_theta_ribbon, {"max_n": 8}),
    "duality": (suite_duality, {"max_n": 7}),
    "peak-functions": (suite_peak_functions, {"max_n": 8}),
    "gessel": (suite_gessel, {"max_n": 6}),
    "algebra": (suite_algebra, {"max_n": 4}),
    "simples": (suite_simples, {"max_n": 5}),
    "projectives": (suite_projectives, {"max_n": 4}),
    "cartan": (suite_cartan, {"max_n": 6}),
    "diagrams": (suite_diagrams, {"max_n": 5}),
    "restriction": (suite_restriction, {"max_n": 8, "module_max_n": 6}),
    "corner": (suite_corner, {"max_n": 5}),
    "twists": (suite_twists, {"max_n": 4}),
    "bialgebra": (suite_bialgebra, {"max_total": 5}),
    "heisenberg": (suite_heisenberg, {"max_degree": 8}),
    "freeness": (suite_freeness, {"max_degree": 8}),
}


def suite_names() -> list:
    return sorted(SUITES) + ["all"]


def run_suite(name: str, max_n: int | None = None, max_degree: int | None = None) -> list:
    """Run one suite (or "all") with optional bound overrides."""
    if name == "all":
        out = []
        for key in sorted(SUITES):
            out.extend(run_suite(key, max_n=max_n, max_degree=max_degree))
        return out
    if name not in SUITES:
        raise KeyError("unknown suite %r (choose from %s)" % (name, suite_names()))
    fn, defaults = SUITES[name]
    kwargs = dict(defaults)
    if max_n is not None:
        for key in ("max_n", "module_max_n"):
            if key in kwargs:
                kwargs[key] = min(kwargs[key], max_n)
        if "max_total" in kwargs:
            kwargs["max_total"] = min(kwargs["max_total"], max_n)
        if "max_degree" in kwargs:
            kwargs["max_degree"] = min(kwargs["max_degree"], max(max_n, 1))
    if max_degree is not None and "max_degree" in kwargs:
        kwargs["max_degree"] = max_degree
    return fn(**kwargs)
