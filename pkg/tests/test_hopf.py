import itertools
import random
from fractions import Fraction

import pytest

from peakhc.combinat import (
    Composition,
    PeakSet,
    compositions_of,
    descent_class,
    peak_sets_in,
    strict_partitions_of,
    symmetric_difference_shift,
)
from peakhc.hopf import (
    ConversionError,
    FreeElement,
    MembershipError,
    convert,
    coproduct,
    counit,
    forgetful_pi,
    graded_rank,
    k_expansions,
    omega_inner_product,
    omega_into_peakdual,
    pairing,
    peak_pairing,
    product,
    sym_into_qsym,
    term,
    theta_sym,
    theta_transform,
    unit,
    vartheta_map,
)


def C(*parts):
    return Composition(tuple(parts))


def PS(n, *elems):
    return PeakSet(n, frozenset(elems))


def H(*parts):
    return term("NSym", "H", C(*parts))


def E(*parts):
    return term("NSym", "E", C(*parts))


def R(*parts):
    return term("NSym", "R", C(*parts))


def Q(*parts):
    return term("NSym", "Q", C(*parts))


def M(*parts):
    return term("QSym", "M", C(*parts))


def F(*parts):
    return term("QSym", "F", C(*parts))


def Xi(n, *elems):
    return term("Peak", "Xi", PS(n, *elems))


def K(n, *elems):
    return term("PeakDual", "K", PS(n, *elems))


def N(*parts):
    return term("PeakDual", "N", C(*parts))


def h(*parts):
    return term("Sym", "h", tuple(parts))


def p(*parts):
    return term("Sym", "p", tuple(parts))


def _random_element(rng, algebra, basis, degrees, nterms=3):
    out = FreeElement.zero(algebra, basis)
    for _ in range(nterms):
        d = rng.choice(degrees)
        alpha = rng.choice(compositions_of(d))
        coeff = Fraction(rng.randint(-4, 4))
        if coeff:
            out = out + term(algebra, basis, alpha, coeff)
    return out


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def test_convert_examples():
    assert convert(Q(2), "H") == 2 * H(1, 1)
    assert convert(R(1, 1), "H") == H(1, 1) - H(2)
    assert convert(F(2), "M") == M(2) + M(1, 1)
    assert convert(E(2), "H") == H(1, 1) - H(2)


def test_convert_roundtrips():
    for n in range(1, 6):
        for a in compositions_of(n):
            for basis in ("E", "R"):
                x = term("NSym", basis, a)
                assert convert(convert(x, "H"), basis) == x
            x = term("QSym", "M", a)
            assert convert(convert(x, "F"), "M") == x
            y = term("QSym", "F", a)
            assert convert(convert(y, "M"), "F") == y


def test_convert_no_path():
    with pytest.raises(ConversionError):
        convert(H(2), "Q")
    with pytest.raises(ConversionError):
        convert(K(3, 2), "N")
    assert convert(N(2), "N") == N(2)  # identity conversion is allowed
    assert convert(N(2), "K").algebra == "PeakDual"


def test_peak_membership():
    # Q_2 lies in the peak subalgebra, H_2 does not
    x = convert(Q(2), "Xi", "Peak")
    assert x == 2 * Xi(2)
    with pytest.raises(MembershipError):
        convert(H(2), "Xi", "Peak")
    with pytest.raises(MembershipError):
        convert(F(2), "K", "PeakDual")


def test_sym_conversions():
    # Newton recursions
    assert convert(p(2), "h") == 2 * h(2) - h(1, 1)
    assert convert(h(2), "p") == Fraction(1, 2) * (p(1, 1) + p(2))
    for n in range(1, 7):
        for lam in [tuple([n]), (1,) * n]:
            x = term("Sym", "h", lam)
            assert convert(convert(x, "p"), "h") == x
    # m <-> h round-trip
    for lam in [(2,), (1, 1), (2, 1), (3, 1), (2, 2)]:
        x = term("Sym", "m", lam)
        assert convert(convert(x, "h"), "m") == x
    # h_n = sum of all monomials of degree n
    exp = convert(h(3), "m")
    assert exp == term("Sym", "m", (3,)) + term("Sym", "m", (2, 1)) + term(
        "Sym", "m", (1, 1, 1)
    )


def test_qsym_to_sym_membership():
    x = sym_into_qsym(h(2, 1))
    back = convert(x, "h", "Sym")
    assert back == h(2, 1)
    with pytest.raises(MembershipError):
        convert(M(2, 1), "m", "Sym")


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def test_product_examples():
    assert product(H(2), H(1)) == H(2, 1)
    assert product(M(1), M(1)) == 2 * M(1, 1) + M(2)
    # Q_1 * Q_1 = 4 H_{(1,1)} = 2 Q_2 inside the peak subalgebra
    q1 = convert(Q(1), "Xi", "Peak")
    sq = product(q1, q1)
    assert sq == 4 * Xi(2)
    assert convert(sq, "H", "NSym") == 4 * H(1, 1)


def _mono_eval(alpha, nvars):
    """Monomial quasisymmetric function as a polynomial dict (oracle)."""
    out = {}
    r = len(alpha)
    for idxs in itertools.combinations(range(nvars), r):
        expo = [0] * nvars
        for pos, part in zip(idxs, alpha):
            expo[pos] = part
        out[tuple(expo)] = out.get(tuple(expo), 0) + 1
    return out


def _poly_mul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def test_quasi_shuffle_against_power_series():
    # the product on the M basis agrees with truncated power-series products
    nvars = 4
    cases = []
    for d1 in range(1, 4):
        for d2 in range(1, 6 - d1):
            for a in compositions_of(d1):
                for b in compositions_of(d2):
                    cases.append((a, b))
    for a, b in cases:
        prod = product(term("QSym", "M", a), term("QSym", "M", b))
        lhs = {}
        for alpha, c in prod.coeffs.items():
            for expo, mult in _mono_eval(alpha.parts, nvars).items():
                lhs[expo] = lhs.get(expo, 0) + c * mult
        rhs = _poly_mul(_mono_eval(a.parts, nvars), _mono_eval(b.parts, nvars))
        assert {k: v for k, v in lhs.items() if v} == rhs


def test_product_associative_random():
    rng = random.Random(11)
    for _ in range(10):
        x = _random_element(rng, "NSym", "H", [1, 2])
        y = _random_element(rng, "NSym", "H", [1, 2])
        z = _random_element(rng, "NSym", "H", [1, 2])
        assert product(product(x, y), z) == product(x, product(y, z))
        u = _random_element(rng, "QSym", "M", [1, 2])
        v = _random_element(rng, "QSym", "M", [1, 2])
        w = _random_element(rng, "QSym", "M", [1, 2])
        assert product(product(u, v), w) == product(u, product(v, w))
        assert product(u, v) == product(v, u)


def test_peak_closed_under_product():
    for n1 in range(1, 4):
        for n2 in range(1, 4):
            for P1 in peak_sets_in(n1):
                for P2 in peak_sets_in(n2):
                    prod = product(
                        term("Peak", "Xi", P1), term("Peak", "Xi", P2)
                    )
                    assert prod.algebra == "Peak"
                    kprod = product(
                        term("PeakDual", "K", P1), term("PeakDual", "K", P2)
                    )
                    assert kprod.algebra == "PeakDual"


# ---------------------------------------------------------------------------
# coproducts
# ---------------------------------------------------------------------------


def test_coproduct_examples():
    t = coproduct(H(2))
    expected = {
        (C(), C(2)): Fraction(1),
        (C(1), C(1)): Fraction(1),
        (C(2), C()): Fraction(1),
    }
    assert t.coeffs == expected
    t = coproduct(M(2, 1))
    assert t.coeffs == {
        (C(), C(2, 1)): Fraction(1),
        (C(2,), C(1,)): Fraction(1),
        (C(2, 1), C()): Fraction(1),
    }
    u = unit("NSym", "H")
    t = coproduct(u)
    assert t.coeffs == {(C(), C()): Fraction(1)}
    assert counit(u) == 1
    assert counit(H(2)) == 0


def test_coproduct_coassociative():
    rng = random.Random(5)
    for algebra, basis in [("NSym", "H"), ("QSym", "M"), ("QSym", "F"), ("NSym", "R")]:
        for _ in range(5):
            x = _random_element(rng, algebra, basis, [1, 2, 3])
            t = coproduct(x)
            left = {}
            right = {}
            for (a, b), c in t.coeffs.items():
                ta = coproduct(term(algebra, t.basis, a))
                for (a1, a2), c2 in ta.coeffs.items():
                    key = (a1, a2, b)
                    left[key] = left.get(key, Fraction(0)) + c * c2
                tb = coproduct(term(algebra, t.basis, b))
                for (b1, b2), c2 in tb.coeffs.items():
                    key = (a, b1, b2)
                    right[key] = right.get(key, Fraction(0)) + c * c2
            assert {k: v for k, v in left.items() if v} == {
                k: v for k, v in right.items() if v
            }


def test_coproduct_algebra_morphism():
    rng = random.Random(23)
    for algebra, basis in [
        ("NSym", "H"),
        ("QSym", "M"),
        ("Peak", "Xi"),
        ("PeakDual", "K"),
        ("Sym", "h"),
        ("Omega", "podd"),
    ]:
        for _ in range(4):
            if basis == "Xi":
                keys = [P for n in (1, 2, 3) for P in peak_sets_in(n)]
                x = term(algebra, basis, rng.choice(keys), rng.randint(1, 3))
                y = term(algebra, basis, rng.choice(keys), rng.randint(-3, -1))
            elif basis == "K":
                keys = [P for n in (1, 2, 3) for P in peak_sets_in(n)]
                x = term(algebra, basis, rng.choice(keys), rng.randint(1, 3))
                y = term(algebra, basis, rng.choice(keys), rng.randint(1, 2))
            elif algebra in ("Sym", "Omega"):
                parts = [(1,), (2, 1), (3,)] if algebra == "Sym" else [(1,), (3,), (1, 1)]
                x = term(algebra, basis, rng.choice(parts), rng.randint(1, 3))
                y = term(algebra, basis, rng.choice(parts), rng.randint(1, 3))
            else:
                x = _random_element(rng, algebra, basis, [1, 2])
                y = _random_element(rng, algebra, basis, [1, 2])
            lhs = coproduct(product(x, y))
            rhs = coproduct(x).product(coproduct(y))
            assert lhs == rhs


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------


def test_pairing_examples():
    assert pairing(H(2, 1), M(2, 1)) == 1
    assert pairing(R(2), F(1, 1)) == 0
    assert pairing(H(1, 1), F(2)) == 1
    # <R_a, F_b> = delta in every degree <= 5
    for n in range(1, 6):
        for a in compositions_of(n):
            for b in compositions_of(n):
                assert pairing(R(*a.parts), F(*b.parts)) == (1 if a == b else 0)


def test_pairing_basis_independent():
    rng = random.Random(3)
    for _ in range(20):
        x = _random_element(rng, "NSym", "H", [1, 2, 3])
        y = _random_element(rng, "QSym", "M", [1, 2, 3])
        v = pairing(x, y)
        assert pairing(convert(x, "R"), convert(y, "F")) == v
        assert pairing(convert(x, "E"), y) == v


def test_peak_pairing():
    assert peak_pairing(Xi(3), K(3, 2)) == 0
    q1 = convert(Q(1), "Xi", "Peak")
    assert peak_pairing(q1, K(1)) == 2
    for n in range(1, 7):
        for P in peak_sets_in(n):
            for Qs in peak_sets_in(n):
                assert peak_pairing(term("Peak", "Xi", P), term("PeakDual", "K", Qs)) == (
                    1 if P == Qs else 0
                )


def test_duality_chain():
    # <Theta(F), f> = <F, vartheta(f)> = [Theta(F), vartheta(f)]
    for n in range(1, 6):
        for a in compositions_of(n):
            for b in compositions_of(n):
                big_f = R(*a.parts)
                small_f = F(*b.parts)
                lhs = pairing(convert(theta_transform(big_f), "H", "NSym"), small_f)
                mid = pairing(big_f, convert(vartheta_map(small_f), "F", "QSym"))
                rhs = peak_pairing(theta_transform(big_f), vartheta_map(small_f))
                assert lhs == mid == rhs


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


def test_theta_transform_examples():
    assert theta_transform(R(2)) == 2 * Xi(2)
    assert theta_transform(R(1, 1)) == 2 * Xi(2)
    x = theta_transform(H(1, 1, 1))
    assert convert(x, "H", "NSym") == 8 * H(1, 1, 1)


def test_theta_ribbon_formula():
    # Theta(R_alpha) = sum over peak sets P inside D(alpha) triangle (D+1)
    # of 2^(|P|+1) Xi_P
    for n in range(1, 7):
        for a in compositions_of(n):
            image = theta_transform(R(*a.parts))
            window = symmetric_difference_shift(a.descent_set())
            expected = FreeElement.zero("Peak", "Xi")
            for P in peak_sets_in(n):
                if P.elements <= window:
                    expected = expected + term(
                        "Peak", "Xi", P, 2 ** (len(P.elements) + 1)
                    )
            assert image == expected


def test_vartheta_examples():
    # P((2,1)) = {2} (its descent class {132, 231} has the literal peak at 2)
    # while P((1,2)) is empty
    assert vartheta_map(F(2, 1)) == K(3, 2)
    assert vartheta_map(F(1, 2)) == K(3)
    assert vartheta_map(F(3)) == K(3)
    assert vartheta_map(M(1)) == K(1)


def test_pi_theta_examples():
    assert forgetful_pi(H(2, 1)) == h(2, 1)
    assert theta_sym(p(2)) == FreeElement.zero("Omega", "podd")
    assert theta_sym(p(3)) == 2 * term("Omega", "podd", (3,))
    q1 = theta_sym(h(1))
    assert q1 == convert(term("Omega", "q", (1,)), "podd")


def test_square_diagram_commutes():
    # pi(Theta(x)) = theta(pi(x)) checked in the power-sum basis, on the
    # generators and on 200 random elements of degree at most 6
    rng = random.Random(77)
    elements = [H(n) for n in range(1, 7)]
    for _ in range(200):
        elements.append(_random_element(rng, "NSym", "H", [1, 2, 3, 4, 5, 6]))
    for x in elements:
        lhs = convert(forgetful_pi(convert(theta_transform(x), "H", "NSym")), "p")
        rhs = convert(convert(theta_sym(forgetful_pi(x)), "p", "Sym"), "p")
        assert lhs == rhs


def test_vartheta_restricted_to_sym_is_theta():
    for lam in [(1,), (2,), (2, 1), (3,), (1, 1, 1), (3, 1)]:
        g = term("Sym", "h", lam)
        lhs = vartheta_map(convert(sym_into_qsym(g), "F", "QSym"))
        rhs = omega_into_peakdual(theta_sym(g))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# peak functions
# ---------------------------------------------------------------------------


def test_k_expansion_examples():
    f, m = k_expansions(PS(2))
    assert f == 2 * F(2) + 2 * F(1, 1)
    # derived from the definition: only (2,1) and (1,2) have 2 in D triangle (D+1)
    f, m = k_expansions(PS(3, 2))
    assert f == 4 * F(2, 1) + 4 * F(1, 2)
    assert m == 4 * M(2, 1) + 4 * M(1, 2) + 8 * M(1, 1, 1)
    f, m = k_expansions(PS(1))
    assert f == 2 * F(1) and m == 2 * M(1)


def test_k_expansions_agree():
    for n in range(1, 9):
        for P in peak_sets_in(n):
            f, m = k_expansions(P)
            assert convert(m, "F") == f
    # K_{empty_n} = q_n = 2 sum_alpha F_alpha
    for n in range(1, 9):
        f, m = k_expansions(PeakSet(n, frozenset()))
        total = FreeElement.zero("QSym", "F")
        for a in compositions_of(n):
            total = total + term("QSym", "F", a, 2)
        assert f == total
        qn = omega_into_peakdual(theta_sym(h(n)))
        assert qn == term("PeakDual", "K", PeakSet(n, frozenset()))


def test_peak_dims():
    # dim Peak_n = dim PeakDual_n = number of peak sets (perfect pairing)
    for n in range(1, 9):
        xs = [convert(term("Peak", "Xi", P), "R", "NSym") for P in peak_sets_in(n)]
        assert graded_rank(xs, n) == len(peak_sets_in(n))
        ys = [convert(term("PeakDual", "K", P), "F", "QSym") for P in peak_sets_in(n)]
        assert graded_rank(ys, n) == len(peak_sets_in(n))


# ---------------------------------------------------------------------------
# inner product on the q-generated ring
# ---------------------------------------------------------------------------


def test_omega_inner_product():
    p1 = term("Omega", "podd", (1,))
    p3 = term("Omega", "podd", (3,))
    p11 = term("Omega", "podd", (1, 1))
    assert omega_inner_product(p1, p1) == Fraction(1, 2)
    assert omega_inner_product(p3, p1) == 0
    assert omega_inner_product(p11, p11) == Fraction(1, 2)
    assert omega_inner_product(p3, p3) == Fraction(3, 2)
    with pytest.raises(MembershipError):
        omega_inner_product(convert(p(2), "p"), p1)


def test_graded_rank_examples():
    assert graded_rank([H(2), H(1, 1)], 2) == 2
    q2 = convert(Q(2), "H")
    assert graded_rank([q2, H(1, 1)], 2) == 1
    assert graded_rank([], 2) == 0


# ---------------------------------------------------------------------------
# Euler relations and the generator identity (small degrees; acceptance
# re-runs them at the full stated bounds)
# ---------------------------------------------------------------------------


def test_euler_relations_small():
    for n in range(1, 7):
        total = FreeElement.zero("NSym", "H")
        for r in range(0, n + 1):
            qr = convert(Q(*([r] if r else [])), "H") if r else unit("NSym", "H")
            qs = convert(Q(*([n - r] if n - r else [])), "H") if n - r else unit(
                "NSym", "H"
            )
            total = total + product(qr, qs).scale((-1) ** r)
        assert not total


def test_generator_ribbon_identity_small():
    for n in range(1, 7):
        rhs = FreeElement.zero("NSym", "R")
        for k in range(n):
            rhs = rhs + term("NSym", "R", C(*([1] * k + [n - k])), 2)
        assert convert(Q(n), "R") == rhs


def test_gessel_formula_small():
    # <R_beta, r_alpha> equals the double-descent-class count
    for n in range(1, 6):
        comps = compositions_of(n)
        classes = {a: {w.word for w in descent_class(a)} for a in comps}
        inv_class = {}
        for a, ws in classes.items():
            for w in ws:
                inv_class[w] = a
        for a in comps:
            r_a = sym_into_qsym(forgetful_pi(R(*a.parts)))
            for b in comps:
                count = 0
                from peakhc.combinat import word_inverse

                for w in classes[a]:
                    if inv_class[word_inverse(w)] == b:
                        count += 1
                assert pairing(R(*b.parts), r_a) == count


def test_strict_partition_dims():
    # dim Omega_n = number of strict partitions; q-monomials on strict
    # partitions span exactly
    for n in range(1, 9):
        qs = [
            convert(term("Omega", "q", lam), "podd")
            for lam in strict_partitions_of(n)
        ]
        assert graded_rank(qs, n) == len(strict_partitions_of(n))
