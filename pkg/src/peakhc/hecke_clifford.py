"""The 0-Hecke-Clifford superalgebra: normal forms, trace form, involutions.

The rank-n algebra is generated by even T_1..T_{n-1} and odd c_1..c_n with

    T_i^2 = -T_i,  braid and distant-commutation relations among the T_i,
    c_j^2 = -1,    c_i c_j = -c_j c_i  (i != j),

and the cross relations

    T_i c_j = c_j T_i (j != i, i+1),   T_i c_i = c_{i+1} T_i,
    (T_i + 1) c_{i+1} = c_i (T_i + 1).

Elements are kept in the normal form  sum  coeff * c_D T_w  with D a subset
of [n] (c's in increasing index order, to the left of the T's) and w given
by any reduced word; coefficients are Gaussian rationals.  Multiplication
rewrites a single generator at a time:

    T_i c_D = c_D T_i                                    (i, i+1 not in D)
            = c_{D-i+(i+1)} T_i                          (i in D only)
            = c_{D-(i+1)+i} (T_i + 1) - c_D              (i+1 in D only)
            = -c_D (T_i + 1) + c_{D - {i, i+1}}          (both in D)

together with the left Demazure rule T_i T_w = T_{s_i w} or -T_w.  The
structure constants are integers; we keep Gaussian-rational coefficients so
idempotent computations downstream need no ring change.

The canonical basis order is (|D|, bitmask of D, one-line word); all
matrices produced here follow it.
"""

from __future__ import annotations

from functools import lru_cache

from .combinat import (
    Permutation,
    ResourceLimitError,
    swap_values,
    word_inverse,
    word_reduced,
)
from .linalg import SparseMatrix
from .scalars import GAUSS_ONE, GaussianRational, as_gauss

__all__ = [
    "RankMismatchError",
    "AlgebraElement",
    "unit",
    "gen_T",
    "gen_c",
    "basis_element",
    "algebra_basis",
    "multiply",
    "trace",
    "frobenius_form",
    "frobenius_gram",
    "leading_term_check",
    "apply_morphism",
    "morphism_matrix",
    "regular_generator_matrix",
    "regular_action_matrix",
    "MORPHISM_TAGS",
]

MORPHISM_TAGS = ("phi", "phi_prime", "psi", "psi_prime", "phi_bar")
_ANTI_TAGS = frozenset({"psi", "psi_prime"})

MAX_REGULAR_N = 5


class RankMismatchError(ValueError):
    """Operands of an algebra operation have different ranks."""


class AlgebraElement:
    """A normal-form element of the rank-n 0-Hecke-Clifford algebra.

    ``terms`` maps (D: frozenset, w: one-line tuple) to a GaussianRational.
    Instances are immutable by convention.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        for (d, w), c in (terms or {}).items():
            c = as_gauss(c)
            if c:
                clean[(frozenset(d), tuple(w))] = c
        self.terms = clean

    def _make(self, terms) -> "AlgebraElement":
        out = AlgebraElement.__new__(AlgebraElement)
        out.rank = self.rank
        out.terms = {k: v for k, v in terms.items() if v}
        return out

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.rank != other.rank:
            raise RankMismatchError("ranks %d and %d" % (self.rank, other.rank))
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._make(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        c = as_gauss(c)
        if not c:
            return self._make({})
        return self._make({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """0 or 1 for a homogeneous element, None for a mixed one."""
        seen = {len(d) % 2 for (d, _w) in self.terms}
        if not seen:
            return 0
        if len(seen) == 1:
            return seen.pop()
        return None

    def terms_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (d, w), c in self.terms_sorted():
            body = []
            if d:
                body.append("c{%s}" % ",".join(str(x) for x in sorted(d)))
            if w != tuple(range(1, self.rank + 1)):
                body.append("T[%s]" % ",".join(str(x) for x in w))
            name = "*".join(body) if body else "1"
            cs = str(c)
            if cs == "1":
                bits.append(name)
            elif cs == "-1":
                bits.append("-" + name)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = "(%s)" % cs
                bits.append("%s*%s" % (cs, name))
        out = bits[0]
        for s in bits[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    __repr__ = __str__


def _term_key(key):
    d, w = key
    return (len(d), sum(1 << (x - 1) for x in d), w)


def unit(n: int) -> AlgebraElement:
    return AlgebraElement(n, {(frozenset(), tuple(range(1, n + 1))): GAUSS_ONE})


def gen_T(i: int, n: int) -> AlgebraElement:
    if not 1 <= i <= n - 1:
        raise ValueError("T_%d is not a generator at rank %d" % (i, n))
    w = swap_values(i, tuple(range(1, n + 1)))
    return AlgebraElement(n, {(frozenset(), w): GAUSS_ONE})


def gen_c(j: int, n: int) -> AlgebraElement:
    if not 1 <= j <= n:
        raise ValueError("c_%d is not a generator at rank %d" % (j, n))
    return AlgebraElement(n, {(frozenset({j}), tuple(range(1, n + 1))): GAUSS_ONE})


def basis_element(d, w, n: int) -> AlgebraElement:
    return AlgebraElement(n, {(frozenset(d), tuple(w)): GAUSS_ONE})


@lru_cache(maxsize=None)
def algebra_basis(n: int) -> tuple:
    """Canonical ordered basis (D, w) of the rank-n algebra: 2^n n! keys."""
    import itertools

    subsets = []
    for mask in range(1 << n):
        subsets.append(frozenset(i + 1 for i in range(n) if mask >> i & 1))
    subsets.sort(key=lambda d: (len(d), sum(1 << (x - 1) for x in d)))
    perms = sorted(itertools.permutations(range(1, n + 1)))
    return tuple((d, w) for d in subsets for w in perms)


# ---------------------------------------------------------------------------
# normal-form multiplication
# ---------------------------------------------------------------------------


def _left_mul_c(j: int, terms: dict) -> dict:
    out = {}
    for (d, w), c in terms.items():
        below = sum(1 for x in d if x < j)
        if j in d:
            key = (d - {j}, w)
            val = -c if below % 2 == 0 else c
        else:
            key = (d | {j}, w)
            val = c if below % 2 == 0 else -c
        s = out.get(key)
        s = val if s is None else s + val
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _demazure_add(out: dict, d: frozenset, i: int, w: tuple, c) -> None:
    """out += c * c_d T_i T_w, resolving T_i T_w by the left Demazure rule.

    l(s_i w) > l(w) iff i occurs before i+1 in w, i.e. w^{-1}(i) < w^{-1}(i+1).
    """
    wi = word_inverse(w)
    if wi[i - 1] < wi[i]:
        key = (d, swap_values(i, w))
        val = c
    else:
        key = (d, w)
        val = -c
    s = out.get(key)
    s = val if s is None else s + val
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _plain_add(out: dict, key, val) -> None:
    s = out.get(key)
    s = val if s is None else s + val
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _left_mul_T(i: int, terms: dict) -> dict:
    out = {}
    for (d, w), c in terms.items():
        has_i = i in d
        has_i1 = (i + 1) in d
        if not has_i and not has_i1:
            _demazure_add(out, d, i, w, c)
        elif has_i and not has_i1:
            _demazure_add(out, (d - {i}) | {i + 1}, i, w, c)
        elif not has_i and has_i1:
            d2 = (d - {i + 1}) | {i}
            _demazure_add(out, d2, i, w, c)
            _plain_add(out, (d2, w), c)
            _plain_add(out, (d, w), -c)
        else:
            _demazure_add(out, d, i, w, -c)
            _plain_add(out, (d, w), -c)
            _plain_add(out, (d - {i, i + 1}, w), c)
    return out


def _left_mul_basis(d: frozenset, w: tuple, terms: dict) -> dict:
    """(c_d T_w) * element, element given as a term dict."""
    cur = terms
    for i in reversed(word_reduced(w)):
        cur = _left_mul_T(i, cur)
    for j in sorted(d, reverse=True):
        cur = _left_mul_c(j, cur)
    return cur


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.rank != b.rank:
        raise RankMismatchError("ranks %d and %d" % (a.rank, b.rank))
    out: dict = {}
    for (d, w), ca in a.terms.items():
        piece = _left_mul_basis(d, w, b.terms)
        for key, v in piece.items():
            s = out.get(key)
            s = v * ca if s is None else s + v * ca
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return AlgebraElement(a.rank, out)


# ---------------------------------------------------------------------------
# trace and Frobenius form
# ---------------------------------------------------------------------------


def trace(a: AlgebraElement) -> GaussianRational:
    """tr(c_D T_w) = 1 exactly on D = empty, w = longest element."""
    w0 = tuple(range(a.rank, 0, -1))
    return a.terms.get((frozenset(), w0), GaussianRational(0))


def frobenius_form(a: AlgebraElement, b: AlgebraElement) -> GaussianRational:
    return trace(multiply(a, b))


@lru_cache(maxsize=None)
def regular_generator_matrix(kind: str, idx: int, n: int) -> SparseMatrix:
    """Left-regular matrix of T_idx / c_idx in the canonical basis order."""
    basis = algebra_basis(n)
    pos = {key: k for k, key in enumerate(basis)}
    dim = len(basis)
    mat = SparseMatrix(dim, dim)
    for col, (d, w) in enumerate(basis):
        terms = {(d, w): GAUSS_ONE}
        if kind == "T":
            image = _left_mul_T(idx, terms)
        elif kind == "c":
            image = _left_mul_c(idx, terms)
        else:
            raise ValueError("unknown generator kind %r" % kind)
        for key, v in image.items():
            mat.cols[col][pos[key]] = v
    return mat


def regular_action_matrix(gen, n: int) -> SparseMatrix:
    """Left-regular matrix of a generator key ("T", i) / ("c", j) or element.

    Guarded at n <= MAX_REGULAR_N (the regular module has dimension 2^n n!).
    """
    if n > MAX_REGULAR_N:
        raise ResourceLimitError(
            "regular representation of rank %d exceeds the guard %d" % (n, MAX_REGULAR_N)
        )
    if isinstance(gen, tuple) and len(gen) == 2 and gen[0] in ("T", "c"):
        return regular_generator_matrix(gen[0], gen[1], n)
    if isinstance(gen, AlgebraElement):
        basis = algebra_basis(n)
        pos = {key: k for k, key in enumerate(basis)}
        dim = len(basis)
        mat = SparseMatrix(dim, dim)
        for col, (d, w) in enumerate(basis):
            image = multiply(gen, basis_element(d, w, n))
            for key, v in image.terms.items():
                mat.cols[col][pos[key]] = v
        return mat
    raise TypeError("gen must be ('T', i), ('c', j) or an AlgebraElement")


def frobenius_gram(n: int) -> SparseMatrix:
    """Gram matrix of the trace form on the canonical basis.

    Row i is the w0-row of the left-regular matrix of the i-th basis element,
    computed by propagating a single row vector through the generator
    matrices (cheap: the generator matrices are very sparse).
    """
    basis = algebra_basis(n)
    pos = {key: k for k, key in enumerate(basis)}
    dim = len(basis)
    w0row = pos[(frozenset(), tuple(range(n, 0, -1)))]
    gram = SparseMatrix(dim, dim)
    for i, (d, w) in enumerate(basis):
        vec = {w0row: GAUSS_ONE}
        # row of regular(c_d T_w): multiply e_{w0}^T by the generator factors
        # left-to-right: c_{d asc} then T-letters of the reduced word
        for j in sorted(d):
            vec = regular_generator_matrix("c", j, n).apply_transpose(vec)
        for letter in word_reduced(w):
            vec = regular_generator_matrix("T", letter, n).apply_transpose(vec)
        for jcol, v in vec.items():
            gram.cols[jcol][i] = v
    return gram


def leading_term_check(w: Permutation, d) -> tuple:
    """Leading datum of T_w c_D: the sign (-1)^(inversions of w inside D)
    and the image set w(D); the remaining terms of the product are strictly
    shorter (Bruhat-lower at desk scale)."""
    dset = sorted(d)
    inv = 0
    for a in range(len(dset)):
        for b in range(a + 1, len(dset)):
            if w(dset[a]) > w(dset[b]):
                inv += 1
    return ((-1) ** inv, frozenset(w(x) for x in dset))


# ---------------------------------------------------------------------------
# (anti-)involutions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _morphism_generator_images(tag: str, n: int) -> dict:
    """Images of T_i and c_j under the named (anti-)involution."""
    if tag not in MORPHISM_TAGS:
        raise ValueError("unknown morphism tag %r" % tag)
    images = {}
    for i in range(1, n):
        if tag == "phi":
            img = gen_T(n - i, n) + multiply(gen_c(n - i, n), gen_c(n + 1 - i, n))
        elif tag == "phi_prime":
            img = (gen_T(n - i, n) + unit(n)).scale(-1)
        elif tag == "psi":
            img = gen_T(i, n) + multiply(gen_c(i, n), gen_c(i + 1, n))
        elif tag == "psi_prime":
            img = (gen_T(i, n) + unit(n)).scale(-1)
        else:  # phi_bar
            img = gen_T(n - i, n)
        images[("T", i)] = img
    for j in range(1, n + 1):
        if tag in ("phi", "phi_prime"):
            images[("c", j)] = gen_c(n + 1 - j, n).scale(-1)
        elif tag in ("psi", "psi_prime"):
            images[("c", j)] = gen_c(j, n).scale(-1)
        else:  # phi_bar is only defined on the Hecke subalgebra
            images[("c", j)] = None
    return images


def apply_morphism(tag: str, a: AlgebraElement) -> AlgebraElement:
    """Apply one of the structural (anti-)involutions.

    phi, phi_prime are algebra involutions; psi, psi_prime are unsigned
    anti-involutions (nu(ab) = nu(b) nu(a)); phi_bar fixes the 0-Hecke
    subalgebra (T_i -> T_{n-i}) and rejects elements with a Clifford part.
    """
    n = a.rank
    images = _morphism_generator_images(tag, n)
    anti = tag in _ANTI_TAGS
    out = AlgebraElement(n, {})
    for (d, w), coeff in a.terms.items():
        if tag == "phi_bar" and d:
            raise ValueError("phi_bar is defined on the Hecke subalgebra only")
        cs = sorted(d)
        ts = list(word_reduced(w))
        if anti:
            factors = [images[("T", i)] for i in reversed(ts)]
            factors += [images[("c", j)] for j in reversed(cs)]
        else:
            factors = [images[("c", j)] for j in cs]
            factors += [images[("T", i)] for i in ts]
        acc = unit(n)
        for f in factors:
            acc = multiply(acc, f)
        out = out + acc.scale(coeff)
    return out


@lru_cache(maxsize=None)
def morphism_matrix(tag: str, n: int) -> SparseMatrix:
    """Matrix of the named morphism in the canonical basis order."""
    basis = algebra_basis(n)
    pos = {key: k for k, key in enumerate(basis)}
    dim = len(basis)
    mat = SparseMatrix(dim, dim)
    for col, (d, w) in enumerate(basis):
        img = apply_morphism(tag, basis_element(d, w, n))
        for key, v in img.terms.items():
            mat.cols[col][pos[key]] = v
    return mat
