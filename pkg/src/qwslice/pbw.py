"""Exact arithmetic in quantized enveloping algebras.

Elements are kept in a two-sided sandwich form: words in the positive
generators on the left, a torus monomial in the middle, words in the
negative generators on the right.  Only the torus and cross commutation
relations are applied eagerly; the Serre relations are handled through a
quantum shuffle zero test, which doubles as the change of basis into the
PBW monomials attached to a normal ordering of the positive system.

The shuffle test is faithful over the rational function field only.  At a
primitive odd root of unity the sandwich arithmetic and the braid
operators remain exact, but zero tests and PBW conversion specialize the
generic structure constants, which are Laurent in q.

Generator indices are 0-based throughout this module.  Reduced words
produced by rootsys use 1-based letters and are shifted once on entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from . import linalg
from .coeffs import (
    Cyclo,
    LaurentQ,
    RationalQ,
    q_binomial,
    q_factorial,
    q_int,
    specialize,
)
from .rootsys import (
    NormalOrdering,
    Root,
    RootSystem,
    longest_element,
    ordering_from_word,
    word_from_ordering,
)


class PBWError(ValueError):
    """Raised for inputs outside the engine's contracts."""


# A sandwich monomial: (positive word, torus exponent vector, negative word).
Term = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


# ---------------------------------------------------------------------------
# coefficient domain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarRing:
    """The coefficient domain: rational functions in q when m is None,
    the cyclotomic field Q(eps) at a primitive m-th root of unity otherwise."""

    m: int | None = None

    @property
    def generic(self) -> bool:
        return self.m is None

    def zero(self):
        return RationalQ(0) if self.m is None else Cyclo.zero(self.m)

    def one(self):
        return RationalQ(1) if self.m is None else Cyclo.one(self.m)

    def from_int(self, n: Union[int, Fraction]):
        return RationalQ(n) if self.m is None else Cyclo(self.m, n)

    def q_power(self, e: int):
        """q^e, or eps^e after specialization."""
        if self.m is None:
            return RationalQ(LaurentQ.q_power(e))
        return Cyclo.root(self.m, e)

    def from_laurent(self, p: LaurentQ):
        return RationalQ(p) if self.m is None else specialize(p, self.m)

    def gauss_int(self, n: int, d: int = 1):
        return self.from_laurent(q_int(n, d))

    def gauss_factorial(self, n: int, d: int = 1):
        return self.from_laurent(q_factorial(n, d))

    def invert(self, x):
        return x.inverse()


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def _acc(out: dict, key, c) -> None:
    prev = out.get(key)
    total = c if prev is None else prev + c
    if total:
        out[key] = total
    elif prev is not None:
        del out[key]


class Element:
    """A finite linear combination of sandwich monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "Algebra", terms: Mapping[Term, object]):
        self.alg = alg
        self.terms = dict(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Element(self.alg, out)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return Element(self.alg, out)

    def __neg__(self) -> "Element":
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Element":
        out = {}
        for k, v in self.terms.items():
            _acc(out, k, v * c)
        return Element(self.alg, out)

    def __eq__(self, other: object) -> bool:
        # structural equality of sandwich forms; algebra equality needs
        # Algebra.equal, which works modulo the Serre relations.
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Element is mutable-by-convention and unhashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "Element(0)"
        bits = []
        for (p, s, m), c in sorted(self.terms.items()):
            bits.append(f"({c})*E{list(p)}*L{list(s)}*F{list(m)}")
        return " + ".join(bits)

    def _check(self, other: "Element") -> None:
        if self.alg is not other.alg:
            raise PBWError("elements live in different algebras")


# ---------------------------------------------------------------------------
# the algebra engine
# ---------------------------------------------------------------------------

class Algebra:
    """Computation in the simply connected quantized enveloping algebra of a
    root system, generically in q or at a primitive odd root of unity.

    The sandwich arithmetic and the braid operators are exact in both
    settings.  The shuffle zero test and everything built on it is faithful
    only generically, so root-of-unity contexts obtain their PBW data by
    specializing the generic structure constants, which are Laurent."""

    def __init__(self, rs: RootSystem, m: int | None = None):
        self.rs = rs
        self.ring = ScalarRing(m)
        l = rs.rank
        self.zero_svec = (0,) * l
        # K_i = prod_j L_j^{a_ji}: column i of the Cartan matrix.
        self.kvecs = tuple(
            tuple(rs.a[j][i] for j in range(l)) for i in range(l)
        )
        self._inv_qdiff = tuple(
            self.ring.invert(self.ring.q_power(d) - self.ring.q_power(-d))
            for d in rs.d
        )
        self._move_cache: dict = {}
        self._shuffle_cache: dict = {(): {(): self.ring.one()}}
        self._braid_word_cache: dict = {}
        self._rv_cache: dict = {}
        self._ctx_cache: dict = {}
        self._default_ctx: "PBWContext | None" = None

    # -- constructors -------------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {((), self.zero_svec, ()): self.ring.one()})

    def from_scalar(self, c) -> Element:
        return Element(self, {((), self.zero_svec, ()): c} if c else {})

    def x_plus(self, i: int) -> Element:
        return Element(self, {((i,), self.zero_svec, ()): self.ring.one()})

    def x_minus(self, i: int) -> Element:
        return Element(self, {((), self.zero_svec, (i,)): self.ring.one()})

    def l_monomial(self, svec: Iterable[int]) -> Element:
        return Element(self, {((), tuple(svec), ()): self.ring.one()})

    def k_svec(self, beta: Root) -> tuple[int, ...]:
        """Exponent vector of K_beta = prod_i K_i^{c_i} for beta = sum c_i alpha_i."""
        l = self.rs.rank
        out = [0] * l
        for i, ci in enumerate(beta):
            if ci:
                for j in range(l):
                    out[j] += ci * self.kvecs[i][j]
        return tuple(out)

    def word_weight(self, word: tuple[int, ...]) -> Root:
        out = [0] * self.rs.rank
        for i in word:
            out[i] += 1
        return tuple(out)

    # -- multiplication -------------------------------------------------------

    def multiply(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for (p1, s1, m1), c1 in x.terms.items():
            for (p2, s2, m2), c2 in y.terms.items():
                c = c1 * c2
                for (pc, sc, mc), cc in self._cross(m1, p2).items():
                    # L^{s1} past the plus letters freed by the cross move,
                    # L^{s2} past the surviving minus letters.
                    e = sum(self.rs.d[j] * s1[j] for j in pc)
                    e += sum(self.rs.d[j] * s2[j] for j in mc)
                    svec = tuple(
                        a + b + cber for a, b, cber in zip(s1, sc, s2)
                    )
                    _acc(
                        out,
                        (p1 + pc, svec, mc + m2),
                        c * cc * self.ring.q_power(e),
                    )
        return Element(self, out)

    def _move(self, mword: tuple[int, ...], i: int) -> dict:
        """Terms of X^-_{mword} X_i^+ in sandwich form."""
        key = (mword, i)
        cached = self._move_cache.get(key)
        if cached is not None:
            return cached
        if not mword:
            out = {((i,), self.zero_svec, ()): self.ring.one()}
        else:
            head, j = mword[:-1], mword[-1]
            out: dict = {}
            for (p, s, mm), c in self._move(head, i).items():
                _acc(out, (p, s, mm + (j,)), c)
            if i == j:
                # - (K_i - K_i^{-1})/(q_i - q_i^{-1}) commuted left past head
                e = sum(self.rs.b[i][t] for t in head)
                kv = self.kvecs[i]
                nkv = tuple(-v for v in kv)
                inv = self._inv_qdiff[i]
                _acc(out, ((), kv, head), -(self.ring.q_power(e) * inv))
                _acc(out, ((), nkv, head), self.ring.q_power(-e) * inv)
        self._move_cache[key] = out
        return out

    def _cross(self, mword: tuple[int, ...], pword: tuple[int, ...]) -> dict:
        """Terms of X^-_{mword} X^+_{pword} in sandwich form."""
        out = {((), self.zero_svec, mword): self.ring.one()}
        for i in pword:
            nxt: dict = {}
            for (p, s, mm), c in out.items():
                for (p2, s2, m2), c2 in self._move(mm, i).items():
                    e = sum(self.rs.d[j] * s[j] for j in p2)
                    svec = tuple(a + b for a, b in zip(s, s2))
                    _acc(
                        nxt,
                        (p + p2, svec, m2),
                        c * c2 * self.ring.q_power(e),
                    )
            out = nxt
        return out

    # -- shuffle zero test ----------------------------------------------------

    def shuffle(self, word: tuple[int, ...]) -> dict:
        """Image of a generator word under the quantum shuffle embedding.

        Inserting a letter j before a suffix u picks up q^{(alpha_j, wt u)};
        with this convention the kernel of the linearly extended map is
        exactly the ideal of Serre relations, so it is a zero test for both
        the positive and the negative subalgebra.
        """
        cached = self._shuffle_cache.get(word)
        if cached is not None:
            return cached
        prev = self.shuffle(word[:-1])
        j = word[-1]
        out: dict = {}
        brow = self.rs.b[j]
        for u, c in prev.items():
            e = 0
            for k in range(len(u), -1, -1):
                _acc(out, u[:k] + (j,) + u[k:], c * self.ring.q_power(e))
                if k:
                    e += brow[u[k - 1]]
        self._shuffle_cache[word] = out
        return out

    def canonical(self, x: Element) -> dict:
        """Coordinates of x in the shuffle model; empty iff x = 0 in the
        quantized enveloping algebra.  Faithful only generically: at a
        root of unity the shuffle pairing degenerates, so zero tests there
        go through PBW coordinates instead."""
        if not self.ring.generic:
            raise PBWError(
                "shuffle coordinates are not faithful at a root of unity"
            )
        out: dict = {}
        for (p, s, m), c in x.terms.items():
            shp = self.shuffle(p)
            shm = self.shuffle(m)
            for pw, cp in shp.items():
                cpp = c * cp
                for mw, cm in shm.items():
                    _acc(out, (pw, s, mw), cpp * cm)
        return out

    def context(self, ordering: NormalOrdering) -> "PBWContext":
        """The cached PBW conversion context for one normal ordering."""
        key = ordering.roots
        ctx = self._ctx_cache.get(key)
        if ctx is None:
            ctx = PBWContext(self, ordering)
            self._ctx_cache[key] = ctx
        return ctx

    def default_context(self) -> "PBWContext":
        if self._default_ctx is None:
            word = longest_element(self.rs).word
            self._default_ctx = self.context(ordering_from_word(self.rs, word))
        return self._default_ctx

    def is_zero(self, x: Element) -> bool:
        if self.ring.generic:
            return not self.canonical(x)
        return not self.default_context().to_pbw(x).terms

    def equal(self, x: Element, y: Element) -> bool:
        return self.is_zero(x - y)

    def serre_element(self, sign: int, i: int, j: int) -> Element:
        """The (i, j) Serre relation in the positive (sign=+1) or negative
        (sign=-1) generators; zero in the algebra for i != j.

        Built with q-binomial coefficients on plain powers, so it stays
        defined at roots of unity where the Gaussian factorials vanish."""
        if i == j:
            raise PBWError("Serre relations need two distinct generators")
        n = 1 - self.rs.a[i][j]
        di = self.rs.d[i]
        out: dict = {}
        for r in range(n + 1):
            binom = self.ring.from_laurent(q_binomial(n, r, di))
            c = -binom if r % 2 else binom
            word = (i,) * (n - r) + (j,) + (i,) * r
            key = (word, self.zero_svec, ()) if sign > 0 else ((), self.zero_svec, word)
            _acc(out, key, c)
        return Element(self, out)

    # -- braid operators --------------------------------------------------------

    def _braid_gen(self, i: int, j: int, sign: int) -> dict:
        """Terms of T_i(X_j^+) (sign=+1) or T_i(X_j^-) (sign=-1)."""
        rs = self.rs
        if i == j:
            if sign > 0:
                # T_i(X_i^+) = -X_i^- K_i
                return {((), self.kvecs[i], (i,)): -self.ring.q_power(2 * rs.d[i])}
            # T_i(X_i^-) = -K_i^{-1} X_i^+
            nkv = tuple(-v for v in self.kvecs[i])
            return {((i,), nkv, ()): -self.ring.q_power(-2 * rs.d[i])}
        n = -rs.a[i][j]
        di = rs.d[i]
        out: dict = {}
        for r in range(n + 1):
            denom = self.ring.gauss_factorial(r, di) * self.ring.gauss_factorial(
                n - r, di
            )
            c = self.ring.q_power(-sign * r * di) * self.ring.invert(denom)
            if (r + n) % 2:
                c = -c
            if sign > 0:
                word = (i,) * (n - r) + (j,) + (i,) * r
                key = (word, self.zero_svec, ())
            else:
                word = (i,) * r + (j,) + (i,) * (n - r)
                key = ((), self.zero_svec, word)
            _acc(out, key, c)
        return out

    def _braid_word(self, i: int, word: tuple[int, ...], sign: int) -> Element:
        if not word:
            return self.one()
        key = (i, word, sign)
        cached = self._braid_word_cache.get(key)
        if cached is None:
            head = self._braid_word(i, word[:-1], sign)
            last = Element(self, self._braid_gen(i, word[-1], sign))
            cached = self.multiply(head, last)
            self._braid_word_cache[key] = cached
        return cached

    def braid_apply(self, i: int, x: Element) -> Element:
        """Lusztig braid operator T_i as an algebra map.

        On the torus T_i(L^s) = L^s K_i^{-s_i}, the twist that makes the
        defining relations map to relations.
        """
        out = self.zero()
        for (p, s, m), c in x.terms.items():
            img = self._braid_word(i, p, 1)
            svec = tuple(a - s[i] * b for a, b in zip(s, self.kvecs[i]))
            img = self.multiply(img, self.l_monomial(svec))
            img = self.multiply(img, self._braid_word(i, m, -1))
            out = out + img.scale(c)
        return out

    # -- root vectors -------------------------------------------------------------

    def root_vectors(self, ordering: NormalOrdering) -> "RootVectorTable":
        key = ordering.roots
        cached = self._rv_cache.get(key)
        if cached is not None:
            return cached
        word = ordering.source_word
        if word is None:
            word = word_from_ordering(self.rs, ordering.roots)
        letters = tuple(w - 1 for w in word)
        plus: list[Element] = []
        minus: list[Element] = []
        for k, root in enumerate(ordering.roots):
            ep = self.x_plus(letters[k])
            em = self.x_minus(letters[k])
            for t in reversed(letters[:k]):
                ep = self.braid_apply(t, ep)
                em = self.braid_apply(t, em)
            for el, side in ((ep, 1), (em, -1)):
                for (p, s, m) in el.terms:
                    wrd = p if side > 0 else m
                    if (p if side < 0 else m) or any(s):
                        raise PBWError(
                            f"root vector for {root} is not homogeneous"
                        )
                    if self.word_weight(wrd) != root:
                        raise PBWError(
                            f"root vector for {root} has wrong weight"
                        )
            plus.append(ep)
            minus.append(em)
        table = RootVectorTable(
            ordering=ordering,
            letters=letters,
            plus=tuple(plus),
            minus=tuple(minus),
            k_svecs=tuple(self.k_svec(r) for r in ordering.roots),
        )
        self._rv_cache[key] = table
        return table


@dataclass(frozen=True)
class RootVectorTable:
    """Root vectors X_{beta_k}^{+-} = T_{i_1}...T_{i_{k-1}}(X_{i_k}^{+-})
    for one normal ordering, plus the torus exponents of each K_beta."""

    ordering: NormalOrdering
    letters: tuple[int, ...]
    plus: tuple[Element, ...] = field(repr=False)
    minus: tuple[Element, ...] = field(repr=False)
    k_svecs: tuple[tuple[int, ...], ...] = field(repr=False)


_GENERIC_ALGEBRAS: dict = {}


def generic_algebra(rs: RootSystem) -> Algebra:
    """One shared generic-q algebra per root system instance, so that
    root-of-unity contexts can reuse its PBW structure constants."""
    alg = _GENERIC_ALGEBRAS.get(id(rs))
    if alg is None or alg.rs is not rs:
        alg = Algebra(rs, None)
        _GENERIC_ALGEBRAS[id(rs)] = alg
    return alg


# ---------------------------------------------------------------------------
# PBW coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PBWMonomial:
    """Exponents of (X^+)^r L^s (X^-)^t.

    The positive factors multiply in increasing ordering position, the
    negative ones in decreasing position, so t = e_a + e_b with a < b is
    the in-order product X_{beta_b}^- X_{beta_a}^-.
    """

    r: tuple[int, ...]
    s: tuple[int, ...]
    t: tuple[int, ...]


class PBWElement:
    """A linear combination of PBW monomials for a fixed context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: "PBWContext", terms: Mapping):
        self.ctx = ctx
        self.terms = dict(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "PBWElement") -> "PBWElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return PBWElement(self.ctx, out)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return PBWElement(self.ctx, out)

    def scale(self, c) -> "PBWElement":
        out = {}
        for k, v in self.terms.items():
            _acc(out, k, v * c)
        return PBWElement(self.ctx, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        raise TypeError("PBWElement is unhashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "PBWElement(0)"
        bits = []
        for (r, s, t), c in sorted(self.terms.items()):
            bits.append(f"({c})*E^{list(r)}*L^{list(s)}*F^{list(t)}")
        return " + ".join(bits)


def exponent_vectors(roots: tuple[Root, ...], weight: Root) -> list[tuple[int, ...]]:
    """All t >= 0 with sum t_k roots[k] = weight: the PBW monomials of a
    graded component, whose count is the Kostant partition number."""
    l = len(weight)
    out: list[tuple[int, ...]] = []

    def descend(k: int, rem: tuple[int, ...], acc: tuple[int, ...]) -> None:
        if not any(rem):
            out.append(acc + (0,) * (len(roots) - k))
            return
        if k == len(roots):
            return
        root = roots[k]
        top = min(
            (rem[i] // root[i] for i in range(l) if root[i]),
            default=0,
        )
        for e in range(top, -1, -1):
            nxt = tuple(rem[i] - e * root[i] for i in range(l))
            if all(v >= 0 for v in nxt):
                descend(k + 1, nxt, acc + (e,))

    descend(0, weight, ())
    return sorted(out)


@dataclass(frozen=True)
class LSRelation:
    """The straightening relation for an out-of-order pair of negative root
    vectors: X_alpha^- X_beta^- = q^{(alpha,beta)} X_beta^- X_alpha^- + lower

    ``between`` maps exponent vectors (plain powers, in PBW order) to their
    coefficients; ``between_divided`` renormalizes each monomial by the
    Gaussian factorials of its exponents."""

    alpha: Root
    beta: Root
    position_pair: tuple[int, int]
    pairing_exponent: int
    leading: object
    leading_ok: bool
    window_ok: bool
    between: dict
    between_divided: dict


class PBWContext:
    """Conversion between sandwich elements and PBW coordinates for one
    normal ordering, and the straightening data extracted from it.

    At a root of unity the context shadows a generic one and specializes
    its conversion coefficients: the structure constants of the integral
    form are Laurent in q, while solving directly at eps would run the
    shuffle test outside its faithful range."""

    def __init__(self, alg: Algebra, ordering: NormalOrdering):
        self.alg = alg
        self.ordering = ordering
        if alg.ring.generic:
            self._generic: "PBWContext | None" = None
            self.table = alg.root_vectors(ordering)
        else:
            self._generic = generic_algebra(alg.rs).context(ordering)
            gt = self._generic.table
            self.table = RootVectorTable(
                ordering=ordering,
                letters=gt.letters,
                plus=tuple(specialize_element(e, alg) for e in gt.plus),
                minus=tuple(specialize_element(e, alg) for e in gt.minus),
                k_svecs=gt.k_svecs,
            )
        self._mono_cache: dict = {1: {}, -1: {}}
        self._coords_cache: dict = {1: {}, -1: {}}
        self._component_cache: dict = {}
        self._relation_cache: dict = {}

    # -- PBW monomials as elements ------------------------------------------

    def monomial_element(self, sign: int, t: tuple[int, ...]) -> Element:
        cache = self._mono_cache[sign]
        cached = cache.get(t)
        if cached is not None:
            return cached
        active = [k for k, e in enumerate(t) if e]
        if not active:
            el = self.alg.one()
        elif sign > 0:
            # increasing position, rightmost factor at the largest index
            k = active[-1]
            head = t[:k] + (t[k] - 1,) + t[k + 1:]
            el = self.alg.multiply(
                self.monomial_element(sign, head), self.table.plus[k]
            )
        else:
            # decreasing position, rightmost factor at the smallest index
            k = active[0]
            head = t[:k] + (t[k] - 1,) + t[k + 1:]
            el = self.alg.multiply(
                self.monomial_element(sign, head), self.table.minus[k]
            )
        cache[t] = el
        return el

    def from_pbw(self, x: PBWElement) -> Element:
        out = self.alg.zero()
        for (r, s, t), c in x.terms.items():
            el = self.alg.multiply(
                self.monomial_element(1, r), self.alg.l_monomial(s)
            )
            el = self.alg.multiply(el, self.monomial_element(-1, t))
            out = out + el.scale(c)
        return out

    # -- coordinates ----------------------------------------------------------

    def _component(self, sign: int, weight: Root):
        """Shuffle images of all PBW monomials of one graded component."""
        key = (sign, weight)
        cached = self._component_cache.get(key)
        if cached is not None:
            return cached
        monos = exponent_vectors(self.ordering.roots, weight)
        columns = []
        row_keys: dict = {}
        for t in monos:
            el = self.monomial_element(sign, t)
            vec: dict = {}
            for (p, s, m), c in el.terms.items():
                w = p if sign > 0 else m
                for u, cu in self.alg.shuffle(w).items():
                    _acc(vec, u, c * cu)
            columns.append(vec)
            for u in vec:
                row_keys.setdefault(u, len(row_keys))
        cached = (monos, row_keys, columns)
        self._component_cache[key] = cached
        return cached

    def _solve_words(self, sign: int, words: Iterable[tuple[int, ...]]) -> None:
        """Fill the coordinate cache, one linear solve per graded component."""
        if self._generic is not None:
            raise PBWError("coordinate systems are solved generically")
        cache = self._coords_cache[sign]
        by_weight: dict = {}
        for w in words:
            if w and w not in cache:
                by_weight.setdefault(self.alg.word_weight(w), set()).add(w)
        for weight, batch in by_weight.items():
            batch = sorted(batch)
            monos, row_keys, columns = self._component(sign, weight)
            rhs_vecs = []
            for w in batch:
                vec = self.alg.shuffle(w)
                if any(u not in row_keys for u in vec):
                    raise PBWError("word leaves the span of its PBW component")
                rhs_vecs.append(vec)
            sols = None
            if len(row_keys) * len(monos) > 400:
                sols = self._interp_solve(monos, row_keys, columns, rhs_vecs)
            if sols is None:
                sols = self._echelon_solve(monos, row_keys, columns, rhs_vecs)
            for w, coords in zip(batch, sols):
                cache[w] = coords

    def _echelon_solve(self, monos, row_keys, columns, rhs_vecs) -> list[dict]:
        zero = self.alg.ring.zero()
        rows = [[zero] * len(monos) for _ in row_keys]
        for j, vec in enumerate(columns):
            for u, c in vec.items():
                rows[row_keys[u]][j] = c
        rhs = [[zero] * len(rhs_vecs) for _ in row_keys]
        for k, vec in enumerate(rhs_vecs):
            for u, cu in vec.items():
                rhs[row_keys[u]][k] = cu
        ech, pivots, aug = linalg.row_echelon(rows, rhs)
        if len(pivots) != len(monos):
            raise PBWError(
                "PBW monomials of one weight are linearly dependent"
            )
        for r in range(len(pivots), len(ech)):
            if any(aug[r]):
                raise PBWError("inconsistent PBW conversion system")
        return [
            {monos[r]: aug[r][k] for r in range(len(pivots)) if aug[r][k]}
            for k in range(len(rhs_vecs))
        ]

    def _interp_solve(self, monos, row_keys, columns, rhs_vecs) -> list[dict] | None:
        """Exact solve of a large component by evaluation and interpolation.

        The coordinates are Laurent in q, so solving the evaluated system
        at enough rational points and interpolating inside a degree window
        recovers them.  The window is estimated first from the growth of
        the solutions at large and small evaluation points, and the result
        is certified by recomputing the residual symbolically, which is
        cheap because true coordinates are short; a nonzero residual
        widens the window.  Returns None to fall back to the symbolic
        echelon when the data is not Laurent or the window cap is hit.
        """
        try:
            cols_l = [
                {u: c.as_laurent() for u, c in vec.items()} for vec in columns
            ]
            rhs_l = [
                {u: c.as_laurent() for u, c in vec.items()} for vec in rhs_vecs
            ]
        except ValueError:
            return None
        n_monos = len(monos)
        n_rhs = len(rhs_vecs)
        # plain-power coordinates are rational functions whose denominators
        # divide the Gaussian factorials of the exponents; the divided-power
        # coordinates c_j * facts_j are Laurent, and those are interpolated
        roots = self.ordering.roots
        facts = []
        for t in monos:
            f = LaurentQ(1)
            for k, e in enumerate(t):
                if e > 1:
                    f = f * q_factorial(e, self.alg.rs.d_root(roots[k]))
            facts.append(f)
        evals: dict = {}
        inconsistent = False

        def solved_at(t: Fraction):
            """Unique solution vectors at q = t, or None off the generic rank."""
            nonlocal inconsistent
            cached = evals.get(t)
            if cached is None:
                mat = [[Fraction(0)] * n_monos for _ in row_keys]
                for j, vec in enumerate(cols_l):
                    for u, p in vec.items():
                        mat[row_keys[u]][j] = p.evaluate(t)
                rhs = [[Fraction(0)] * n_rhs for _ in row_keys]
                for k, vec in enumerate(rhs_l):
                    for u, p in vec.items():
                        rhs[row_keys[u]][k] = p.evaluate(t)
                ech, pivots, aug = linalg.row_echelon(mat, rhs)
                if len(pivots) != n_monos:
                    cached = None
                elif any(any(aug[r]) for r in range(n_monos, len(ech))):
                    inconsistent = True
                    cached = None
                else:
                    cached = [
                        [aug[r][k] for r in range(n_monos)]
                        for k in range(n_rhs)
                    ]
                evals[t] = cached
            return cached

        def log2_size(x: Fraction) -> int:
            return x.numerator.bit_length() - x.denominator.bit_length()

        # degree probes: a Laurent value at t grows like t^top for t large
        # and like t^bottom for t small, up to cross-term interference
        hi = lo = 0
        probes = (
            (Fraction(4), Fraction(16), Fraction(1, 2)),
            (Fraction(1, 4), Fraction(1, 16), Fraction(-1, 2)),
        )
        for t1, t2, scale in probes:
            s1 = solved_at(t1)
            s2 = solved_at(t2)
            if inconsistent or s1 is None or s2 is None:
                break
            f1 = [f.evaluate(t1) for f in facts]
            f2 = [f.evaluate(t2) for f in facts]
            for k in range(n_rhs):
                for j in range(n_monos):
                    a, b = s1[k][j] * f1[j], s2[k][j] * f2[j]
                    if a and b:
                        d = (log2_size(b) - log2_size(a)) * scale
                        hi = max(hi, int(d) + 1)
                        lo = min(lo, int(d) - 1)
        if inconsistent:
            return None

        margin = 6
        while hi - lo <= 1024:
            w_lo, w_hi = lo - margin, hi + margin
            n_interp = w_hi - w_lo + 1
            points: list[Fraction] = []
            solved: list = []
            t_int = 2
            while len(points) < n_interp and t_int < 4 * n_interp + 64:
                t = Fraction(t_int)
                t_int += 1
                sol = solved_at(t)
                if inconsistent:
                    return None
                if sol is None:
                    continue
                points.append(t)
                solved.append(sol)
            if len(points) < n_interp:
                return None
            # Newton basis prefixes prod_{s<r} (q - t_s), shared by all
            # coordinates; expanding through the monomial Vandermonde
            # instead blows up the elimination intermediates
            prefixes: list[list[Fraction]] = [[Fraction(1)]]
            for t in points[:-1]:
                prev = prefixes[-1]
                nxt = [-t * prev[0]]
                for i in range(1, len(prev)):
                    nxt.append(prev[i - 1] - t * prev[i])
                nxt.append(prev[-1])
                prefixes.append(nxt)

            def interp(values: list[Fraction]) -> LaurentQ:
                work = [
                    v * points[i] ** -w_lo for i, v in enumerate(values)
                ]
                poly = [Fraction(0)] * n_interp
                for r in range(n_interp):
                    c = work[0]
                    if c:
                        pref = prefixes[r]
                        for e in range(len(pref)):
                            poly[e] += c * pref[e]
                    for i in range(n_interp - 1 - r):
                        work[i] = (work[i + 1] - work[i]) / (
                            points[i + 1 + r] - points[i]
                        )
                return LaurentQ({
                    w_lo + e: c for e, c in enumerate(poly) if c
                })

            fevals = [
                [f.evaluate(t) for f in facts] for t in points
            ]
            coords = [
                [
                    RationalQ(
                        interp([
                            solved[i][k][j] * fevals[i][j]
                            for i in range(n_interp)
                        ]),
                        facts[j],
                    )
                    for j in range(n_monos)
                ]
                for k in range(n_rhs)
            ]
            ok = True
            for k in range(n_rhs):
                residual = {u: RationalQ(p) for u, p in rhs_l[k].items()}
                for j in range(n_monos):
                    c = coords[k][j]
                    if not c:
                        continue
                    for u, p in cols_l[j].items():
                        prev = residual.get(u)
                        cur = (prev - c * p) if prev is not None else -(c * p)
                        if cur:
                            residual[u] = cur
                        elif prev is not None:
                            del residual[u]
                if residual:
                    ok = False
                    break
            if ok:
                return [
                    {
                        monos[j]: coords[k][j]
                        for j in range(n_monos)
                        if coords[k][j]
                    }
                    for k in range(n_rhs)
                ]
            step = max(8, (hi - lo) // 2)
            lo -= step
            hi += step
        return None

    def word_coords(self, sign: int, word: tuple[int, ...]) -> dict:
        """PBW exponent coordinates of one generator word of its weight."""
        cache = self._coords_cache[sign]
        cached = cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = {(0,) * len(self.table.plus): self.alg.ring.one()}
        elif self._generic is not None:
            m = self.alg.ring.m
            result = {}
            for t, c in self._generic.word_coords(sign, word).items():
                v = _specialize_scalar(c, m)
                if v:
                    result[t] = v
        else:
            self._solve_words(sign, (word,))
            return cache[word]
        cache[word] = result
        return result

    def to_pbw(self, x: Element) -> PBWElement:
        solver = self._generic if self._generic is not None else self
        solver._solve_words(1, (p for (p, s, m) in x.terms))
        solver._solve_words(-1, (m for (p, s, m) in x.terms))
        out: dict = {}
        for (p, s, m), c in x.terms.items():
            for r, cp in self.word_coords(1, p).items():
                cc = c * cp
                for t, cm in self.word_coords(-1, m).items():
                    _acc(out, (r, s, t), cc * cm)
        return PBWElement(self, out)

    def one_sided_coords(self, sign: int, x: Element) -> dict:
        """Exponent coordinates of an element of one weight component of
        the positive or negative subalgebra, solved as a single system.

        Cheaper than per-word conversion for a one-off product whose
        expansion spreads over many words; requires a generic context.
        """
        if self._generic is not None:
            raise PBWError("aggregated conversion is generic-only")
        combined: dict = {}
        weight = None
        for (p, s, m), c in x.terms.items():
            word = p if sign > 0 else m
            if (p if sign < 0 else m) or any(s):
                raise PBWError("element is not one-sided")
            w = self.alg.word_weight(word)
            if weight is None:
                weight = w
            elif weight != w:
                raise PBWError("element is not of a single weight")
            for u, cu in self.alg.shuffle(word).items():
                _acc(combined, u, c * cu)
        if weight is None:
            return {}
        monos, row_keys, columns = self._component(sign, weight)
        if any(u not in row_keys for u in combined):
            raise PBWError("word leaves the span of its PBW component")
        sols = None
        if len(row_keys) * len(monos) > 400:
            sols = self._interp_solve(monos, row_keys, columns, [combined])
        if sols is None:
            sols = self._echelon_solve(monos, row_keys, columns, [combined])
        return sols[0]

    def normal_form(self, x: Element) -> PBWElement:
        return self.to_pbw(x)

    def multiply(self, x: PBWElement, y: PBWElement) -> PBWElement:
        return self.to_pbw(
            self.alg.multiply(self.from_pbw(x), self.from_pbw(y))
        )

    # -- straightening relations ------------------------------------------------

    def ls_relation(self, pos_a: int, pos_b: int) -> LSRelation:
        """Straighten X_alpha^- X_beta^- for ordering positions a < b.

        At a root of unity the relation is the specialization of the
        generic one; its constants are Laurent in q."""
        if not 0 <= pos_a < pos_b < len(self.ordering.roots):
            raise PBWError("need two ordering positions a < b")
        if self._generic is not None:
            gen = self._generic.ls_relation(pos_a, pos_b)
            m = self.alg.ring.m
            return LSRelation(
                alpha=gen.alpha,
                beta=gen.beta,
                position_pair=gen.position_pair,
                pairing_exponent=gen.pairing_exponent,
                leading=_specialize_scalar(gen.leading, m),
                leading_ok=gen.leading_ok,
                window_ok=gen.window_ok,
                between={
                    t: v
                    for t, c in gen.between.items()
                    if (v := _specialize_scalar(c, m))
                },
                between_divided={
                    t: v
                    for t, c in gen.between_divided.items()
                    if (v := _specialize_scalar(c, m))
                },
            )
        key = (pos_a, pos_b)
        cached = self._relation_cache.get(key)
        if cached is not None:
            return cached
        alpha = self.ordering.roots[pos_a]
        beta = self.ordering.roots[pos_b]
        prod = self.alg.multiply(
            self.table.minus[pos_a], self.table.minus[pos_b]
        )
        coords = self.one_sided_coords(-1, prod)
        pair = [0] * len(self.ordering.roots)
        pair[pos_a] = pair[pos_b] = 1
        pair_t = tuple(pair)
        exponent = self.alg.rs.pairing(alpha, beta)
        leading = self.alg.ring.zero()
        between: dict = {}
        window_ok = True
        for t, c in coords.items():
            if t == pair_t:
                leading = c
                continue
            between[t] = c
            support = [k for k, e in enumerate(t) if e]
            if support and not (pos_a < support[0] and support[-1] < pos_b):
                window_ok = False
        divided = {}
        for t, c in between.items():
            factor = self.alg.ring.one()
            for k, e in enumerate(t):
                if e > 1:
                    factor = factor * self.alg.ring.gauss_factorial(
                        e, self.alg.rs.d_root(self.ordering.roots[k])
                    )
            divided[t] = c * factor
        rel = LSRelation(
            alpha=alpha,
            beta=beta,
            position_pair=(pos_a, pos_b),
            pairing_exponent=exponent,
            leading=leading,
            leading_ok=leading == self.alg.ring.q_power(exponent),
            window_ok=window_ok,
            between=between,
            between_divided=divided,
        )
        self._relation_cache[key] = rel
        return rel


# ---------------------------------------------------------------------------
# specialization q -> eps
# ---------------------------------------------------------------------------

def _specialize_scalar(c: RationalQ, m: int) -> Cyclo:
    num = specialize(c.num, m)
    den = specialize(c.den, m)
    if not den:
        raise PBWError(f"coefficient {c} has a pole at a primitive {m}-th root")
    return num * den.inverse()


def specialize_element(x: Element, target: Algebra) -> Element:
    """Map a generic element to the root-of-unity algebra coefficientwise."""
    src_ring = x.alg.ring
    if not src_ring.generic or target.ring.generic:
        raise PBWError("specialization goes from generic q to a root of unity")
    if x.alg.rs is not target.rs:
        raise PBWError("specialization requires the same root system")
    m = target.ring.m
    out: dict = {}
    for k, c in x.terms.items():
        _acc(out, k, _specialize_scalar(c, m))
    return Element(target, out)
