"""Root systems, the invariant form, Weyl elements, reduced words of the
longest element, and normal orderings with their elementary transpositions.

Roots live in simple-root coordinates as plain integer tuples; the form is
evaluated through b_ij = d_i a_ij and never leaves exact arithmetic.  Weyl
elements are integer matrices acting on coordinate columns, with an optional
reduced word attached.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import CartanDatum, CartanError, POSITIVE_ROOT_COUNTS, cartan_datum, validate_datum

Root = tuple[int, ...]


def root_height(r: Root) -> int:
    return sum(r)


def root_key(r: Root):
    """Canonical enumeration key: by height, ties broken so that earlier
    simple indices come first (alpha_1 before alpha_2)."""
    return (root_height(r), tuple(-c for c in r))


def add_roots(x: Root, y: Root) -> Root:
    return tuple(a + b for a, b in zip(x, y))


def negate(x: Root) -> Root:
    return tuple(-a for a in x)


@dataclass(frozen=True)
class WeylElement:
    """An element of the Weyl group as an integer matrix on root coordinates.

    ``matrix[i][j]`` is the alpha_i-coordinate of the image of alpha_j, so
    the action on a coordinate column v is the usual matrix product.  The
    optional word is a reduced expression in 1-based simple-reflection
    indices; composition is right-to-left (``(w * u)(v) = w(u(v))``).
    """

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] | None = field(default=None, compare=False)

    def act(self, v: Root) -> Root:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        n = len(self.matrix)
        m = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(m, word)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def __str__(self) -> str:
        if self.word is not None:
            return format_word(self.word)
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.matrix) + "]"


def parse_word(text: str) -> tuple[int, ...]:
    """Parse reflection words like "s1 s2 s1", "1 2 1", or "1,2,1".

    The empty string (or "e"/"id") is the identity.
    """
    text = text.strip()
    if text in ("", "e", "id", "1x"):
        return ()
    tokens = re.split(r"[,\s]+", text)
    word = []
    for t in tokens:
        m = re.fullmatch(r"s?(\d+)", t)
        if not m:
            raise ValueError(f"cannot parse reflection token {t!r}")
        idx = int(m.group(1))
        if idx < 1:
            raise ValueError(f"reflection indices are 1-based, got {idx}")
        word.append(idx)
    return tuple(word)


def format_word(word: tuple[int, ...]) -> str:
    return " ".join(f"s{i}" for i in word) if word else "e"


class RootSystem:
    """A finite root system built from a Cartan datum.

    Positive roots are generated by reflection closure from the simple roots
    and enumerated canonically (height, then earlier-simple-first).
    """

    def __init__(self, datum: CartanDatum):
        validate_datum(datum)
        self.datum = datum
        self.rank = datum.rank
        self.a = datum.a
        self.d = datum.d
        self.b = datum.b
        self.positive_roots = self._generate_positive_roots()
        self.num_positive = len(self.positive_roots)
        self._pos_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._root_set = set(self.positive_roots) | {negate(r) for r in self.positive_roots}
        counter = POSITIVE_ROOT_COUNTS.get(datum.series)
        if counter is not None and counter(self.rank) != self.num_positive:
            raise CartanError(
                f"{datum}: generated {self.num_positive} positive roots, expected {counter(self.rank)}"
            )
        self._cache: dict = {}

    # -- construction ---------------------------------------------------------

    def _generate_positive_roots(self) -> tuple[Root, ...]:
        l = self.rank
        simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(l):
                    img = self._reflect_simple(i, r)
                    if img not in seen and all(c >= 0 for c in img):
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return tuple(sorted(seen, key=root_key))

    def _reflect_simple(self, i: int, v: Root) -> Root:
        c = sum(self.a[i][j] * v[j] for j in range(self.rank))
        return tuple(v[k] - c if k == i else v[k] for k in range(self.rank))

    # -- basic queries ---------------------------------------------------------

    def simple_root(self, i: int) -> Root:
        """The i-th simple root, 1-based."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def is_root(self, v: Root) -> bool:
        return v in self._root_set

    def is_positive_root(self, v: Root) -> bool:
        return v in self._pos_index

    def positive_index(self, v: Root) -> int:
        return self._pos_index[v]

    def pairing(self, u, v):
        """The invariant form (u, v) = sum u_i b_ij v_j; integral on roots."""
        total = 0
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        total += ui * self.b[i][j] * vj
        return total

    def d_root(self, beta: Root) -> int:
        """(beta, beta)/2: the symmetrizer of the root, so q_beta = q^{d_root}."""
        n = self.pairing(beta, beta)
        if isinstance(n, Fraction):
            half = n / 2
            if half.denominator != 1:
                raise ValueError(f"(beta, beta)/2 not integral for {beta}")
            return int(half)
        return n // 2

    def coroot_pairing(self, v, beta: Root):
        """<v, beta^vee> = 2 (v, beta)/(beta, beta); integral when v is a root."""
        num = 2 * self.pairing(v, beta)
        den = self.pairing(beta, beta)
        f = Fraction(num, den)
        return int(f) if f.denominator == 1 else f

    # -- Weyl elements ----------------------------------------------------------

    def identity(self) -> WeylElement:
        l = self.rank
        return WeylElement(tuple(tuple(1 if i == j else 0 for j in range(l)) for i in range(l)), ())

    def simple_reflection(self, i: int) -> WeylElement:
        """s_i as a WeylElement, 1-based index."""
        l = self.rank
        if not 1 <= i <= l:
            raise ValueError(f"simple reflection index {i} out of range 1..{l}")
        rows = []
        for k in range(l):
            if k == i - 1:
                rows.append(tuple((1 if k == j else 0) - self.a[k][j] for j in range(l)))
            else:
                rows.append(tuple(1 if k == j else 0 for j in range(l)))
        return WeylElement(tuple(rows), (i,))

    def word_element(self, word) -> WeylElement:
        w = self.identity()
        for i in word:
            w = w * self.simple_reflection(i)
        return WeylElement(w.matrix, tuple(word))

    def reflection(self, beta: Root) -> WeylElement:
        """The reflection s_beta in an arbitrary root beta."""
        if not self.is_root(beta):
            raise ValueError(f"{beta} is not a root")
        l = self.rank
        cols = []
        for j in range(l):
            alpha = self.simple_root(j + 1)
            c = self.coroot_pairing(alpha, beta)
            cols.append(tuple(alpha[k] - c * beta[k] for k in range(l)))
        rows = tuple(tuple(cols[j][i] for j in range(l)) for i in range(l))
        return WeylElement(rows)

    def inverse(self, w: WeylElement) -> WeylElement:
        n = self.rank
        frac = [[Fraction(x) for x in row] for row in w.matrix]
        from .linalg import invert

        inv = invert(frac)
        m = tuple(tuple(int(x) for x in row) for row in inv)
        word = tuple(reversed(w.word)) if w.word is not None else None
        return WeylElement(m, word)

    def length(self, w: WeylElement) -> int:
        return sum(1 for r in self.positive_roots if not self.is_positive_root(w.act(r)))

    def weyl_elements(self) -> tuple[WeylElement, ...]:
        """All elements, BFS from the identity; each carries a shortest word
        (lexicographically least among shortest)."""
        if "elements" in self._cache:
            return self._cache["elements"]
        gens = [self.simple_reflection(i) for i in range(1, self.rank + 1)]
        start = self.identity()
        seen = {start.matrix: start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    u = w * g
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        nxt.append(u)
            frontier = nxt
        elements = tuple(sorted(seen.values(), key=lambda w: (len(w.word), w.word)))
        self._cache["elements"] = elements
        return elements

    def conjugacy_classes(self) -> tuple[tuple[WeylElement, ...], ...]:
        """Conjugacy classes, each sorted; classes ordered by their minimal
        (length, word) representative, which is the first element."""
        if "classes" in self._cache:
            return self._cache["classes"]
        elements = self.weyl_elements()
        by_matrix = {w.matrix: w for w in elements}
        gens = [self.simple_reflection(i) for i in range(1, self.rank + 1)]
        gen_inv = gens  # simple reflections are involutions
        unassigned = dict(by_matrix)
        classes = []
        for w in elements:
            if w.matrix not in unassigned:
                continue
            orbit = {w.matrix}
            frontier = [w]
            while frontier:
                nxt = []
                for u in frontier:
                    for g, gi in zip(gens, gen_inv):
                        v = g * u * gi
                        if v.matrix not in orbit:
                            orbit.add(v.matrix)
                            nxt.append(by_matrix[v.matrix])
                frontier = nxt
            cls = tuple(sorted((by_matrix[m] for m in orbit), key=lambda x: (len(x.word), x.word)))
            classes.append(cls)
            for m in orbit:
                unassigned.pop(m)
        self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def __str__(self) -> str:
        return str(self.datum)


@functools.lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    """Cached factory: root_system("B2") etc."""
    return RootSystem(cartan_datum(name))


def build_root_system(datum: CartanDatum) -> RootSystem:
    return RootSystem(datum)


# ---------------------------------------------------------------------------
# Longest element and normal orderings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalOrdering:
    """A total order on the positive roots in which every sum alpha + beta
    that is a root sits strictly between its summands."""

    roots: tuple[Root, ...]
    source_word: tuple[int, ...] | None = field(default=None, compare=False)

    def position(self, r: Root) -> int:
        return self.roots.index(r)

    def __str__(self) -> str:
        return " < ".join("+".join(f"{c}a{i+1}" for i, c in enumerate(r) if c) or "0" for r in self.roots)


def longest_element(rs: RootSystem) -> WeylElement:
    """w0 by greedy descent: repeatedly multiply by the least s_i that still
    increases length, until every simple root is sent negative."""
    w = rs.identity()
    word = []
    while True:
        for i in range(1, rs.rank + 1):
            if rs.is_positive_root(w.act(rs.simple_root(i))):
                word.append(i)
                w = w * rs.simple_reflection(i)
                break
        else:
            return WeylElement(w.matrix, tuple(word))


def ordering_from_word(rs: RootSystem, word) -> NormalOrdering:
    """The normal ordering beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) from a
    reduced word of w0."""
    word = tuple(word)
    if len(word) != rs.num_positive:
        raise ValueError(
            f"word of length {len(word)} cannot be reduced for w0 (need {rs.num_positive})"
        )
    roots = []
    seen = set()
    w = rs.identity()
    for k, i in enumerate(word):
        beta = w.act(rs.simple_root(i))
        if not rs.is_positive_root(beta):
            raise ValueError(f"word is not reduced: step {k + 1} revisits root {negate(beta)}")
        if beta in seen:
            raise ValueError(f"word is not reduced: root {beta} repeated at step {k + 1}")
        seen.add(beta)
        roots.append(beta)
        w = w * rs.simple_reflection(i)
    return NormalOrdering(tuple(roots), word)


def word_from_ordering(rs: RootSystem, roots) -> tuple[int, ...]:
    """Recover the reduced word of w0 inducing the given normal ordering."""
    roots = list(roots)
    word = []
    for _ in range(len(roots)):
        first = roots.pop(0)
        if root_height(first) != 1:
            raise ValueError(f"ordering does not start at a simple root: {first}")
        i = first.index(1) + 1
        word.append(i)
        roots = [rs._reflect_simple(i - 1, r) for r in roots]
    return tuple(word)


def is_normal_ordering(rs: RootSystem, roots) -> bool:
    roots = tuple(roots)
    if sorted(roots, key=root_key) != list(rs.positive_roots):
        return False
    pos = {r: k for k, r in enumerate(roots)}
    for i, alpha in enumerate(roots):
        for j in range(i + 1, len(roots)):
            gamma = add_roots(alpha, roots[j])
            if gamma in pos and not (i < pos[gamma] < j):
                return False
    return True


def elementary_transpositions(rs: RootSystem, o: NormalOrdering) -> list[NormalOrdering]:
    """All normal orderings obtained by inverting one full rank-2 segment.

    A window [k..k'] qualifies when its roots are exactly the positive roots
    of the rank-2 subsystem spanned by the two endpoint roots and the
    endpoints do not differ by a root.
    """
    roots = o.roots
    D = len(roots)
    results = []
    for k in range(D - 1):
        alpha = roots[k]
        for k2 in range(k + 1, D):
            beta = roots[k2]
            if rs.is_root(tuple(x - y for x, y in zip(beta, alpha))):
                continue
            window = set(roots[k : k2 + 1])
            span = _rank2_span(rs, alpha, beta)
            if span is None or window != span:
                continue
            new = roots[:k] + tuple(reversed(roots[k : k2 + 1])) + roots[k2 + 1 :]
            results.append(NormalOrdering(new, None))
    return results


def _rank2_span(rs: RootSystem, alpha: Root, beta: Root) -> set[Root] | None:
    """Positive roots in the 2-dim span of alpha and beta, or None if the
    span degenerates (alpha parallel to beta)."""
    l = rs.rank
    span = set()
    for r in rs.positive_roots:
        coeffs = _in_plane(alpha, beta, r)
        if coeffs is not None:
            span.add(r)
    # parallel endpoints never happen for distinct positive roots, but guard anyway
    if _in_plane(alpha, beta, tuple(0 for _ in range(l))) is None:
        return None
    return span


def _in_plane(alpha: Root, beta: Root, r: Root):
    """Solve r = x alpha + y beta over the rationals; None if unsolvable."""
    # find two coordinates where (alpha, beta) has rank 2
    n = len(alpha)
    for i in range(n):
        for j in range(i + 1, n):
            det = alpha[i] * beta[j] - alpha[j] * beta[i]
            if det:
                x = Fraction(r[i] * beta[j] - r[j] * beta[i], det)
                y = Fraction(alpha[i] * r[j] - alpha[j] * r[i], det)
                for k in range(n):
                    if x * alpha[k] + y * beta[k] != r[k]:
                        return None
                return (x, y)
    return None  # alpha, beta do not span a plane


def all_normal_orderings(rs: RootSystem) -> tuple[NormalOrdering, ...]:
    """Every normal ordering, by BFS over elementary transpositions from the
    greedy w0 word; cached on the root system."""
    if "orderings" in rs._cache:
        return rs._cache["orderings"]
    start = ordering_from_word(rs, longest_element(rs).word)
    seen = {start.roots: start}
    frontier = [start]
    while frontier:
        nxt = []
        for o in frontier:
            for t in elementary_transpositions(rs, o):
                if t.roots not in seen:
                    seen[t.roots] = t
                    nxt.append(t)
        frontier = nxt
    result = tuple(sorted(seen.values(), key=lambda o: tuple(root_key(r) for r in o.roots)))
    rs._cache["orderings"] = result
    return result
