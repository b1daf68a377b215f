"""Decomposition of Weyl elements into two orthogonal-reflection involutions,
the Cayley transform on the moved space, and the integer twist data derived
from it.

The central cross-check of this module is intentionally duplicated: the
Cayley matrix ((1+s)/(1-s) P gamma_i, gamma_j) is computed once by exact
linear algebra from s and once from the closed form eps_ij (gamma_i, gamma_j),
and consumers must compare the two routes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import linalg
from .rootsys import Root, RootSystem, WeylElement


class CarterError(ValueError):
    pass


@dataclass(frozen=True)
class CarterDecomposition:
    """s = s_{gamma_1}...s_{gamma_n} * s_{gamma_{n+1}}...s_{gamma_{l'}} with
    each part a set of pairwise orthogonal positive roots and the full gamma
    list a basis of the moved space image(1 - s)."""

    s: WeylElement
    gammas1: tuple[Root, ...]
    gammas2: tuple[Root, ...]

    @property
    def gammas(self) -> tuple[Root, ...]:
        return self.gammas1 + self.gammas2

    @property
    def l_prime(self) -> int:
        return len(self.gammas1) + len(self.gammas2)


@dataclass(frozen=True)
class CayleyData:
    """The arithmetic package attached to (s, decomposition, m): the Cayley
    matrix on the gammas, the rational matrix p, the scale d, the inverse n
    of d mod m, and the antisymmetric integer data c_ij with its distinguished
    solution n_ij of d_j n_ij - d_i n_ji = c_ij."""

    decomposition: CarterDecomposition
    cayley_gamma: tuple[tuple[Fraction, ...], ...]
    p: tuple[tuple[Fraction, ...], ...]
    d: int
    n: int
    c: tuple[tuple[int, ...], ...]
    n_int: tuple[tuple[int, ...], ...]
    m: int


def moved_space_basis(rs: RootSystem, s: WeylElement) -> list[list[Fraction]]:
    """A basis of image(1 - s) in root coordinates: echelonize the transpose
    of 1 - s so its nonzero rows span the column space."""
    l = rs.rank
    rows = [
        [Fraction((1 if i == j else 0) - s.matrix[i][j]) for i in range(l)]
        for j in range(l)
    ]
    ech, pivots, _ = linalg.row_echelon(rows)
    return [ech[k] for k in range(len(pivots))]


def _orthogonal_subsets(rs: RootSystem, candidates: list[Root], size: int) -> Iterator[tuple[Root, ...]]:
    """Pairwise-orthogonal subsets of the candidate roots, lexicographically
    by the canonical enumeration."""
    def rec(start: int, chosen: list[Root]):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for k in range(start, len(candidates)):
            r = candidates[k]
            if all(rs.pairing(r, c) == 0 for c in chosen):
                chosen.append(r)
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def _reflection_product(rs: RootSystem, roots: tuple[Root, ...]) -> WeylElement:
    w = rs.identity()
    for r in roots:
        w = w * rs.reflection(r)
    return WeylElement(w.matrix)


def _independent(rs: RootSystem, roots: tuple[Root, ...]) -> bool:
    if not roots:
        return True
    rows = [[Fraction(c) for c in r] for r in roots]
    return linalg.rank(rows) == len(roots)


def _in_span(basis: list[list[Fraction]], v: list[Fraction]) -> bool:
    if not basis:
        return not any(v)
    rows = [list(b) for b in basis]
    return linalg.rank(rows) == linalg.rank(rows + [v])


def enumerate_decompositions(rs: RootSystem, s: WeylElement) -> Iterator[CarterDecomposition]:
    """All Carter decompositions of s in canonical order: second part as small
    as possible first, then lexicographic in the root enumeration."""
    basis = moved_space_basis(rs, s)
    l_prime = len(basis)
    if l_prime == 0:
        if not s.is_identity():
            raise CarterError("element has full fixed space but is not the identity")
        yield CarterDecomposition(s, (), ())
        return
    candidates = [
        r for r in rs.positive_roots if _in_span(basis, [Fraction(c) for c in r])
    ]
    target = WeylElement(s.matrix)
    for n2 in range(l_prime + 1):
        n1 = l_prime - n2
        for g1 in _orthogonal_subsets(rs, candidates, n1):
            i1 = _reflection_product(rs, g1)
            # the second involution is forced: s = i1 * i2, i1^2 = id
            i2 = i1 * target
            if n2 == 0:
                if not i2.is_identity():
                    continue
                if _independent(rs, g1):
                    yield CarterDecomposition(s, g1, ())
                continue
            for g2 in _orthogonal_subsets(rs, candidates, n2):
                if _reflection_product(rs, g2).matrix != i2.matrix:
                    continue
                if _independent(rs, g1 + g2):
                    yield CarterDecomposition(s, g1, g2)


def carter_decompose(rs: RootSystem, s: WeylElement) -> CarterDecomposition:
    """The canonical (first in enumeration order) Carter decomposition."""
    for cd in enumerate_decompositions(rs, s):
        return cd
    raise CarterError(f"no Carter decomposition found for element {s} (search exhausted)")


# ---------------------------------------------------------------------------
# Cayley transform
# ---------------------------------------------------------------------------

def _cayley_images(rs: RootSystem, cd: CarterDecomposition) -> list[list[Fraction]]:
    """For each gamma_i, the coordinate vector of (1+s)(1-s)^{-1} gamma_i,
    where the inverse is taken on the moved space."""
    l = rs.rank
    s = cd.s
    basis = moved_space_basis(rs, s)
    one_minus_s = [
        [Fraction((1 if i == j else 0) - s.matrix[i][j]) for j in range(l)] for i in range(l)
    ]
    # columns of A are (1-s) applied to the moved-space basis vectors
    a_cols = [linalg.mat_vec(one_minus_s, b) for b in basis]
    images = []
    for gamma in cd.gammas:
        target = [Fraction(c) for c in gamma]
        x = linalg.column_space_coords(a_cols, target)
        if x is None:
            raise CarterError(f"gamma {gamma} not in the image of 1 - s")
        v = [sum(x[k] * basis[k][i] for k in range(len(basis))) for i in range(l)]
        images.append([2 * v[i] - target[i] for i in range(l)])
    return images


def cayley_matrix(rs: RootSystem, cd: CarterDecomposition) -> tuple[tuple[Fraction, ...], ...]:
    """((1+s)/(1-s) P gamma_i, gamma_j) by exact linear algebra from s."""
    images = _cayley_images(rs, cd)
    out = []
    for img in images:
        out.append(tuple(Fraction(rs.pairing(img, g)) for g in cd.gammas))
    return tuple(out)


def cayley_closed_form(rs: RootSystem, cd: CarterDecomposition) -> tuple[tuple[Fraction, ...], ...]:
    """The closed form eps_ij (gamma_i, gamma_j), eps = -1/0/+1 below/on/above
    the diagonal.  Computed independently of the linear-algebra route."""
    gammas = cd.gammas
    n = len(gammas)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            eps = 0 if i == j else (-1 if i < j else 1)
            row.append(Fraction(eps * rs.pairing(gammas[i], gammas[j])))
        out.append(tuple(row))
    return tuple(out)


def _projection_coords(rs: RootSystem, cd: CarterDecomposition, v: list[Fraction]) -> list[Fraction]:
    """Coefficients x with P v = sum x_k gamma_k (orthogonal projection onto
    the span of the gammas), via the inverse Gram matrix."""
    gammas = cd.gammas
    gram = [
        [Fraction(rs.pairing(gi, gj)) for gj in gammas] for gi in gammas
    ]
    rhs = [Fraction(rs.pairing(v, g)) for g in gammas]
    x = linalg.solve(gram, rhs)
    if x is None:
        raise CarterError("Gram matrix of the gammas is singular")
    return x


def compute_arithmetic(rs: RootSystem, cd: CarterDecomposition, m: int) -> CayleyData:
    """p_ij, the denominator scale d, the inverse n of d modulo m, the
    antisymmetric integers c_ij = n d ((1+s)/(1-s)P alpha_i, alpha_j), and the
    distinguished integer solution n_ij."""
    if m % 2 == 0 or m < 1:
        raise CarterError(f"m = {m} must be a positive odd integer")
    if m <= max(rs.d):
        raise CarterError(f"m = {m} must exceed every symmetrizer d_i (max {max(rs.d)})")
    l = rs.rank
    cayley_g = cayley_matrix(rs, cd)
    closed = cayley_closed_form(rs, cd)
    if cayley_g != closed:
        raise CarterError(
            "Cayley matrix from linear algebra disagrees with the closed form: "
            f"{cayley_g} vs {closed}"
        )

    # (C P alpha_i, alpha_j) through the gamma coordinates of the projection
    images = _cayley_images(rs, cd)  # C gamma_k in root coordinates
    cp_alpha = []
    for i in range(l):
        alpha = [Fraction(1) if t == i else Fraction(0) for t in range(l)]
        if cd.l_prime == 0:
            cp_alpha.append([Fraction(0)] * l)
            continue
        x = _projection_coords(rs, cd, alpha)
        img = [
            sum(x[k] * images[k][t] for k in range(cd.l_prime)) for t in range(l)
        ]
        cp_alpha.append(img)

    p = []
    for i in range(l):
        row = []
        for j in range(l):
            alpha_j = [Fraction(1) if t == j else Fraction(0) for t in range(l)]
            row.append(Fraction(rs.pairing(cp_alpha[i], alpha_j)) / rs.d[j])
        p.append(tuple(row))
    p = tuple(p)

    d = 1
    for i in range(l):
        for j in range(i + 1, l):
            d = _lcm(d, p[i][j].denominator)

    if _gcd(d, m) != 1:
        raise CarterError(
            f"gcd(d, m) = gcd({d}, {m}) = {_gcd(d, m)} != 1: no n with n d = 1 (mod m) exists"
        )
    n = next(k for k in range(1, m + 1) if (k * d) % m == 1 % m)

    c_frac = [[n * d * rs.d[j] * p[i][j] for j in range(l)] for i in range(l)]
    c = []
    for i in range(l):
        row = []
        for j in range(l):
            if c_frac[i][j].denominator != 1:
                raise CarterError(f"c[{i}][{j}] = {c_frac[i][j]} is not an integer")
            row.append(int(c_frac[i][j]))
        c.append(tuple(row))
    c = tuple(c)
    for i in range(l):
        if c[i][i] != 0:
            raise CarterError(f"c[{i}][{i}] = {c[i][i]} nonzero on the diagonal")
        for j in range(l):
            if c[i][j] != -c[j][i]:
                raise CarterError(f"c is not antisymmetric at ({i},{j})")

    n_int = solve_twist_integers(rs, c, d)
    return CayleyData(cd, cayley_g, p, d, n, c, n_int, m)


def solve_twist_integers(rs: RootSystem, c, d: int) -> tuple[tuple[int, ...], ...]:
    """The distinguished solution n_ij = c_ij / d_j for i < j, zero otherwise,
    of d_j n_ij - d_i n_ji = c_ij; verified entrywise."""
    l = rs.rank
    n_int = [[0] * l for _ in range(l)]
    for i in range(l):
        for j in range(i + 1, l):
            if c[i][j] % rs.d[j] != 0:
                raise CarterError(
                    f"n[{i}][{j}] = {c[i][j]}/{rs.d[j]} is not an integer (wrong d = {d}?)"
                )
            n_int[i][j] = c[i][j] // rs.d[j]
    for i in range(l):
        for j in range(l):
            if rs.d[j] * n_int[i][j] - rs.d[i] * n_int[j][i] != c[i][j]:
                raise CarterError(f"twist identity fails at ({i},{j})")
    return tuple(tuple(row) for row in n_int)


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return abs(x)


def _lcm(x: int, y: int) -> int:
    return x * y // _gcd(x, y)
