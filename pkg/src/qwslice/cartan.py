"""Cartan data for the finite crystallographic series A-G.

Conventions fixed once for the whole package:

* a is the Cartan matrix with rows a_ij = <alpha_j, alpha_i^vee>, so the
  simple reflection acts by s_i(alpha_j) = alpha_j - a_ij alpha_i.
* d_i are the coprime positive symmetrizers, d_i a_ij = d_j a_ji, and the
  invariant form on simple roots is (alpha_i, alpha_j) = b_ij = d_i a_ij.
* Short roots get d = 1; B_l ends in its short root (d = (2,...,2,1)),
  C_l ends in its long root (d = (1,...,1,2)), G2 starts with its short
  root (d = (1,3)), F4 is long-long-short-short (d = (2,2,1,1)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class CartanError(ValueError):
    """Raised for Cartan data violating the defining invariants."""


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    @property
    def b(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.d[i] * self.a[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def validate_datum(datum: CartanDatum) -> None:
    """Check the Cartan-matrix invariants, raising CartanError with the
    violated condition."""
    l = datum.rank
    a, d = datum.a, datum.d
    if l < 1:
        raise CartanError("rank must be positive")
    if len(a) != l or any(len(row) != l for row in a):
        raise CartanError(f"Cartan matrix must be {l}x{l}")
    if len(d) != l:
        raise CartanError(f"expected {l} symmetrizers")
    if any(x < 1 for x in d):
        raise CartanError("symmetrizers must be positive")
    for i in range(l):
        if a[i][i] != 2:
            raise CartanError(f"a[{i}][{i}] = {a[i][i]} but diagonal entries must be 2")
        for j in range(l):
            if i != j and a[i][j] > 0:
                raise CartanError(f"a[{i}][{j}] = {a[i][j]} but off-diagonal entries must be <= 0")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise CartanError(f"a[{i}][{j}] = 0 but a[{j}][{i}] = {a[j][i]}: zeros must be symmetric")
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise CartanError(
                    f"d_{i} a[{i}][{j}] = {d[i] * a[i][j]} != {d[j] * a[j][i]} = d_{j} a[{j}][{i}]:"
                    " b must be symmetric"
                )


def _chain_matrix(l: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    for i in range(l - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    return a


def _series_datum(series: str, l: int) -> CartanDatum:
    if series == "A":
        if l < 1:
            raise CartanError("A_l needs l >= 1")
        a = _chain_matrix(l)
        d = [1] * l
    elif series == "B":
        if l < 2:
            raise CartanError("B_l needs l >= 2")
        a = _chain_matrix(l)
        a[l - 1][l - 2] = -2
        d = [2] * (l - 1) + [1]
    elif series == "C":
        if l < 2:
            raise CartanError("C_l needs l >= 2")
        a = _chain_matrix(l)
        a[l - 2][l - 1] = -2
        d = [1] * (l - 1) + [2]
    elif series == "D":
        if l < 3:
            raise CartanError("D_l needs l >= 3")
        a = _chain_matrix(l - 1)
        for row in a:
            row.append(0)
        a.append([0] * l)
        a[l - 1][l - 1] = 2
        a[l - 1][l - 3] = -1
        a[l - 3][l - 1] = -1
        a[l - 1][l - 2] = 0
        a[l - 2][l - 1] = 0
        d = [1] * l
    elif series == "E":
        if l not in (6, 7, 8):
            raise CartanError("E_l needs l in {6, 7, 8}")
        # Bourbaki numbering: node 2 attaches to node 4 of the chain 1-3-4-5-...
        chain = [1, 3, 4] + list(range(5, l + 1))
        a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
        for u, v in zip(chain, chain[1:]):
            a[u - 1][v - 1] = -1
            a[v - 1][u - 1] = -1
        a[2 - 1][4 - 1] = -1
        a[4 - 1][2 - 1] = -1
        d = [1] * l
    elif series == "F":
        if l != 4:
            raise CartanError("F_l needs l = 4")
        a = _chain_matrix(4)
        a[2][1] = -2
        d = [2, 2, 1, 1]
    elif series == "G":
        if l != 2:
            raise CartanError("G_l needs l = 2")
        a = [[2, -3], [-1, 2]]
        d = [1, 3]
    else:
        raise CartanError(f"unknown series {series!r}")
    datum = CartanDatum(series, l, tuple(tuple(row) for row in a), tuple(d))
    validate_datum(datum)
    return datum


def cartan_datum(name: str) -> CartanDatum:
    """Parse a series name like "A2", "B3", "G2" into its Cartan datum."""
    m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", name.strip())
    if not m:
        raise CartanError(f"cannot parse Cartan type {name!r}; expected e.g. 'A2'")
    return _series_datum(m.group(1).upper(), int(m.group(2)))


def datum_from_matrix(a, d=None, series: str = "X") -> CartanDatum:
    """Build a datum from an explicit Cartan matrix.

    When d is omitted the symmetrizers are recovered from the matrix by
    propagating d_i a_ij = d_j a_ji along nonzero entries and scaling to
    coprime integers (possible whenever the matrix is symmetrizable).
    """
    a = tuple(tuple(int(x) for x in row) for row in a)
    l = len(a)
    if d is None:
        ratios: list[Fraction | None] = [None] * l
        ratios[0] = Fraction(1)
        changed = True
        while changed:
            changed = False
            for i in range(l):
                if ratios[i] is None:
                    continue
                for j in range(l):
                    if a[i][j] and ratios[j] is None:
                        if a[j][i] == 0:
                            raise CartanError(f"a[{i}][{j}] != 0 but a[{j}][{i}] = 0: not symmetrizable")
                        ratios[j] = ratios[i] * Fraction(a[i][j], a[j][i])
                        changed = True
        if any(r is None for r in ratios):
            # disconnected diagram: restart each unseen component at 1
            for i in range(l):
                if ratios[i] is None:
                    ratios[i] = Fraction(1)
        denom = 1
        for r in ratios:
            denom = denom * r.denominator // _gcd(denom, r.denominator)
        ints = [int(r * denom) for r in ratios]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        d = tuple(x // g for x in ints)
    else:
        d = tuple(int(x) for x in d)
    datum = CartanDatum(series, l, a, d)
    validate_datum(datum)
    return datum


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return abs(x)


POSITIVE_ROOT_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}
