"""Exact coefficient arithmetic for quantum-group computations.

Three scalar domains, all built on ``fractions.Fraction``:

* :class:`LaurentQ` -- Laurent polynomials in a formal parameter q with
  rational coefficients.  This is where generic-q structure constants live.
* :class:`RationalQ` -- fractions of Laurent polynomials, needed because
  divided-power conversions and Gaussian elimination leave the Laurent ring.
* :class:`Cyclo` -- elements of the cyclotomic field Q(e) where e is a
  primitive m-th root of unity, represented modulo the m-th cyclotomic
  polynomial.

Also provides Gaussian integers/factorials/binomials and specialization of
generic-q scalars at a root of unity (with a guard against vanishing
denominators, which would indicate a genuine pole rather than a removable
one).
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterator, Mapping, Union

Scalar = Union[int, Fraction, "LaurentQ"]


class SpecializationError(ArithmeticError):
    """Raised when a rational function has a pole at the requested root of unity."""


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------

class LaurentQ:
    """A Laurent polynomial in q over the rationals.

    Stored sparsely as ``{exponent: coefficient}`` with no zero coefficients.
    Immutable and hashable, so instances can key memoization tables.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[int, Fraction, Mapping[int, Union[int, Fraction]], None] = None):
        if coeffs is None:
            data = {}
        elif isinstance(coeffs, (int, Fraction)):
            data = {0: Fraction(coeffs)} if coeffs else {}
        else:
            data = {}
            for e, c in coeffs.items():
                c = Fraction(c)
                if c:
                    data[int(e)] = c
        self._c: dict[int, Fraction] = data
        self._hash: int | None = None

    @staticmethod
    def q_power(e: int, coeff: Union[int, Fraction] = 1) -> "LaurentQ":
        """The monomial coeff * q^e."""
        return LaurentQ({e: coeff})

    # -- queries ------------------------------------------------------------

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_one(self) -> bool:
        return self._c == {0: Fraction(1)}

    def constant_term(self) -> Fraction:
        return self._c.get(0, Fraction(0))

    def as_monomial(self) -> tuple[int, Fraction] | None:
        """Return (exponent, coefficient) if this is a single term, else None."""
        if len(self._c) == 1:
            [(e, c)] = self._c.items()
            return e, c
        return None

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(x: Scalar) -> "LaurentQ":
        if isinstance(x, LaurentQ):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentQ(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Scalar) -> "LaurentQ":
        other = LaurentQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        data = dict(self._c)
        for e, c in other._c.items():
            s = data.get(e, Fraction(0)) + c
            if s:
                data[e] = s
            else:
                data.pop(e, None)
        out = LaurentQ.__new__(LaurentQ)
        out._c = data
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentQ":
        out = LaurentQ.__new__(LaurentQ)
        out._c = {e: -c for e, c in self._c.items()}
        out._hash = None
        return out

    def __sub__(self, other: Scalar) -> "LaurentQ":
        other = LaurentQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentQ":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentQ":
        other = LaurentQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._c or not other._c:
            return LaurentQ()
        mono = other.as_monomial()
        if mono is not None:
            e0, c0 = mono
            out = LaurentQ.__new__(LaurentQ)
            out._c = {e + e0: c * c0 for e, c in self._c.items()}
            out._hash = None
            return out
        data: dict[int, Fraction] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                s = data.get(e, Fraction(0)) + c1 * c2
                if s:
                    data[e] = s
                else:
                    data.pop(e, None)
        out = LaurentQ.__new__(LaurentQ)
        out._c = data
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentQ":
        if n < 0:
            mono = self.as_monomial()
            if mono is None:
                raise ValueError("only monomials have Laurent inverses; use RationalQ")
            e, c = mono
            return LaurentQ({e * n: c ** n})
        result = LaurentQ(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentQ(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- substitution and display --------------------------------------------

    def subs_power(self, k: int) -> "LaurentQ":
        """Substitute q -> q^k (k nonzero), e.g. to pass between q and q_i = q^{d_i}."""
        if k == 0:
            raise ValueError("q -> q^0 is not a ring map on Laurent polynomials")
        return LaurentQ({e * k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentQ":
        """The bar involution q -> q^{-1}."""
        return self.subs_power(-1)

    def divexact(self, other: "LaurentQ") -> "LaurentQ":
        """Exact division; raises if the quotient is not a Laurent polynomial."""
        q, r = _laurent_divmod(self, other)
        if r:
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    def evaluate(self, x):
        """Evaluate at a value x from any field supporting ** with int exponents."""
        result = None
        for e, c in self._c.items():
            term = x ** e * c
            result = term if result is None else result + term
        if result is None:
            return x ** 0 * 0
        return result

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            if e == 0:
                term = str(abs(c))
            else:
                var = "q" if e == 1 else f"q^{e}"
                term = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" + {term}" if c > 0 else f" - {term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentQ('{self}')"


def _laurent_divmod(a: LaurentQ, b: LaurentQ) -> tuple[LaurentQ, LaurentQ]:
    """Divide a by b as Laurent polynomials: shift both to ordinary polynomials,
    long-divide, shift back.  Remainder is with respect to the shifted division,
    which suffices for the exactness test used by divexact."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return LaurentQ(), LaurentQ()
    sa, sb = a.min_exp(), b.min_exp()
    # Work with ordinary polynomial coefficient lists.
    pa = _to_dense(a, sa)
    pb = _to_dense(b, sb)
    quot = [Fraction(0)] * max(len(pa) - len(pb) + 1, 0)
    rem = list(pa)
    lead = pb[-1]
    for i in range(len(pa) - len(pb), -1, -1):
        coef = rem[i + len(pb) - 1] / lead
        if coef:
            quot[i] = coef
            for j, bc in enumerate(pb):
                rem[i + j] -= coef * bc
    q = LaurentQ({i + sa - sb: c for i, c in enumerate(quot) if c})
    r = LaurentQ({i + sa: c for i, c in enumerate(rem) if c})
    return q, r


def _to_dense(p: LaurentQ, shift: int) -> list[Fraction]:
    top = p.max_exp() - shift
    dense = [Fraction(0)] * (top + 1)
    for e, c in p._c.items():
        dense[e - shift] = c
    return dense


# ---------------------------------------------------------------------------
# Rational functions in q
# ---------------------------------------------------------------------------

class RationalQ:
    """A quotient of Laurent polynomials in q, kept in reduced normal form.

    Normalization: numerator and denominator share no polynomial factor, the
    denominator has minimal exponent 0, and its lowest coefficient is 1.  With
    that the representation is unique, so equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Scalar = 0, den: Scalar = 1):
        num = num if isinstance(num, LaurentQ) else LaurentQ(num)
        den = den if isinstance(den, LaurentQ) else LaurentQ(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    @staticmethod
    def _coerce(x) -> "RationalQ":
        if isinstance(x, RationalQ):
            return x
        if isinstance(x, (int, Fraction, LaurentQ)):
            return RationalQ(x)
        return NotImplemented  # type: ignore[return-value]

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentQ:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __add__(self, other) -> "RationalQ":
        other = RationalQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalQ":
        out = RationalQ.__new__(RationalQ)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other) -> "RationalQ":
        other = RationalQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalQ":
        return (-self) + other

    def __mul__(self, other) -> "RationalQ":
        other = RationalQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalQ":
        other = RationalQ._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalQ":
        return RationalQ._coerce(other) / self

    def inverse(self) -> "RationalQ":
        return RationalQ(1) / self

    def __pow__(self, n: int) -> "RationalQ":
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalQ(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, LaurentQ)):
            other = RationalQ(other)
        if not isinstance(other, RationalQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalQ('{self}')"


def _reduce_fraction(num: LaurentQ, den: LaurentQ) -> tuple[LaurentQ, LaurentQ]:
    if not num:
        return LaurentQ(), LaurentQ(1)
    if len(den._c) == 1:
        # monomial denominator: fold it into the numerator exactly
        e = den.min_exp()
        c = den._c[e]
        if e == 0 and c == 1:
            return num, den
        return num * LaurentQ.q_power(-e, 1 / c), LaurentQ(1)
    g = _laurent_gcd(num, den)
    num = num.divexact(g)
    den = den.divexact(g)
    # Force denominator to start at exponent 0 with lowest coefficient 1.
    shift = LaurentQ.q_power(-den.min_exp(), 1 / den._c[den.min_exp()])
    return num * shift, den * shift


def _laurent_gcd(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    """Monic gcd via the Euclidean algorithm on the polynomial parts."""
    while b:
        _, r = _laurent_divmod(a, b)
        a, b = b, r
    mono = LaurentQ.q_power(-a.min_exp(), 1 / a._c[a.min_exp()])
    return a * mono


# ---------------------------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by the cyclotomic polynomials of the proper
    divisors of m.  Exact over the rationals (the result is integral).
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    for i in range(len(out) - 1, -1, -1):
        coef = rem[i + len(b) - 1] / b[-1]
        out[i] = coef
        for j, bc in enumerate(b):
            rem[i + j] -= coef * bc
    if any(rem):
        raise ValueError("inexact polynomial division")
    return out


class Cyclo:
    """An element of Q(e), e a primitive m-th root of unity.

    Represented as a vector of rational coordinates in the power basis
    1, e, ..., e^{phi(m)-1} modulo the m-th cyclotomic polynomial.
    """

    __slots__ = ("m", "vec", "_hash")

    def __init__(self, m: int, vec=None):
        self.m = m
        deg = len(cyclotomic_polynomial(m)) - 1
        if vec is None:
            v = (Fraction(0),) * deg
        elif isinstance(vec, (int, Fraction)):
            v = (Fraction(vec),) + (Fraction(0),) * (deg - 1)
        else:
            v = tuple(Fraction(x) for x in vec)
            if len(v) != deg:
                raise ValueError(f"expected {deg} coordinates for m={m}, got {len(v)}")
        self.vec = v
        self._hash: int | None = None

    @staticmethod
    def root(m: int, k: int = 1) -> "Cyclo":
        """The power e^k of the chosen primitive m-th root of unity."""
        return Cyclo(m, _eps_power(m, k % m))

    @staticmethod
    def zero(m: int) -> "Cyclo":
        return Cyclo(m)

    @staticmethod
    def one(m: int) -> "Cyclo":
        return Cyclo(m, 1)

    def _check(self, other: "Cyclo") -> None:
        if self.m != other.m:
            raise ValueError(f"mixing Q(e_{self.m}) with Q(e_{other.m})")

    def __bool__(self) -> bool:
        return any(self.vec)

    def is_rational(self) -> bool:
        return not any(self.vec[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.vec[0]

    @staticmethod
    def _coerce(x, m: int) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo(m, x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return Cyclo(self.m, tuple(a + b for a, b in zip(self.vec, other.vec)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.m, tuple(-a for a in self.vec))

    def __sub__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        return (-self) + other

    def __mul__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        deg = len(self.vec)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.vec):
            if not a:
                continue
            for j, b in enumerate(other.vec):
                if b:
                    prod[i + j] += a * b
        red = _reduction_rows(self.m)
        out = list(prod[:deg])
        for i in range(deg, 2 * deg - 1):
            c = prod[i]
            if c:
                row = red[i - deg]
                for j in range(deg):
                    out[j] += c * row[j]
        return Cyclo(self.m, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Field inverse via the extended Euclidean algorithm mod Phi_m."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        phi = list(cyclotomic_polynomial(self.m))
        a = list(self.vec)
        # extended euclid: find u with a*u = 1 mod phi
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (len(r1) == 1 and r1[0]):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element is a zero divisor (should not happen in a field)")
        inv = [c / r0[0] for c in s0]
        deg = len(self.vec)
        inv = (inv + [Fraction(0)] * deg)[:deg]
        return Cyclo(self.m, tuple(inv))

    def __truediv__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclo":
        return Cyclo._coerce(other, self.m) * self.inverse()

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo(self.m, other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.m == other.m and self.vec == other.vec

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.vec))
        return self._hash

    def __str__(self) -> str:
        if not self:
            return f"0 (m={self.m})"
        parts = []
        for i, c in enumerate(self.vec):
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                var = "e" if i == 1 else f"e^{i}"
                term = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" + {term}" if c > 0 else f" - {term}")
        return "".join(parts) + f" (m={self.m})"

    def __repr__(self) -> str:
        return f"Cyclo('{self}')"


@functools.lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row i gives the coordinates of e^{deg+i} in the power basis, deg = phi(m)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    # e^deg = -(phi_0 + phi_1 e + ... + phi_{deg-1} e^{deg-1}) since phi is monic
    current = [-c for c in phi[:deg]]
    rows.append(tuple(current))
    for _ in range(deg - 2):
        shifted = [Fraction(0)] + current[:-1]
        top = current[-1]
        if top:
            for j in range(deg):
                shifted[j] += top * rows[0][j]
        current = shifted
        rows.append(tuple(current))
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def _eps_power(m: int, k: int) -> tuple[Fraction, ...]:
    phi = list(cyclotomic_polynomial(m))
    deg = len(phi) - 1
    if k < deg:
        return tuple(Fraction(1) if i == k else Fraction(0) for i in range(deg))
    xk = [Fraction(0)] * k + [Fraction(1)]
    _, rem = _poly_divmod(xk, phi)
    rem = rem + [Fraction(0)] * (deg - len(rem))
    return tuple(rem[:deg])


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    for i in range(len(out) - 1, -1, -1):
        coef = rem[i + len(b) - 1] / b[-1]
        out[i] = coef
        for j, bc in enumerate(b):
            rem[i + j] -= coef * bc
    return _trim(out), _trim(rem)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------
# Gaussian integers, factorials, binomials
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def q_int(n: int, d: int = 1) -> LaurentQ:
    """The balanced q-integer [n] in q^d: (q^{dn} - q^{-dn}) / (q^d - q^{-d})."""
    if n < 0:
        return -q_int(-n, d)
    return LaurentQ({d * (n - 1 - 2 * k): 1 for k in range(n)})


@functools.lru_cache(maxsize=None)
def q_factorial(n: int, d: int = 1) -> LaurentQ:
    if n < 0:
        raise ValueError("negative factorial")
    result = LaurentQ(1)
    for k in range(2, n + 1):
        result = result * q_int(k, d)
    return result


@functools.lru_cache(maxsize=None)
def q_binomial(n: int, k: int, d: int = 1) -> LaurentQ:
    """The Gaussian binomial [n choose k] in q^d, computed as a q-factorial
    ratio (exact division, which certifies polynomiality)."""
    if k < 0 or k > n:
        return LaurentQ()
    num = LaurentQ(1)
    for j in range(k):
        num = num * q_int(n - j, d)
    return num.divexact(q_factorial(k, d))


# ---------------------------------------------------------------------------
# Specialization at a root of unity
# ---------------------------------------------------------------------------

def specialize(x, m: int) -> Cyclo:
    """Evaluate a generic-q scalar at the primitive m-th root of unity.

    Accepts ints, Fractions, LaurentQ, RationalQ.  Raises
    :class:`SpecializationError` if a RationalQ denominator vanishes at the
    root (an honest pole for our purposes; removable singularities never
    arise because RationalQ is kept reduced).
    """
    if isinstance(x, (int, Fraction)):
        return Cyclo(m, x)
    if isinstance(x, LaurentQ):
        eps = Cyclo.root(m)
        out = Cyclo.zero(m)
        for e, c in x._c.items():
            out = out + Cyclo.root(m, e) * c
        return out
    if isinstance(x, RationalQ):
        den = specialize(x.den, m)
        if not den:
            raise SpecializationError(f"denominator {x.den} vanishes at the primitive {m}-th root of unity")
        return specialize(x.num, m) / den
    raise TypeError(f"cannot specialize {type(x).__name__}")
