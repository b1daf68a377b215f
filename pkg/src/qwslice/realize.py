"""Realization of the twisted quantized algebra inside the untwisted one.

Given Cayley data for a Weyl element s, with skew pairing matrix c and an
integer solution n of d_j n_ij - d_i n_ji = c_ij, the assignment

    e_i -> X_i^+ L^{n_i},    f_i -> L^{-n_i} X_i^-,    L_i -> L_i

(n_i the i-th row of n) identifies the twisted algebra with a subalgebra of
the simply connected untwisted one.  Root vectors pick up only a torus
dressing: for beta = sum b_i alpha_i the images are X_beta^+ L^{a(beta)} and
L^{-a(beta)} X_beta^- with a(beta) = sum_i b_i n_i, so the straightening
relations of a normal ordering close on the dressed negative root vectors
with between-terms supported strictly inside the position window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .carter import CayleyData
from .pbw import (
    Algebra,
    Element,
    PBWContext,
    PBWError,
    exponent_vectors,
    generic_algebra,
)
from .coeffs import q_binomial, specialize
from .rootsys import NormalOrdering, Root, RootSystem
from . import linalg


class RealizeError(ValueError):
    pass


def _merge(out: dict, key, c) -> None:
    cur = out.get(key)
    new = c if cur is None else cur + c
    if new:
        out[key] = new
    elif cur is not None:
        del out[key]


def _specialize(c, m: int):
    num = specialize(c.num, m)
    den = specialize(c.den, m)
    if not den:
        raise RealizeError(f"coefficient {c} has a pole at the {m}-th root")
    return num * den.inverse()


@dataclass(frozen=True)
class Realization:
    """Images of the twisted generators inside an Algebra.

    ``c`` is the integer skew matrix entering the twisted relations and
    ``n_sol`` an integer solution of d_j n_ij - d_i n_ji = c_ij.  ``dual``
    marks the inverse-element picture, where c is negated and the solution
    has diagonal -1."""

    alg: Algebra
    c: tuple[tuple[int, ...], ...]
    n_sol: tuple[tuple[int, ...], ...]
    dual: bool = False

    def __post_init__(self) -> None:
        rs = self.alg.rs
        l = rs.rank
        if len(self.c) != l or len(self.n_sol) != l:
            raise RealizeError("matrix size does not match the rank")
        for i in range(l):
            for j in range(l):
                lhs = rs.d[j] * self.n_sol[i][j] - rs.d[i] * self.n_sol[j][i]
                if lhs != self.c[i][j]:
                    raise RealizeError(
                        f"n does not solve the twist equations at ({i},{j})"
                    )

    @property
    def rs(self) -> RootSystem:
        return self.alg.rs

    # -- generator images ---------------------------------------------------

    def e(self, i: int) -> Element:
        return self.alg.multiply(
            self.alg.x_plus(i), self.alg.l_monomial(self.n_sol[i])
        )

    def f(self, i: int) -> Element:
        neg = tuple(-v for v in self.n_sol[i])
        return self.alg.multiply(
            self.alg.l_monomial(neg), self.alg.x_minus(i)
        )

    def torus_vec(self, beta: Root) -> tuple[int, ...]:
        """a(beta) = sum_i b_i n_i for beta = sum b_i alpha_i."""
        l = self.rs.rank
        out = [0] * l
        for i, bi in enumerate(beta):
            if bi:
                for j in range(l):
                    out[j] += bi * self.n_sol[i][j]
        return tuple(out)

    def pair_exponent(self, alpha: Root, beta: Root) -> int:
        """(alpha, beta) + alpha^T c beta, the q-exponent in the
        straightening relation f_alpha f_beta = q^(..) f_beta f_alpha + lower."""
        e = int(self.rs.pairing(alpha, beta))
        for i, ai in enumerate(alpha):
            if not ai:
                continue
            for j, bj in enumerate(beta):
                if bj:
                    e += ai * bj * self.c[i][j]
        return e

    # -- twisted root vectors -----------------------------------------------

    def e_root(self, ctx: PBWContext, k: int) -> Element:
        """Image of the k-th positive root vector: X_beta^+ L^{a(beta)}."""
        beta = ctx.ordering.roots[k]
        return self.alg.multiply(
            ctx.table.plus[k], self.alg.l_monomial(self.torus_vec(beta))
        )

    def f_root(self, ctx: PBWContext, k: int) -> Element:
        """Image of the k-th negative root vector: L^{-a(beta)} X_beta^-."""
        beta = ctx.ordering.roots[k]
        neg = tuple(-v for v in self.torus_vec(beta))
        return self.alg.multiply(self.alg.l_monomial(neg), ctx.table.minus[k])

    def f_monomial_scalar(self, ctx: PBWContext, t: tuple[int, ...]):
        """kappa with f^t = kappa L^{-a(mu)} X^{-,t}, mu the weight of t.

        The factors multiply in decreasing position order, matching the PBW
        convention; kappa is the q-power accumulated by commuting each torus
        dressing to the left."""
        rs = self.rs
        e = 0
        acc = [0] * rs.rank
        for k in range(len(t) - 1, -1, -1):
            for _ in range(t[k]):
                v = self.torus_vec(ctx.ordering.roots[k])
                # L^{-v} of the new factor crosses the accumulated minus part
                e -= sum(rs.d[j] * acc[j] * v[j] for j in range(rs.rank))
                for j, bj in enumerate(ctx.ordering.roots[k]):
                    acc[j] += bj
        return self.alg.ring.q_power(e)


def standard_realization(rs: RootSystem, cayley: CayleyData,
                         m: int | None = None,
                         alg: Algebra | None = None) -> Realization:
    """The realization attached to s, with the distinguished solution n."""
    if alg is None:
        alg = generic_algebra(rs) if m is None else Algebra(rs, m)
    return Realization(alg=alg, c=cayley.c, n_sol=cayley.n_int)


def dual_twist_solution(cayley: CayleyData) -> tuple[tuple[int, ...], ...]:
    """Solution -n_ij - delta_ij of the twist equations for -c, used to
    identify the algebra twisted by the inverse element."""
    n = cayley.n_int
    l = len(n)
    return tuple(
        tuple(-n[i][j] - (1 if i == j else 0) for j in range(l))
        for i in range(l)
    )


def dual_realization(rs: RootSystem, cayley: CayleyData,
                     m: int | None = None,
                     alg: Algebra | None = None) -> Realization:
    if alg is None:
        alg = generic_algebra(rs) if m is None else Algebra(rs, m)
    neg_c = tuple(tuple(-v for v in row) for row in cayley.c)
    return Realization(alg=alg, c=neg_c, n_sol=dual_twist_solution(cayley),
                       dual=True)


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationsReport:
    """Which twisted defining relations hold for the generator images.

    The cross and Serre relations carry a q^{c} twist whose index order is a
    convention; both orders are tried and the one that holds is recorded as
    "ij" or "ji"."""

    torus_ok: bool
    cross_diag_ok: bool
    cross_ok: bool
    cross_orientation: str | None
    serre_plus_ok: bool
    serre_plus_orientation: str | None
    serre_minus_ok: bool
    serre_minus_orientation: str | None
    pairs_checked: int

    def all_ok(self) -> bool:
        return (self.torus_ok and self.cross_diag_ok and self.cross_ok
                and self.serre_plus_ok and self.serre_minus_ok)


def _cross_holds(real: Realization, i: int, j: int, twist: int) -> bool:
    alg = real.alg
    lhs = alg.multiply(real.e(i), real.f(j))
    rhs = alg.multiply(real.f(j), real.e(i)).scale(alg.ring.q_power(twist))
    diff = lhs - rhs
    if i == j:
        qi = alg.ring.q_power(alg.rs.d[i])
        qinv = alg.ring.q_power(-alg.rs.d[i])
        kv = alg.kvecs[i]
        casimir = (
            alg.l_monomial(kv) - alg.l_monomial(tuple(-v for v in kv))
        ).scale(alg.ring.invert(qi - qinv))
        diff = diff - casimir
    return alg.is_zero(diff)


def _serre_holds(real: Realization, sign: int, i: int, j: int,
                 twist: int) -> bool:
    """sum_r (-1)^r q^{r twist} [n; r]_{q_i} g_i^{n-r} g_j g_i^r = 0 with
    n = 1 - a_ij, g the positive (sign=+1) or negative images."""
    alg = real.alg
    rs = alg.rs
    n = 1 - rs.a[i][j]
    gi = real.e(i) if sign > 0 else real.f(i)
    gj = real.e(j) if sign > 0 else real.f(j)
    powers = [alg.one()]
    for _ in range(n):
        powers.append(alg.multiply(powers[-1], gi))
    total = alg.zero()
    for r in range(n + 1):
        c = alg.ring.from_laurent(q_binomial(n, r, rs.d[i]))
        c = c * alg.ring.q_power(r * twist)
        if r % 2:
            c = -c
        term = alg.multiply(powers[n - r], alg.multiply(gj, powers[r]))
        total = total + term.scale(c)
    return alg.is_zero(total)


def defining_relations_report(real: Realization) -> RelationsReport:
    alg = real.alg
    rs = alg.rs
    l = rs.rank

    torus_ok = True
    for i in range(l):
        li = alg.l_monomial(tuple(1 if j == i else 0 for j in range(l)))
        for j in range(l):
            q = alg.ring.q_power(rs.d[i] if i == j else 0)
            lhs = alg.multiply(li, real.e(j))
            rhs = alg.multiply(real.e(j), li).scale(q)
            torus_ok = torus_ok and alg.is_zero(lhs - rhs)
            qm = alg.ring.q_power(-rs.d[i] if i == j else 0)
            lhs = alg.multiply(li, real.f(j))
            rhs = alg.multiply(real.f(j), li).scale(qm)
            torus_ok = torus_ok and alg.is_zero(lhs - rhs)

    cross_diag_ok = all(_cross_holds(real, i, i, 0) for i in range(l))

    pairs = [(i, j) for i in range(l) for j in range(l) if i != j]

    cross_orientation = None
    for name in ("ij", "ji"):
        ok = all(
            _cross_holds(
                real, i, j,
                real.c[i][j] if name == "ij" else real.c[j][i],
            )
            for i, j in pairs
        )
        if ok:
            cross_orientation = name
            break

    serre_orient: dict[int, str | None] = {1: None, -1: None}
    for sign in (1, -1):
        for name in ("ij", "ji"):
            ok = all(
                _serre_holds(
                    real, sign, i, j,
                    real.c[i][j] if name == "ij" else real.c[j][i],
                )
                for i, j in pairs
            )
            if ok:
                serre_orient[sign] = name
                break

    return RelationsReport(
        torus_ok=torus_ok,
        cross_diag_ok=cross_diag_ok,
        cross_ok=cross_orientation is not None,
        cross_orientation=cross_orientation,
        serre_plus_ok=serre_orient[1] is not None,
        serre_plus_orientation=serre_orient[1],
        serre_minus_ok=serre_orient[-1] is not None,
        serre_minus_orientation=serre_orient[-1],
        pairs_checked=len(pairs),
    )


# ---------------------------------------------------------------------------
# straightening relations on dressed root vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentRelation:
    """f_alpha f_beta = q^{pair_exponent} f_beta f_alpha + sum coeffs[t] f^t
    for ordering positions a < b, t supported strictly between them.

    ``coeffs`` is keyed by full-length exponent vectors; f^t multiplies in
    decreasing position order."""

    alpha: Root
    beta: Root
    position_pair: tuple[int, int]
    pair_exponent: int
    coeffs: dict = field(repr=False)
    window_ok: bool = True


def segment_relation(real: Realization, ctx: PBWContext,
                     pos_a: int, pos_b: int) -> SegmentRelation:
    """Straighten the dressed pair at positions a < b exactly.

    The common torus dressing L^{-a(alpha+beta)} is stripped by a left
    torus multiple, which crosses no generator letters, and the remaining
    one-sided element is solved in PBW coordinates.  The solve runs in the
    generic algebra, where the aggregated one-weight conversion is fast and
    faithful, and the constants specialize when the realization lives at a
    root of unity."""
    alg = real.alg
    if not 0 <= pos_a < pos_b < len(ctx.ordering.roots):
        raise RealizeError("need ordering positions a < b")
    alpha = ctx.ordering.roots[pos_a]
    beta = ctx.ordering.roots[pos_b]

    if alg.ring.generic:
        gen_real, gen_ctx = real, ctx
    else:
        gen_alg = generic_algebra(alg.rs)
        gen_real = Realization(alg=gen_alg, c=real.c, n_sol=real.n_sol,
                               dual=real.dual)
        gen_ctx = gen_alg.context(ctx.ordering)

    galg = gen_real.alg
    fa = gen_real.f_root(gen_ctx, pos_a)
    fb = gen_real.f_root(gen_ctx, pos_b)
    p = real.pair_exponent(alpha, beta)
    g = galg.multiply(fa, fb) - galg.multiply(fb, fa).scale(
        galg.ring.q_power(p)
    )
    total = tuple(x + y for x, y in zip(alpha, beta))
    strip = galg.l_monomial(gen_real.torus_vec(total))
    stripped = galg.multiply(strip, g)
    flat: dict = {}
    window_ok = True
    for (r, s, t), c in stripped.terms.items():
        if any(r) or any(s):
            window_ok = False
            continue
        _merge(flat, ((), galg.zero_svec, t), c)
    raw = gen_ctx.one_sided_coords(-1, Element(galg, flat))

    coeffs: dict = {}
    for t, c in raw.items():
        if not c:
            continue
        if any(t[k] for k in range(len(t)) if k <= pos_a or k >= pos_b):
            window_ok = False
            continue
        if not alg.ring.generic:
            c = _specialize(c, alg.ring.m)
            if not c:
                continue
        # PBW coefficient of X^{-,t} over to the f^t normalization
        kappa = real.f_monomial_scalar(ctx, t)
        coeffs[t] = c * alg.ring.invert(kappa)
    return SegmentRelation(
        alpha=alpha,
        beta=beta,
        position_pair=(pos_a, pos_b),
        pair_exponent=p,
        coeffs=coeffs,
        window_ok=window_ok,
    )


def verify_segment_relation(real: Realization, ctx: PBWContext,
                            rel: SegmentRelation) -> bool:
    """Recompute the relation residual in the engine; an exact certificate."""
    alg = real.alg
    pos_a, pos_b = rel.position_pair
    fa = real.f_root(ctx, pos_a)
    fb = real.f_root(ctx, pos_b)
    total = alg.multiply(fa, fb)
    total = total - alg.multiply(fb, fa).scale(
        alg.ring.q_power(rel.pair_exponent)
    )
    for t, c in rel.coeffs.items():
        mono = alg.one()
        for k in range(len(t) - 1, -1, -1):
            for _ in range(t[k]):
                mono = alg.multiply(mono, real.f_root(ctx, k))
        total = total - mono.scale(c)
    return alg.is_zero(total)


# ---------------------------------------------------------------------------
# the nilpotent characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChiResidual:
    """Residual of one straightening relation under the family of characters
    f_{gamma_i} -> c_i, zero on the other dressed root vectors.

    ``residual`` maps exponent vectors in the c_i (indexed by gamma) to
    scalars; the relation is annihilated for every character choice iff the
    dict is empty."""

    position_pair: tuple[int, int]
    residual: dict = field(repr=False)

    @property
    def ok(self) -> bool:
        return not self.residual


def chi_residual(real: Realization, rel: SegmentRelation,
                 gamma_positions: tuple[int, ...]) -> ChiResidual:
    ring = real.alg.ring
    gp = {p: idx for idx, p in enumerate(gamma_positions)}
    residual: dict = {}

    def acc(key: tuple[int, ...], val) -> None:
        cur = residual.get(key)
        new = val if cur is None else cur + val
        if new:
            residual[key] = new
        elif cur is not None:
            del residual[key]

    pos_a, pos_b = rel.position_pair
    if pos_a in gp and pos_b in gp:
        key = [0] * len(gamma_positions)
        key[gp[pos_a]] += 1
        key[gp[pos_b]] += 1
        acc(tuple(key), ring.one() - ring.q_power(rel.pair_exponent))
    for t, c in rel.coeffs.items():
        if any(e and k not in gp for k, e in enumerate(t)):
            continue
        key = [0] * len(gamma_positions)
        for k, e in enumerate(t):
            if e:
                key[gp[k]] += e
        acc(tuple(key), -c)
    return ChiResidual(position_pair=rel.position_pair, residual=residual)


def chi_annihilates_segment(real: Realization, ctx: PBWContext,
                            seg_start: int, seg_end: int,
                            gamma_positions: tuple[int, ...],
                            pairs: list[tuple[int, int]] | None = None,
                            ) -> list[ChiResidual]:
    """Residuals for all (or the given) position pairs inside the segment."""
    if pairs is None:
        pairs = [
            (a, b)
            for a in range(seg_start, seg_end)
            for b in range(a + 1, seg_end)
        ]
    out = []
    for a, b in pairs:
        rel = segment_relation(real, ctx, a, b)
        if not rel.window_ok:
            raise RealizeError(
                f"straightening at {(a, b)} leaves the position window"
            )
        out.append(chi_residual(real, rel, gamma_positions))
    return out


# ---------------------------------------------------------------------------
# injectivity in low filtered degree
# ---------------------------------------------------------------------------

def injectivity_rank(real: Realization, degree: int = 4) -> tuple[int, int]:
    """Rank of the coordinate matrix of all products e^r f^t with
    |r| + |t| <= degree, against the number of such labels.

    Equality certifies the realization is injective on the spanned filtered
    piece; the torus acts identically so no L-labels are needed."""
    alg = real.alg
    l = alg.rs.rank
    ctx = alg.default_context()

    labels: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def grow(vec: list[int], budget: int, out: list[tuple[int, ...]]) -> None:
        if len(vec) == l:
            out.append(tuple(vec))
            return
        for v in range(budget + 1):
            grow(vec + [v], budget - v, out)

    for total in range(degree + 1):
        for re_part in range(total + 1):
            rr: list[tuple[int, ...]] = []
            tt: list[tuple[int, ...]] = []
            grow([], re_part, rr)
            grow([], total - re_part, tt)
            for r in rr:
                if sum(r) != re_part:
                    continue
                for t in tt:
                    if sum(t) == total - re_part:
                        labels.append((r, t))
    labels = sorted(set(labels))

    rows = []
    keys: dict = {}
    coords = []
    for r, t in labels:
        el = alg.one()
        for i in range(l):
            for _ in range(r[i]):
                el = alg.multiply(el, real.e(i))
        for i in range(l):
            for _ in range(t[i]):
                el = alg.multiply(el, real.f(i))
        pb = ctx.to_pbw(el)
        vec = {}
        for k, c in pb.terms.items():
            keys.setdefault(k, len(keys))
            vec[k] = c
        coords.append(vec)
    zero = alg.ring.zero()
    for vec in coords:
        row = [zero] * len(keys)
        for k, c in vec.items():
            row[keys[k]] = c
        rows.append(row)
    return linalg.rank(rows), len(labels)
