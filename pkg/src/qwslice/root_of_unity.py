"""The finite dimensional quotient at an odd root of unity.

At a primitive m-th root of unity the m-th powers of the root vectors and
of the torus generators are central, and a character eta of the subalgebra
they generate cuts out a quotient of dimension m^(2D + rank) with basis
X^{+,r} L^s X^{-,t}, all exponents below m.  The quotient carries a
symmetrizing form built from the coefficient of the top basis monomial,
and its simple modules are reached from modules induced by one dimensional
characters of the nonnegative part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .coeffs import Cyclo
from .pbw import Algebra, Element, PBWContext, PBWElement, PBWError
from .rootsys import NormalOrdering


class RootOfUnityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# central elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralityReport:
    """Outcome of commuting every candidate central element with every
    generator, exactly at the root of unity."""

    commuting: int
    failed: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failed


def central_power(ctx: PBWContext, sign: int, k: int) -> Element:
    """(X_{beta_k}^{+-})^m as an engine element."""
    m = ctx.alg.ring.m
    if m is None:
        raise RootOfUnityError("central powers need a root of unity")
    t = tuple(m if j == k else 0 for j in range(len(ctx.table.plus)))
    return ctx.monomial_element(sign, t)


def torus_power(alg: Algebra, i: int) -> Element:
    m = alg.ring.m
    if m is None:
        raise RootOfUnityError("central powers need a root of unity")
    return alg.l_monomial(tuple(m if j == i else 0 for j in range(alg.rs.rank)))


def centrality_report(ctx: PBWContext) -> CentralityReport:
    """Check [z, g] = 0 for every candidate z and every generator g.

    Candidates are the m-th powers of all root vectors of the ordering and
    of the torus generators; generators run over X_i^+, X_i^-, L_i."""
    alg = ctx.alg
    l = alg.rs.rank
    dd = len(ctx.table.plus)
    gens = []
    for i in range(l):
        gens.append(("e", i, alg.x_plus(i)))
        gens.append(("f", i, alg.x_minus(i)))
        gens.append(("l", i, alg.l_monomial(tuple(1 if j == i else 0 for j in range(l)))))
    cands = []
    for k in range(dd):
        cands.append(("x+", k, central_power(ctx, 1, k)))
        cands.append(("x-", k, central_power(ctx, -1, k)))
    for i in range(l):
        cands.append(("l^m", i, torus_power(alg, i)))
    failed = []
    count = 0
    for cname, ck, z in cands:
        for gname, gi, g in gens:
            comm = alg.multiply(z, g) - alg.multiply(g, z)
            if alg.is_zero(comm):
                count += 1
            else:
                failed.append((cname, ck, gname, gi))
    return CentralityReport(commuting=count, failed=tuple(failed))


# ---------------------------------------------------------------------------
# central characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralCharacter:
    """Values of a character on the central m-th powers.

    ``x_plus[k]`` and ``x_minus[k]`` are the values on the plain powers
    (X_{beta_k}^{+-})^m for the positions of ``ordering``; ``l[i]`` the
    values on L_i^m, necessarily invertible.  The classical normalization
    multiplies the x-values by the unit (q_beta - q_beta^{-1})^m; plain
    powers keep the reduction arithmetic integral."""

    m: int
    ordering: NormalOrdering
    x_plus: tuple
    x_minus: tuple
    l: tuple

    def __post_init__(self) -> None:
        if any(not v for v in self.l):
            raise RootOfUnityError("torus values of a character must be nonzero")
        dd = len(self.ordering.roots)
        if len(self.x_plus) != dd or len(self.x_minus) != dd:
            raise RootOfUnityError("one x-value per ordering position required")

    def scaled_x_value(self, rs, sign: int, k: int):
        """Value on the unit-rescaled power (q_beta - q_beta^{-1})^m X^m,
        the classical normalization of the central coordinates."""
        beta = self.ordering.roots[k]
        d_beta = int(rs.pairing(beta, beta)) // 2
        unit = (Cyclo.root(self.m, d_beta) - Cyclo.root(self.m, -d_beta)) ** self.m
        return unit * (self.x_plus[k] if sign > 0 else self.x_minus[k])


def trivial_character(m: int, ordering: NormalOrdering, rank: int) -> CentralCharacter:
    dd = len(ordering.roots)
    zero = Cyclo.zero(m)
    one = Cyclo.one(m)
    return CentralCharacter(
        m=m,
        ordering=ordering,
        x_plus=(zero,) * dd,
        x_minus=(zero,) * dd,
        l=(one,) * rank,
    )


# ---------------------------------------------------------------------------
# the quotient algebra
# ---------------------------------------------------------------------------

class UEta:
    """The quotient of the root-of-unity algebra by a central character.

    Basis labels are PBW exponent triples (r, s, t) with all entries in
    [0, m); the reduction divides out m-th powers against the character
    values.  Basis enumeration is guarded by ``dim_budget``; the reduction
    and products never materialize the basis."""

    def __init__(self, ctx: PBWContext, eta: CentralCharacter,
                 dim_budget: int = 2000):
        alg = ctx.alg
        if alg.ring.m is None:
            raise RootOfUnityError("the quotient needs a root of unity")
        if eta.m != alg.ring.m:
            raise RootOfUnityError("character and algebra roots differ")
        if eta.ordering.roots != ctx.ordering.roots:
            raise RootOfUnityError("character uses a different ordering")
        self.ctx = ctx
        self.alg = alg
        self.eta = eta
        self.m = alg.ring.m
        self.D = len(ctx.ordering.roots)
        self.rank = alg.rs.rank
        self.dim = self.m ** (2 * self.D + self.rank)
        self.dim_budget = dim_budget
        self._linv = tuple(v.inverse() for v in eta.l)
        self._straightener = None

    def straightener(self) -> "MinusStraightener":
        if self._straightener is None:
            self._straightener = MinusStraightener(self.ctx)
        return self._straightener

    # -- reduction ------------------------------------------------------------

    def reduce_key(self, r, s, t):
        """Reduced label and the character multiplier split off by the
        division; None as label when the coefficient dies."""
        m = self.m
        coeff = self.alg.ring.one()
        rr = []
        for k, e in enumerate(r):
            q, rem = divmod(e, m)
            rr.append(rem)
            if q:
                v = self.eta.x_plus[k]
                if not v:
                    return None, None
                coeff = coeff * v ** q
        ss = []
        for i, e in enumerate(s):
            q, rem = divmod(e, m)
            ss.append(rem)
            if q > 0:
                coeff = coeff * self.eta.l[i] ** q
            elif q < 0:
                coeff = coeff * self._linv[i] ** (-q)
        tt = []
        for k, e in enumerate(t):
            q, rem = divmod(e, m)
            tt.append(rem)
            if q:
                v = self.eta.x_minus[k]
                if not v:
                    return None, None
                coeff = coeff * v ** q
        return (tuple(rr), tuple(ss), tuple(tt)), coeff

    def reduce(self, x: PBWElement) -> dict:
        out: dict = {}
        for (r, s, t), c in x.terms.items():
            key, mult = self.reduce_key(r, s, t)
            if key is None:
                continue
            _merge(out, key, c * mult)
        return out

    def reduce_element(self, el: Element) -> dict:
        return self.reduce(self.ctx.to_pbw(el))

    # -- products -------------------------------------------------------------

    def zero_scalar(self):
        return self.alg.ring.zero()

    def key_element(self, key) -> Element:
        r, s, t = key
        el = self.ctx.monomial_element(1, r)
        el = self.alg.multiply(el, self.alg.l_monomial(s))
        return self.alg.multiply(el, self.ctx.monomial_element(-1, t))

    def product_coeffs(self, a, b) -> dict:
        prod = self.alg.multiply(self.key_element(a), self.key_element(b))
        return self.reduce_element(prod)

    # -- basis ------------------------------------------------------------------

    def basis_keys(self) -> list:
        if self.dim > self.dim_budget:
            raise RootOfUnityError(
                f"dimension {self.dim} exceeds the budget {self.dim_budget}"
            )
        m, D, l = self.m, self.D, self.rank
        ranges: list = []

        def axis(n):
            out = [()]
            for _ in range(n):
                out = [v + (e,) for v in out for e in range(m)]
            return out

        rs_part = axis(D)
        s_part = axis(l)
        keys = []
        for r in rs_part:
            for s in s_part:
                for t in rs_part:
                    keys.append((r, s, t))
        return keys

    @property
    def top_key(self):
        m = self.m
        return ((m - 1,) * self.D, (m - 1,) * self.rank, (m - 1,) * self.D)

    def associativity_check(self, seed: int = 0, trials: int = 12) -> bool:
        """(ab)c = a(bc) on random basis labels, exactly."""
        rng = random.Random(seed)
        m = self.m

        def rand_key():
            return (
                tuple(rng.randrange(m) for _ in range(self.D)),
                tuple(rng.randrange(m) for _ in range(self.rank)),
                tuple(rng.randrange(m) for _ in range(self.D)),
            )

        for _ in range(trials):
            a, b, c = rand_key(), rand_key(), rand_key()
            left: dict = {}
            for k, v in self.product_coeffs(a, b).items():
                for k2, v2 in self.product_coeffs(k, c).items():
                    _merge(left, k2, v * v2)
            right: dict = {}
            for k, v in self.product_coeffs(b, c).items():
                for k2, v2 in self.product_coeffs(a, k).items():
                    _merge(right, k2, v * v2)
            if left != right:
                return False
        return True


def _merge(out: dict, key, c) -> None:
    cur = out.get(key)
    new = c if cur is None else cur + c
    if new:
        out[key] = new
    elif cur is not None:
        del out[key]


class MinusStraightener:
    """Products in the negative subalgebra in PBW coordinates.

    Left multiplication by a root vector letter is rewritten with the cached
    straightening relations instead of sandwich arithmetic, which keeps the
    module actions and the bounded quotients off the shuffle-solve path.
    Exponents are unbounded here; reduction by a character happens outside."""

    def __init__(self, ctx: PBWContext):
        self.ctx = ctx
        self.ring = ctx.alg.ring
        self.D = len(ctx.ordering.roots)
        self._letter: dict = {}

    def multiply_letter(self, p: int, t: tuple) -> dict:
        """X_{beta_p}^- times the PBW monomial t, as t' -> coefficient."""
        key = (p, t)
        cached = self._letter.get(key)
        if cached is not None:
            return cached
        active_above = [q for q in range(p + 1, self.D) if t[q]]
        if not active_above:
            out = {t[:p] + (t[p] + 1,) + t[p + 1:]: self.ring.one()}
        else:
            q = active_above[-1]
            rest = t[:q] + (t[q] - 1,) + t[q + 1:]
            rel = self.ctx.ls_relation(p, q)
            out: dict = {}
            for t2, c in self.multiply_letter(p, rest).items():
                new = t2[:q] + (t2[q] + 1,) + t2[q + 1:]
                _merge(out, new, c * rel.leading)
            for u, cu in rel.between.items():
                for t2, c2 in self.multiply_pbw(u, {rest: cu}).items():
                    _merge(out, t2, c2)
        self._letter[key] = out
        return out

    def apply_letter(self, p: int, vec: dict) -> dict:
        out: dict = {}
        for t, c in vec.items():
            for t2, c2 in self.multiply_letter(p, t).items():
                _merge(out, t2, c * c2)
        return out

    def multiply_pbw(self, u: tuple, vec: dict) -> dict:
        """X^{-,u} times a coordinate vector; letters fold right to left."""
        for p in range(self.D):
            for _ in range(u[p]):
                vec = self.apply_letter(p, vec)
        return vec

    def multiply(self, u: tuple, w: tuple) -> dict:
        return self.multiply_pbw(u, {w: self.ring.one()})


# ---------------------------------------------------------------------------
# the symmetrizing form
# ---------------------------------------------------------------------------

def frobenius_rank(algebra_like) -> tuple[int, int]:
    """Rank of the Gram matrix of B(a, b) = top coefficient of ab.

    Works for any finite dimensional algebra object exposing basis_keys,
    product_coeffs and top_key; full rank certifies the form pairs the
    algebra with itself perfectly."""
    keys = algebra_like.basis_keys()
    top = algebra_like.top_key
    zero = algebra_like.zero_scalar()
    n = len(keys)
    rows = []
    for a in keys:
        row = []
        for b in keys:
            c = algebra_like.product_coeffs(a, b).get(top)
            row.append(c if c is not None else zero)
        rows.append(row)
    return linalg.rank(rows), n


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleRep:
    """Matrices of the generators on a finite dimensional module.

    Row convention: column j of e[i] holds the coordinates of E_i acting on
    the j-th basis vector."""

    dim: int
    rank: int
    e: tuple
    f: tuple
    l: tuple
    l_inv: tuple
    label: str = ""
    basis: tuple = ()

    def generator_list(self) -> list:
        return list(self.e) + list(self.f) + list(self.l) + list(self.l_inv)


def baby_verma(U: UEta, lam) -> ModuleRep:
    """The highest weight type module with basis X^{-,t} v, t below m
    componentwise, induced from X_i^+ v = 0, L_i v = lam_i v.

    Requires eta to vanish on the positive central powers, so the quotient
    acts, and lam_i^m = eta(l_i).  The engine PBW order keeps the positive
    letters on the left, so the raising action is evaluated by commutator
    recursion on the leftmost negative factor instead of a direct PBW
    conversion."""
    alg, ctx, m = U.alg, U.ctx, U.m
    if any(v for v in U.eta.x_plus):
        raise RootOfUnityError(
            "induction needs eta = 0 on the positive powers"
        )
    lam = tuple(lam)
    if len(lam) != U.rank:
        raise RootOfUnityError("one torus value per simple root required")
    for i, v in enumerate(lam):
        if v ** m != U.eta.l[i]:
            raise RootOfUnityError(f"lam_{i}^m differs from eta(l_{i})")
    lam_inv = tuple(v.inverse() for v in lam)

    labels: list = [()]
    for _ in range(U.D):
        labels = [v + (e,) for v in labels for e in range(m)]
    index = {t: j for j, t in enumerate(labels)}
    n = len(labels)
    zero = alg.ring.zero()
    roots = ctx.ordering.roots
    rsd = alg.rs.d

    def weight(t):
        out = [0] * U.rank
        for k, e in enumerate(t):
            if e:
                for j in range(U.rank):
                    out[j] += e * roots[k][j]
        return out

    def torus_scalar(s, t):
        # L^s on X^{-,t} v: cross the negative part, then hit the
        # highest weight vector
        mu = weight(t)
        scal = alg.ring.q_power(
            -sum(rsd[j] * s[j] * mu[j] for j in range(U.rank))
        )
        for i, si in enumerate(s):
            if si > 0:
                scal = scal * lam[i] ** si
            elif si < 0:
                scal = scal * lam_inv[i] ** (-si)
        return scal

    straight = U.straightener()

    def eta_reduce(vec: dict) -> dict:
        out: dict = {}
        for t, c in vec.items():
            key, mult = U.reduce_key((), (), t)
            if key is None:
                continue
            _merge(out, key[2], c * mult)
        return out

    comm_cache: dict = {}

    def commutator(i: int, k: int) -> list:
        """[X_i^+, X_{beta_k}^-] expanded as (svec, pbw coords) pairs."""
        cached = comm_cache.get((i, k))
        if cached is None:
            fk = ctx.table.minus[k]
            ei = alg.x_plus(i)
            comm = alg.multiply(ei, fk) - alg.multiply(fk, ei)
            cached = []
            for (p, s, w), c in comm.terms.items():
                if p:
                    raise RootOfUnityError(
                        "raising commutator kept a positive letter"
                    )
                for tw, cw in ctx.word_coords(-1, w).items():
                    cached.append((s, tw, c * cw))
            comm_cache[(i, k)] = cached
        return cached

    e_memo: dict = {}

    def act_e(i: int, t) -> dict:
        cached = e_memo.get((i, t))
        if cached is not None:
            return cached
        if not any(t):
            e_memo[(i, t)] = {}
            return {}
        k = max(j for j, e in enumerate(t) if e)
        head = t[:k] + (t[k] - 1,) + t[k + 1:]
        out: dict = {}
        # [e_i, f_{beta_k}] applied to the shorter vector
        for s, tw, c in commutator(i, k):
            moved = eta_reduce(straight.multiply_pbw(tw, {head: c}))
            for tt, cc in moved.items():
                _merge(out, tt, cc * torus_scalar(s, tt))
        # f_{beta_k} times the recursive raising action
        for tt, cc in eta_reduce(
            straight.apply_letter(k, act_e(i, head))
        ).items():
            _merge(out, tt, cc)
        e_memo[(i, t)] = out
        return out

    def cols_from(action) -> list:
        cols = [[zero] * n for _ in range(n)]
        for t, j in index.items():
            for tt, c in action(t).items():
                cols[index[tt]][j] = cols[index[tt]][j] + c
        return cols

    f_coords = [ctx.word_coords(-1, (i,)) for i in range(U.rank)]

    def act_f(i: int, t) -> dict:
        out: dict = {}
        for tw, cw in f_coords[i].items():
            for tt, cc in eta_reduce(
                straight.multiply_pbw(tw, {t: cw})
            ).items():
                _merge(out, tt, cc)
        return out

    e_mats = tuple(
        cols_from(lambda t, i=i: act_e(i, t)) for i in range(U.rank)
    )
    f_mats = tuple(
        cols_from(lambda t, i=i: act_f(i, t)) for i in range(U.rank)
    )

    def diag_torus(svec):
        cols = [[zero] * n for _ in range(n)]
        for t, j in index.items():
            cols[j][j] = torus_scalar(svec, t)
        return cols

    l_mats = []
    linv_mats = []
    for i in range(U.rank):
        svec = tuple(1 if j == i else 0 for j in range(U.rank))
        l_mats.append(diag_torus(svec))
        linv_mats.append(diag_torus(tuple(-v for v in svec)))
    return ModuleRep(
        dim=n,
        rank=U.rank,
        e=e_mats,
        f=f_mats,
        l=tuple(l_mats),
        l_inv=tuple(linv_mats),
        label="verma(" + ",".join(str(v) for v in lam) + ")",
        basis=tuple(labels),
    )


def module_relations_ok(U: UEta, rep: ModuleRep) -> bool:
    """The generator matrices satisfy the defining relations of the
    untwisted algebra: torus conjugation, cross relations, Serre."""
    alg = U.alg
    rs = alg.rs
    n = rep.dim
    zero = alg.ring.zero()
    one = alg.ring.one()
    ident = linalg.identity_matrix(n, one, zero)

    def eq(a, b):
        return all(
            a[i][j] == b[i][j] for i in range(n) for j in range(n)
        )

    def scale(mat, c):
        return [[v * c for v in row] for row in mat]

    for i in range(U.rank):
        if not eq(linalg.mat_mul(rep.l[i], rep.l_inv[i]), ident):
            return False
        for j in range(U.rank):
            q = alg.ring.q_power(rs.d[i] if i == j else 0)
            lhs = linalg.mat_mul(rep.l[i], rep.e[j])
            rhs = scale(linalg.mat_mul(rep.e[j], rep.l[i]), q)
            if not eq(lhs, rhs):
                return False
            qm = alg.ring.q_power(-rs.d[i] if i == j else 0)
            lhs = linalg.mat_mul(rep.l[i], rep.f[j])
            rhs = scale(linalg.mat_mul(rep.f[j], rep.l[i]), qm)
            if not eq(lhs, rhs):
                return False
    for i in range(U.rank):
        for j in range(U.rank):
            lhs = linalg.mat_mul(rep.e[i], rep.f[j])
            rhs = linalg.mat_mul(rep.f[j], rep.e[i])
            diff = [
                [lhs[a][b] - rhs[a][b] for b in range(n)] for a in range(n)
            ]
            if i == j:
                qi = alg.ring.q_power(rs.d[i])
                inv = (qi - qi.inverse()).inverse()
                ki = linalg.mat_mul
                k_mat = ident
                k_inv = ident
                for p in range(U.rank):
                    a_pi = rs.a[p][i]
                    for _ in range(abs(a_pi)):
                        k_mat = ki(k_mat, rep.l[p] if a_pi > 0 else rep.l_inv[p])
                        k_inv = ki(k_inv, rep.l_inv[p] if a_pi > 0 else rep.l[p])
                target = [
                    [(k_mat[a][b] - k_inv[a][b]) * inv for b in range(n)]
                    for a in range(n)
                ]
            else:
                target = [[zero] * n for _ in range(n)]
            if not eq(diff, target):
                return False
    return True


def direct_sum(reps, label: str = "") -> ModuleRep:
    reps = list(reps)
    if not reps:
        raise RootOfUnityError("empty direct sum")
    rank = reps[0].rank
    n = sum(r.dim for r in reps)
    some = reps[0].e[0][0][0] if reps[0].dim else None
    zero = some - some

    def block(mats):
        out = [[zero] * n for _ in range(n)]
        off = 0
        for rep, mat in zip(reps, mats):
            d = rep.dim
            for a in range(d):
                for b in range(d):
                    out[off + a][off + b] = mat[a][b]
            off += d
        return out

    return ModuleRep(
        dim=n,
        rank=rank,
        e=tuple(block([r.e[i] for r in reps]) for i in range(rank)),
        f=tuple(block([r.f[i] for r in reps]) for i in range(rank)),
        l=tuple(block([r.l[i] for r in reps]) for i in range(rank)),
        l_inv=tuple(block([r.l_inv[i] for r in reps]) for i in range(rank)),
        label=label or "+".join(r.label for r in reps),
    )


# ---------------------------------------------------------------------------
# simples
# ---------------------------------------------------------------------------

def burnside_dim(rep: ModuleRep) -> int:
    """Dimension of the subalgebra of End(V) generated by the action.

    Equal to dim(V)^2 iff the module is simple with scalar endomorphisms."""
    n = rep.dim
    gens = rep.generator_list()
    zero = rep.e[0][0][0] - rep.e[0][0][0] if n else None
    one_mat = linalg.identity_matrix(n, _one_like(zero), zero)

    pivots: dict = {}
    basis: list = []

    def vec(mat):
        return [mat[a][b] for a in range(n) for b in range(n)]

    def add(mat) -> bool:
        v = vec(mat)
        for p, row in pivots.items():
            if v[p]:
                c = v[p]
                v = [x - c * y for x, y in zip(v, row)]
        for p, x in enumerate(v):
            if x:
                inv = x.inverse()
                pivots[p] = [y * inv for y in v]
                return True
        return False

    queue = [one_mat]
    add(one_mat)
    basis.append(one_mat)
    while queue:
        mat = queue.pop()
        for g in gens:
            prod = linalg.mat_mul(mat, g)
            if add(prod):
                basis.append(prod)
                queue.append(prod)
    return len(pivots)


def _one_like(zero):
    return zero + 1


def intertwiner_space(a: ModuleRep, b: ModuleRep) -> int:
    """dim Hom(a, b) over the acting algebra, by solving X rho_a = rho_b X."""
    if a.rank != b.rank:
        raise RootOfUnityError("modules over different algebras")
    na, nb = a.dim, b.dim
    zero = a.e[0][0][0] - a.e[0][0][0]
    rows = []
    for ga, gb in zip(a.generator_list(), b.generator_list()):
        # equation (gb X - X ga)[p][q] = 0, unknowns X[r][c]
        for p in range(nb):
            for q in range(na):
                row = [zero] * (na * nb)
                for r in range(nb):
                    row[r * na + q] = row[r * na + q] + gb[p][r]
                for c in range(na):
                    row[p * na + c] = row[p * na + c] - ga[c][q]
                rows.append(row)
    return na * nb - linalg.rank(rows)


def rational_mth_roots(value, m: int) -> list:
    """All solutions x = r eps^k in Q(eps) of x^m = value with r rational.

    The torsion-times-rational subgroup is where all the characters used in
    the tests live; a value outside it reports no roots."""
    if isinstance(value, Cyclo):
        if not value.is_rational():
            return []
        frac = value.rational_value()
    else:
        frac = Fraction(value)
    if frac == 0:
        return [Cyclo.zero(m)]
    r = _rational_mth_root(frac, m)
    if r is None:
        return []
    base = Cyclo(m, r)
    return [base * Cyclo.root(m, k) for k in range(m)]


def _rational_mth_root(x: Fraction, m: int):
    sign = -1 if x < 0 else 1
    x = abs(x)
    num = _int_root(x.numerator, m)
    den = _int_root(x.denominator, m)
    if num is None or den is None:
        return None
    # odd m: the sign passes through the root
    return Fraction(sign * num, den)


def _int_root(n: int, m: int):
    if n == 0:
        return 0
    r = round(n ** (1.0 / m))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** m == n:
            return c
    return None


@dataclass(frozen=True)
class SimplesReport:
    """Simple modules of the quotient with certificates.

    ``complete`` holds when the sum of squared dimensions reaches the
    algebra dimension, which forces zero radical and rules out any further
    simple; each listed module carries a full Burnside certificate and the
    pairwise intertwiner spaces vanish, so the evaluation map onto the
    matrix blocks is onto by density."""

    simples: tuple
    algebra_dim: int
    sum_squares: int
    complete: bool
    radical_dim: int
    notes: tuple = ()


def simple_modules(U: UEta, dim_budget: int | None = None) -> SimplesReport:
    """Classify the simples via induced modules.

    Preconditions: the algebra dimension is within budget, eta vanishes on
    the positive powers, and each eta(l_i) has an m-th root in the
    rational-torsion subgroup of the coefficient field."""
    budget = U.dim_budget if dim_budget is None else dim_budget
    if U.dim > budget:
        raise RootOfUnityError(
            f"dimension {U.dim} exceeds the budget {budget}"
        )
    if any(v for v in U.eta.x_plus):
        raise RootOfUnityError("classification needs eta = 0 on X^+ powers")
    root_choices = []
    for i in range(U.rank):
        roots = rational_mth_roots(U.eta.l[i], U.m)
        if not roots:
            raise RootOfUnityError(
                f"eta(l_{i}) has no m-th root of the form r eps^k"
            )
        root_choices.append(roots)

    lams = [()]
    for roots in root_choices:
        lams = [v + (r,) for v in lams for r in roots]

    candidates = [baby_verma(U, lam) for lam in lams]
    simples: list = []
    notes: list = []
    for rep in candidates:
        if burnside_dim(rep) != rep.dim ** 2:
            notes.append(f"{rep.label}: not simple or non-split")
            continue
        if any(intertwiner_space(rep, s) for s in simples):
            continue
        simples.append(rep)

    sum_sq = sum(r.dim ** 2 for r in simples)
    complete = sum_sq == U.dim
    return SimplesReport(
        simples=tuple(simples),
        algebra_dim=U.dim,
        sum_squares=sum_sq,
        complete=complete,
        radical_dim=U.dim - sum_sq if complete else -1,
        notes=tuple(notes),
    )
