"""The s-adapted positive system and normal ordering.

Pipeline: decompose the reflection representation of s into its fixed space
and s-invariant rational planes/lines (kernels of cyclotomic factors), pick
rational height vectors with controlled separation scalings, read off the
adapted chamber, conjugate s so that chamber becomes the standard one, and
then search (Carter decomposition x normal ordering) for an ordering passing
the structural validator.  Everything downstream works with the conjugated
element in standard coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .carter import CarterDecomposition, enumerate_decompositions
from .coeffs import cyclotomic_polynomial
from .rootsys import (
    NormalOrdering,
    Root,
    RootSystem,
    WeylElement,
    add_roots,
    all_normal_orderings,
    root_key,
)

Vec = tuple[Fraction, ...]


class AdaptedOrderingError(RuntimeError):
    """Raised when the adapted-ordering search exhausts its budget: a defect,
    since existence is guaranteed for Weyl elements."""


@dataclass(frozen=True)
class Subspace:
    """An s-invariant rational subspace: the fixed space (order 1) or a piece
    of the kernel of a cyclotomic factor of the action of s."""

    order: int
    basis: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class InvariantDecomposition:
    s: WeylElement
    subspaces: tuple[Subspace, ...]
    heights: tuple[Vec, ...]
    hbar: Vec


@dataclass(frozen=True)
class AdaptedOrdering:
    """A normal ordering (in standard coordinates, for the conjugated element
    s_adapted) with the distinguished segment and the fixed-root tail marked.

    seg_start/seg_end are 0-based half-open bounds of the segment; the last
    num_fixed positions hold exactly the roots fixed by s_adapted.  Roots
    between seg_end and the fixed tail exist when the second involution part
    has trailing inverted roots outside the segment.
    """

    s: WeylElement
    conjugator: WeylElement
    s_adapted: WeylElement
    carter: CarterDecomposition
    ordering: NormalOrdering
    seg_start: int
    seg_end: int
    num_fixed: int
    strata: tuple[int, ...]

    @property
    def segment(self) -> tuple[Root, ...]:
        return self.ordering.roots[self.seg_start : self.seg_end]

    @property
    def delta0(self) -> tuple[Root, ...]:
        d = len(self.ordering.roots)
        return self.ordering.roots[d - self.num_fixed :]

    @property
    def gammas(self) -> tuple[Root, ...]:
        return self.carter.gammas


@dataclass(frozen=True)
class SliceDimensions:
    dim_m_minus: int
    dim_slice: int
    dim_G: int
    codim_slice: int
    D0: int
    adapted_length: int
    l_prime: int


# ---------------------------------------------------------------------------
# invariant decomposition
# ---------------------------------------------------------------------------

def element_order(s: WeylElement, cap: int = 10000) -> int:
    w = s
    for k in range(1, cap + 1):
        if w.is_identity():
            return k
        w = w * s
    raise ValueError("element order exceeds cap (not a finite-order matrix?)")


def _matrix_poly(coeffs, m) -> list[list[Fraction]]:
    """Evaluate a polynomial (constant first) at an integer matrix."""
    n = len(m)
    out = [[Fraction(0)] * n for _ in range(n)]
    power = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in coeffs:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * power[i][j]
        power = [
            [sum(power[i][k] * m[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return out


def _project_onto(rs: RootSystem, space: list[Vec], v: Vec) -> Vec:
    """Orthogonal projection (invariant form) of v onto span(space)."""
    if not space:
        return tuple(Fraction(0) for _ in v)
    gram = [[Fraction(rs.pairing(a, b)) for b in space] for a in space]
    rhs = [Fraction(rs.pairing(v, b)) for b in space]
    x = linalg.solve(gram, rhs)
    if x is None:
        raise ValueError("degenerate Gram matrix while projecting")
    return tuple(
        sum(x[k] * space[k][i] for k in range(len(space))) for i in range(len(v))
    )


def _project_off(rs: RootSystem, space: list[Vec], v: Vec) -> Vec:
    """v minus its orthogonal projection (invariant form) onto span(space)."""
    p = _project_onto(rs, space, v)
    return tuple(v[i] - p[i] for i in range(len(v)))


def invariant_decomposition(rs: RootSystem, s: WeylElement) -> InvariantDecomposition:
    """Split the reflection representation into the fixed space followed by
    s-invariant lines (eigenvalue -1) and rotation planes, grouped by the
    order of the cyclotomic factor, ascending; all data exact rationals."""
    l = rs.rank
    order = element_order(s)
    m_frac = [[Fraction(x) for x in row] for row in s.matrix]
    subspaces: list[Subspace] = []
    for dcyc in sorted(k for k in range(1, order + 1) if order % k == 0):
        phi = cyclotomic_polynomial(dcyc)
        mat = _matrix_poly(phi, m_frac)
        kernel = linalg.nullspace(mat)
        if not kernel:
            continue
        kernel = [tuple(v) for v in kernel]
        if dcyc == 1:
            subspaces.append(Subspace(1, tuple(kernel)))
        elif dcyc == 2:
            # split the (-1)-eigenspace into pairwise orthogonal lines
            chosen: list[Vec] = []
            for v in kernel:
                u = _project_off(rs, chosen, v)
                if any(u):
                    chosen.append(u)
                    subspaces.append(Subspace(2, (u,)))
        else:
            # split into orthogonal s-invariant planes span(v, sv); a new
            # plane is automatically orthogonal to the previous ones because
            # s preserves the form and the previous planes
            used: list[Vec] = []
            while True:
                v = None
                for cand in kernel:
                    u = _project_off(rs, used, cand)
                    if any(u):
                        v = u
                        break
                if v is None:
                    break
                sv = tuple(sum(m_frac[i][j] * v[j] for j in range(l)) for i in range(l))
                plane = (v, _plane_second(rs, v, sv))
                subspaces.append(Subspace(dcyc, plane))
                used.extend(plane)
    if sum(sp.dim for sp in subspaces) != l:
        raise AdaptedOrderingError("invariant subspaces do not fill the reflection representation")
    heights = _choose_heights(rs, subspaces)
    scaled, hbar = _separation_scaling(rs, subspaces, heights)
    for r in rs.positive_roots:
        if rs.pairing(hbar, r) == 0:
            raise AdaptedOrderingError(f"hbar vanishes on root {r} despite separation scaling")
    return InvariantDecomposition(s, tuple(subspaces), tuple(scaled), hbar)


def _plane_second(rs: RootSystem, v: Vec, sv: Vec) -> Vec:
    """Second plane basis vector: the component of sv off the line of v, so
    the stored basis is orthogonal inside the plane."""
    u = _project_off(rs, [v], sv)
    if not any(u):
        raise ValueError("rotation plane degenerated to a line")
    return u


def _dominant_vector(rs: RootSystem) -> Vec:
    """The regular dominant vector t with (t, alpha_i) = d_i for all i."""
    b = [[Fraction(x) for x in row] for row in rs.b]
    t = linalg.solve(b, [Fraction(di) for di in rs.d])
    if t is None:
        raise AdaptedOrderingError("invariant form is degenerate")
    return tuple(t)


def _choose_heights(rs: RootSystem, subspaces) -> list[Vec]:
    """One rational vector per subspace, pairing nontrivially with every root
    that is not orthogonal to that subspace.  For the fixed space the dominant
    vector's projection is preferred (so the identity keeps the standard
    chamber); otherwise the first basis vector, perturbed by integer-power
    combinations of the later ones until all constraints hold."""
    heights = []
    for sp in subspaces:
        relevant = [
            r for r in rs.positive_roots if any(rs.pairing(b, r) != 0 for b in sp.basis)
        ]
        found = None
        if sp.order == 1:
            cand = _project_onto(rs, list(sp.basis), _dominant_vector(rs))
            if any(cand) and all(rs.pairing(cand, r) != 0 for r in relevant):
                found = cand
        if found is None:
            cap = len(sp.basis[0]) * (len(relevant) + 2)
            for lam in itertools.count(0):
                t = tuple(
                    sum((Fraction(lam) ** k) * sp.basis[k][i] for k in range(sp.dim))
                    for i in range(len(sp.basis[0]))
                )
                if all(rs.pairing(t, r) != 0 for r in relevant):
                    found = t
                    break
                if lam > cap:
                    raise AdaptedOrderingError("height perturbation failed to separate roots")
        heights.append(found)
    return heights


def _separation_scaling(rs: RootSystem, subspaces, heights):
    """Scale the k-th height so it dominates, on each root of its stratum,
    the partial sum of all earlier scaled heights; the stratum of a root is
    the last subspace its pairing sees."""
    scaled: list[Vec] = []
    for k, t in enumerate(heights):
        if not scaled:
            scaled.append(t)
            continue
        worst = Fraction(0)
        best = None
        for r in rs.positive_roots:
            tv = rs.pairing(t, r)
            if tv == 0:
                continue
            partial = sum(rs.pairing(u, r) for u in scaled)
            ratio = abs(Fraction(partial)) / abs(Fraction(tv))
            worst = max(worst, ratio)
        factor = int(worst) + 1
        scaled.append(tuple(factor * x for x in t))
    l = rs.rank
    hbar = tuple(
        sum((u[i] for u in scaled), Fraction(0)) for i in range(l)
    ) if scaled else tuple(Fraction(0) for _ in range(l))
    return scaled, hbar


# ---------------------------------------------------------------------------
# adapted positive system and conjugation
# ---------------------------------------------------------------------------

def positive_system(rs: RootSystem, dec: InvariantDecomposition):
    """The adapted positive system {alpha : (hbar, alpha) > 0}, its simple
    system, and the Weyl element carrying the standard positives onto it."""
    positives = []
    for r in rs.positive_roots:
        val = rs.pairing(dec.hbar, r)
        if val == 0:
            raise AdaptedOrderingError(f"hbar vanishes on {r}")
        positives.append(r if val > 0 else tuple(-c for c in r))
    pos_set = set(positives)
    conjugator = _chamber_element(rs, pos_set)
    simples = tuple(conjugator.act(rs.simple_root(i)) for i in range(1, rs.rank + 1))
    return tuple(sorted(positives, key=root_key)), conjugator, simples


def _chamber_element(rs: RootSystem, pos_set: set[Root]) -> WeylElement:
    """The unique w with w(standard positives) = pos_set, by greedy descent
    on the number of standard-negative members."""
    current = set(pos_set)
    word = []
    steps = 0
    while True:
        neg_simple = None
        for i in range(1, rs.rank + 1):
            if tuple(-c for c in rs.simple_root(i)) in current:
                neg_simple = i
                break
        if neg_simple is None:
            break
        si = rs.simple_reflection(neg_simple)
        current = {si.act(r) for r in current}
        # the first descent applied is the leftmost factor of w
        word.append(neg_simple)
        steps += 1
        if steps > rs.num_positive:
            raise AdaptedOrderingError("chamber descent failed to terminate")
    if current != set(rs.positive_roots):
        raise AdaptedOrderingError("candidate positive system is not a Weyl chamber image")
    return rs.word_element(tuple(word))


# ---------------------------------------------------------------------------
# the ordering validator and search
# ---------------------------------------------------------------------------

def fixed_positive_roots(rs: RootSystem, s: WeylElement) -> tuple[Root, ...]:
    return tuple(r for r in rs.positive_roots if s.act(r) == r)


def validate_adapted(rs: RootSystem, s: WeylElement, cd: CarterDecomposition,
                     ordering: NormalOrdering):
    """Check the structural conditions tying (s, decomposition, ordering)
    together.  Returns (decomposition with parts relabeled by position, start,
    end) on success, None on failure.

    Conditions: the roots fixed by s occupy exactly the final positions; all
    gammas of the first involution part precede those of the second; the
    segment runs from the first gamma to the last gamma (or, when the second
    part is empty, up to the fixed tail), and its length equals
    D - ((l(s) - l')/2 + D0); and no in-segment sum alpha + beta is a natural
    combination of the gammas lying strictly between alpha and beta.
    """
    roots = ordering.roots
    D = len(roots)
    pos = {r: k for k, r in enumerate(roots)}
    delta0 = set(fixed_positive_roots(rs, s))
    d0 = len(delta0)
    if set(roots[D - d0 :]) != delta0:
        return None
    length = rs.length(s)
    l_prime = cd.l_prime
    if (length - l_prime) % 2 != 0:
        return None
    target = D - ((length - l_prime) // 2 + d0)
    g1 = tuple(sorted(cd.gammas1, key=lambda g: pos[g]))
    g2 = tuple(sorted(cd.gammas2, key=lambda g: pos[g]))
    if g1 and g2 and pos[g1[-1]] >= pos[g2[0]]:
        return None
    if l_prime == 0:
        if target != 0:
            return None
        start, end = 0, 0
    else:
        # the segment opens at gamma_1 unless the first part is empty, in
        # which case nothing is excluded in front of it
        start = pos[g1[0]] if g1 else 0
        # it closes at gamma_{l'}; for an involution it extends to the tail
        end = pos[g2[-1]] + 1 if g2 else D - d0
        if end - start != target:
            return None
    seg_roots = roots[start:end]
    ordered_gammas = g1 + g2
    for i, alpha in enumerate(seg_roots):
        for beta in seg_roots[i + 1 :]:
            between = [
                g for g in ordered_gammas if pos[alpha] < pos[g] < pos[beta]
            ]
            if _natural_combination(add_roots(alpha, beta), between):
                return None
    return CarterDecomposition(cd.s, g1, g2), start, end


def _natural_combination(target: Root, gens: list[Root]) -> bool:
    """Is target a nonnegative-integer combination of gens?  Exhaustive over
    the (tiny) coefficient box bounded by coordinatewise ratios."""
    if not gens:
        return False
    bounds = []
    for g in gens:
        bound = min(
            (target[i] // g[i] for i in range(len(target)) if g[i] > 0), default=0
        )
        bounds.append(bound)
    for combo in itertools.product(*(range(b + 1) for b in bounds)):
        if all(
            sum(c * g[i] for c, g in zip(combo, gens)) == target[i]
            for i in range(len(target))
        ):
            return True
    return False


def adapted_ordering(rs: RootSystem, s: WeylElement, *,
                     decomposition: CarterDecomposition | None = None,
                     search_budget: int = 200000) -> AdaptedOrdering:
    """Build the adapted data for s: conjugate its adapted chamber to the
    standard one, then scan (decompositions x normal orderings) in canonical
    order for the first pair passing the validator.

    A pinned decomposition restricts the scan to that decomposition; it must
    be stated for the conjugated element (i.e. in the adapted system).
    """
    dec = invariant_decomposition(rs, s)
    _, conjugator, _ = positive_system(rs, dec)
    w_inv = rs.inverse(conjugator)
    s_adapted = w_inv * s * conjugator
    orderings = all_normal_orderings(rs)
    if decomposition is None:
        candidates = enumerate_decompositions(rs, s_adapted)
    else:
        if decomposition.s.matrix != s_adapted.matrix:
            raise AdaptedOrderingError(
                "pinned decomposition is not a decomposition of the conjugated element"
            )
        candidates = iter([decomposition])
    tried = 0
    for cd in candidates:
        for o in orderings:
            tried += 1
            if tried > search_budget:
                raise AdaptedOrderingError(
                    f"no adapted ordering within budget {search_budget} for element {s}"
                )
            hit = validate_adapted(rs, s_adapted, cd, o)
            if hit is not None:
                relabeled, start, end = hit
                strata = _strata(rs, dec, conjugator)
                d0 = len(fixed_positive_roots(rs, s_adapted))
                return AdaptedOrdering(
                    s, conjugator, s_adapted, relabeled, o, start, end, d0, strata
                )
    raise AdaptedOrderingError(
        f"no adapted ordering found for element {s}: validator rejected all "
        "(decomposition, ordering) pairs"
    )


def _strata(rs: RootSystem, dec: InvariantDecomposition, conjugator: WeylElement) -> tuple[int, ...]:
    """Stratum index (1-based, by subspace) of each standard positive root,
    transported through the conjugation."""
    out = []
    for r in rs.positive_roots:
        img = conjugator.act(r)
        stratum = 0
        for k, t in enumerate(dec.heights):
            if rs.pairing(t, img) != 0:
                stratum = k + 1
        out.append(stratum)
    return tuple(out)


# ---------------------------------------------------------------------------
# slice dimensions and the weight-separation condition
# ---------------------------------------------------------------------------

def slice_dimensions(rs: RootSystem, ao: AdaptedOrdering) -> SliceDimensions:
    """Dimension bookkeeping.  dim_slice is computed from the fixed-root count
    and lengths (2 D0 + (l - l') + l(s)), independently of the segment length,
    so the identity 2 dim_m_minus + dim_slice = dim_G is a genuine check."""
    D = rs.num_positive
    l = rs.rank
    d0 = ao.num_fixed
    length = rs.length(ao.s_adapted)
    l_prime = ao.carter.l_prime
    dim_m_minus = ao.seg_end - ao.seg_start
    dim_slice = 2 * d0 + (l - l_prime) + length
    dim_g = 2 * D + l
    return SliceDimensions(
        dim_m_minus=dim_m_minus,
        dim_slice=dim_slice,
        dim_G=dim_g,
        codim_slice=2 * dim_m_minus,
        D0=d0,
        adapted_length=length,
        l_prime=l_prime,
    )


def segment_length_formula(rs: RootSystem, ao: AdaptedOrdering) -> int:
    """D - ((l(s) - l')/2 + D0), to be compared with the measured segment."""
    D = rs.num_positive
    return D - ((rs.length(ao.s_adapted) - ao.carter.l_prime) // 2 + ao.num_fixed)


def weight_separation(rs: RootSystem, gammas, m: int, strict: bool = False):
    """Evaluate the weight functionals Y_j(mu) = d_j mu_j on every mu =
    sum m_i gamma_i with (m_1..m_{l'}) a nonzero tuple in {0..m-1}^{l'}.

    Default (separation) mode: every such mu must have some Y_j(mu) outside
    m Z, so the functionals jointly separate the character values.  Strict
    mode demands every Y_j(mu) be a non-multiple of m, which already fails
    whenever some m_i is zero and the gammas have disjoint support.

    Returns (ok, witnesses); witnesses are the violating tuples.
    """
    l_prime = len(gammas)
    witnesses = []
    for tup in itertools.product(range(m), repeat=l_prime):
        if not any(tup):
            continue
        mu = [
            sum(t * g[j] for t, g in zip(tup, gammas)) for j in range(rs.rank)
        ]
        vals = [(rs.d[j] * mu[j]) % m for j in range(rs.rank)]
        bad = all(v == 0 for v in vals) if not strict else any(v == 0 for v in vals)
        if bad:
            witnesses.append(tup)
    return (not witnesses), tuple(witnesses)


def check_weight_separation(rs: RootSystem, ao: AdaptedOrdering, m: int, strict: bool = False):
    return weight_separation(rs, ao.gammas, m, strict=strict)
