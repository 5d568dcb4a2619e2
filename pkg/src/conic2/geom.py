"""Exact geometry of plane curves and of the conic-bundle total space.

The workhorse is :func:`solve_system`: all common projective zeros, over the
algebraic closure, of homogeneous polynomials in x, y, z with finite common
zero locus.  Elimination produces a binary form whose roots are the
candidate [x:y] directions; for each irreducible direction factor the points
are re-extracted inside a single extension of the base field (one embedding
hop, never a tower), and the recorded eliminant factor degrees certify that
no root was missed (EliminationClosure).  Transversal intersections carry an
independent Bezout count certificate instead.

Smoothness of the total space along a degenerate fiber is decided per base
chart: the fiber-homogeneous chart equation and its five partials are
restricted to the fiber, each line of the reduced fiber is parametrized by
P^1, and the restrictions become binary forms whose gcd is constant exactly
when no singular point lies on that line.  The gcd is computed over the
coefficient field; gcds of forms are stable under field extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _dense
from .conic import (
    BASE_VARS,
    FIBER_VARS,
    ConicBundleSpec,
    FiberType,
    ProjPoint,
    classify_fiber,
    fiber_form_on_chart,
    section_values,
)
from .factor import (
    binary_form_factor,
    gcd_homogeneous,
    gcd_homogeneous_many,
    squarefree_homogeneous,
    univariate_roots,
)
from .gf2k import FieldCtx, embed_bits, field_new
from .poly import Poly, binary_gcd, is_homogeneous, partial_derivative, poly_print, resultant, substitute


class PositiveDimensional(RuntimeError):
    """The common zero locus contains a curve."""

    def __init__(self, common_factor: Poly) -> None:
        super().__init__(f"positive-dimensional common zero locus: {poly_print(common_factor)}")
        self.common_factor = common_factor


class ExtensionBound(RuntimeError):
    """A root lives in an extension beyond the configured degree bound."""


class CommonComponent(RuntimeError):
    """Two curves share a component; their intersection is not finite."""


class BezoutMismatch(RuntimeError):
    """Intersection count disagrees with Bezout (a tangency or a missed point)."""

    def __init__(self, message: str, witness: ProjPoint | None = None) -> None:
        super().__init__(message)
        self.witness = witness


class NotOnCurve(ValueError):
    """The point does not lie on both curves."""


class NotSquarefree(ValueError):
    """The curve has a repeated component; pass the reduced polynomial."""


class FiberNotDegenerate(ValueError):
    """smooth_along_fiber needs a Cross or DoubleLine fiber."""


class UnreducedParametrization(RuntimeError):
    """The reduced line of a double-line fiber could not be extracted."""


class NotSingularHere(ValueError):
    """ordinary_node_check needs a point with vanishing value and gradient."""


@dataclass(frozen=True)
class BezoutCount:
    expected: int
    found: int


@dataclass(frozen=True)
class EliminationClosure:
    factor_degrees: tuple[int, ...]


@dataclass(frozen=True)
class AlgebraicPointSet:
    points: tuple[ProjPoint, ...]
    certificate: "BezoutCount | EliminationClosure"

    def serialize(self) -> dict:
        cert: dict
        if isinstance(self.certificate, BezoutCount):
            cert = {
                "kind": "bezout_count",
                "expected": self.certificate.expected,
                "found": self.certificate.found,
            }
        else:
            cert = {
                "kind": "elimination_closure",
                "factor_degrees": list(self.certificate.factor_degrees),
            }
        return {"points": [p.serialize() for p in self.points], "certificate": cert}


# -- plane point enumeration (brute-force oracle and witness search) ----------


def enumerate_plane_points(ctx: FieldCtx):
    """All points of P^2(F_{2^k}) in canonical order."""
    for y in range(ctx.q):
        for z in range(ctx.q):
            yield ProjPoint(ctx, (1, y, z))
    for z in range(ctx.q):
        yield ProjPoint(ctx, (0, 1, z))
    yield ProjPoint(ctx, (0, 0, 1))


def brute_solutions(polys: list[Poly], ctx: FieldCtx) -> list[ProjPoint]:
    """All rational solutions over one field, by exhaustive enumeration."""
    out = []
    for p in enumerate_plane_points(ctx):
        if all(g.eval_bits(ctx, p.coords) == 0 for g in polys):
            out.append(p)
    return out


def point_on_curve(curve: Poly, k_max: int = 24) -> ProjPoint:
    """Some point of a nonconstant plane curve, over a small extension."""
    base = curve.ctx
    e = 1
    while base.k * e <= min(k_max, 64):
        ctx = field_new(base.k * e)
        for p in enumerate_plane_points(ctx):
            if curve.eval_bits(ctx, p.coords) == 0:
                return p
        e += 1
    raise ExtensionBound(f"no point on {poly_print(curve)} within degree {k_max}")


# -- solve_system ---------------------------------------------------------------


def _specialize_direction(g: Poly, x0: int, y0: int, ctx_e: FieldCtx) -> list[int]:
    """Dense z-coefficients of g(x0, y0, z)."""
    src = g.ctx
    out = [0] * (g.degree_in("z") + 1)
    mul, pw = ctx_e.mul, ctx_e.pow
    for (ex, ey, ez), c in g.terms.items():
        v = c if src is ctx_e else embed_bits(src, ctx_e, c)
        if ex:
            v = mul(v, pw(x0, ex))
        if v and ey:
            v = mul(v, pw(y0, ey))
        if v:
            out[ez] ^= v
    return _dense.trim(out)


def _direction_eliminant(polys: list[Poly], ctx: FieldCtx) -> Poly:
    """A nonzero binary form in (x, y) vanishing on all solution directions."""
    xy = ("x", "y")
    collected: list[Poly] = []
    zfree = [p.with_vars(xy) for p in polys if p.degree_in("z") <= 0]
    collected.extend(zfree)
    zpos = [p for p in polys if p.degree_in("z") > 0]
    for f, g in itertools.combinations(zpos, 2):
        r = resultant(f, g, "z")
        if not r.is_zero():
            collected.append(r.with_vars(xy))
    if not collected:
        # Every pair of z-positive inputs shares a z-positive factor.  Adding
        # ideal elements g_i + monomial * g_j preserves the zero set and
        # breaks the shared factors.
        for f, g in itertools.combinations(zpos, 2):
            df, dg = f.total_degree(), g.total_degree()
            if df < dg:
                f, g = g, f
                df, dg = dg, df
            gap = df - dg
            for mono in _monomials_of_degree(gap):
                h = f + g * Poly.from_terms(f.ctx, f.vars, [(mono, 1)])
                if h.is_zero():
                    continue
                for other in zpos:
                    if other in (f, g):
                        continue
                    r = resultant(h, other, "z")
                    if not r.is_zero():
                        collected.append(r.with_vars(xy))
                if not collected and h.degree_in("z") > 0:
                    r = resultant(h, g, "z")
                    if not r.is_zero():
                        collected.append(r.with_vars(xy))
                if collected:
                    break
            if collected:
                break
        if not collected:
            raise RuntimeError("elimination degenerated; could not build an eliminant")
    acc = collected[0]
    for item in collected[1:]:
        acc = binary_gcd(acc, item)
        if acc.is_constant():
            break
    return acc


def _monomials_of_degree(d: int):
    for ex in range(d, -1, -1):
        for ey in range(d - ex, -1, -1):
            yield (ex, ey, d - ex - ey)


def solve_system(polys: list[Poly], k_max: int = 24) -> AlgebraicPointSet:
    """All common projective zeros over the algebraic closure.

    Requires a finite zero locus (the gcd of the inputs must be constant) and
    extensions of degree at most k_max; certifies completeness by listing the
    degrees of the eliminant factors every coordinate is a root of.
    """
    nonzero: list[Poly] = []
    ctx = None
    for p in polys:
        if p.is_zero():
            continue
        if ctx is None:
            ctx = p.ctx
        if p.ctx is not ctx or p.vars != BASE_VARS:
            raise ValueError("solve_system expects plane polynomials over one field")
        if is_homogeneous(p) is None:
            raise ValueError(f"inhomogeneous input: {poly_print(p)}")
        if p not in nonzero:
            nonzero.append(p)
    if ctx is None:
        raise PositiveDimensional(Poly.zero(field_new(1), BASE_VARS))
    constants = [p for p in nonzero if p.is_constant()]
    if constants:
        return AlgebraicPointSet((), EliminationClosure(()))
    common = gcd_homogeneous_many(nonzero)
    if not common.is_constant():
        raise PositiveDimensional(common)

    bound = min(k_max, 64)
    eliminant = _direction_eliminant(nonzero, ctx)
    degrees: list[int] = []
    points: list[ProjPoint] = []

    if not eliminant.is_constant():
        for form, _mult in binary_form_factor(eliminant):
            d = form.total_degree()
            degrees.append(d)
            if form == Poly.var(ctx, ("x", "y"), "y"):
                dir_field, dir_roots = ctx, [(1, 0)]
            else:
                if ctx.k * d > bound:
                    raise ExtensionBound(
                        f"direction factor of degree {d} needs F_{{2^{ctx.k * d}}} > bound {bound}"
                    )
                dir_field = field_new(ctx.k * d)
                univ = form.with_vars(("x", "y"))
                roots = univariate_roots(substitute(univ, {"y": Poly.const(ctx, ("x", "y"), 1)}), dir_field)
                dir_roots = [(r, 1) for r in sorted(roots)]
            if not dir_roots:
                continue
            # z-factor degree pattern from the first root, shared by conjugates
            x0, y0 = dir_roots[0]
            specials = [_specialize_direction(g, x0, y0, dir_field) for g in nonzero]
            specials = [s for s in specials if s]
            if not specials:  # pragma: no cover - excluded by finiteness
                raise AssertionError("all inputs vanish along a whole line")
            h = specials[0]
            for s in specials[1:]:
                h = _dense.gcd(dir_field, h, s)
            if _dense.deg(h) < 1:
                continue
            _, hfac = _dense.factor(dir_field, h)
            e_star = 1
            for coeffs, _m in hfac:
                e = _dense.deg(coeffs)
                degrees.append(e)
                e_star = e_star * e // _gcd_int(e_star, e)
            K = ctx.k * d * e_star
            if K > bound:
                raise ExtensionBound(
                    f"a z-root over the degree-{d} direction needs F_{{2^{K}}} > bound {bound}"
                )
            final = field_new(K)
            if form == Poly.var(ctx, ("x", "y"), "y"):
                final_roots = [(1, 0)]
            else:
                univ = substitute(form.with_vars(("x", "y")), {"y": Poly.const(ctx, ("x", "y"), 1)})
                final_roots = [(r, 1) for r in sorted(univariate_roots(univ, final))]
            for x1, y1 in final_roots:
                specials = [_specialize_direction(g, x1, y1, final) for g in nonzero]
                specials = [s for s in specials if s]
                hf = specials[0]
                for s in specials[1:]:
                    hf = _dense.gcd(final, hf, s)
                for z1 in _dense.roots(final, hf) if _dense.deg(hf) >= 1 else []:
                    points.append(ProjPoint(final, (x1, y1, z1)))

    if all(g.eval_bits(ctx, (0, 0, 1)) == 0 for g in nonzero):
        points.append(ProjPoint(ctx, (0, 0, 1)))

    for p in points:  # completeness sanity: every reported point solves the system
        if any(g.eval_bits(p.ctx, p.coords) != 0 for g in nonzero):  # pragma: no cover
            raise AssertionError("solver produced a non-solution")
    points.sort(key=lambda p: p.sort_key())
    return AlgebraicPointSet(tuple(points), EliminationClosure(tuple(sorted(degrees))))


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- plane-curve geometry -----------------------------------------------------


def singular_points(curve: Poly, k_max: int = 24) -> AlgebraicPointSet:
    """Singular locus over the closure, by the Jacobian criterion.

    In characteristic 2 the Euler relation only ties the curve to its
    partials in even degree, so the curve itself always joins the system.
    """
    if curve.is_zero() or is_homogeneous(curve) in (None, "zero"):
        raise ValueError("singular_points expects a nonzero homogeneous curve")
    if not squarefree_homogeneous(curve):
        raise NotSquarefree(f"{poly_print(curve)} has a repeated factor; pass the reduced curve")
    system = [curve] + [partial_derivative(curve, v) for v in BASE_VARS]
    return solve_system([p for p in system if not p.is_zero()], k_max)


def gradient_at(curve: Poly, p: ProjPoint) -> tuple:
    return tuple(partial_derivative(curve, v).eval_bits(p.ctx, p.coords) for v in BASE_VARS)


def transversal_at(c1: Poly, c2: Poly, p: ProjPoint) -> bool:
    """Rank-2 gradient pair at p, with each curve individually smooth there."""
    for c in (c1, c2):
        if c.eval_bits(p.ctx, p.coords) != 0:
            raise NotOnCurve(f"{poly_print(c)} does not vanish at {p!r}")
    g1 = gradient_at(c1, p)
    g2 = gradient_at(c2, p)
    if all(v == 0 for v in g1) or all(v == 0 for v in g2):
        return False
    mul = p.ctx.mul
    for i in range(3):
        for j in range(i + 1, 3):
            if mul(g1[i], g2[j]) ^ mul(g1[j], g2[i]):
                return True
    return False


def intersection_points(c1: Poly, c2: Poly, k_max: int = 24) -> AlgebraicPointSet:
    """Finite intersection with a Bezout certificate.

    Every point must be transversal; then the count of points equals the
    product of the degrees, and the certificate records it.  A tangency or a
    count mismatch raises BezoutMismatch.
    """
    for c in (c1, c2):
        if c.is_zero() or is_homogeneous(c) in (None, "zero"):
            raise ValueError("intersection_points expects nonzero homogeneous curves")
    g = gcd_homogeneous(c1, c2)
    if not g.is_constant():
        raise CommonComponent(f"common component {poly_print(g)}")
    found = solve_system([c1, c2], k_max)
    for p in found.points:
        if not transversal_at(c1, c2, p):
            raise BezoutMismatch(f"non-transversal intersection at {p!r}", witness=p)
    expected = c1.total_degree() * c2.total_degree()
    if len(found.points) != expected:
        raise BezoutMismatch(
            f"transversal everywhere but found {len(found.points)} of {expected} points"
        )
    return AlgebraicPointSet(found.points, BezoutCount(expected, len(found.points)))


# -- total-space smoothness along degenerate fibers ------------------------------


def _fiber_lines(spec: ConicBundleSpec, p: ProjPoint, ftype: FiberType):
    """Lines of the reduced fiber as (field, w1, w2) with [s:t] -> s*w1 + t*w2."""
    ctx = p.ctx
    v = section_values(spec, p)
    if ftype is FiberType.DOUBLE_LINE:
        lam = (ctx.sqrt(v["aa"]), ctx.sqrt(v["bb"]), ctx.sqrt(v["cc"]))
        if all(c == 0 for c in lam):
            raise UnreducedParametrization("double line with no reduced line; internal bug")
        i = next(k for k, c in enumerate(lam) if c)
        inv = ctx.inv(lam[i])
        basis = []
        for j in range(3):
            if j == i:
                continue
            w = [0, 0, 0]
            w[j] = 1
            w[i] = ctx.mul(lam[j], inv)
            basis.append(tuple(w))
        return [(ctx, basis[0], basis[1])]
    # cross: radical direction n, complement pair (i, j)
    n = (v["bc"], v["ac"], v["ab"])
    ell = next(k for k, c in enumerate(n) if c)
    i, j = [k for k in range(3) if k != ell]
    keys = {0: "aa", 1: "bb", 2: "cc"}
    qi, qj, bij = v[keys[i]], v[keys[j]], n[ell]
    # splitting form qi*T^2 + bij*T + qj for the line directions through n
    lines = []
    root_data: list[tuple[FieldCtx, tuple[int, int]]] = []
    roots = _dense.roots(ctx, _dense.trim([qj, bij, qi]))
    if qi == 0:
        root_data.append((ctx, (1, 0)))
    for r in roots:
        root_data.append((ctx, (r, 1)))
    if len(root_data) < 2:
        if 2 * ctx.k > 64:
            raise ExtensionBound("cross lines need a quadratic extension beyond the word bound")
        ext = field_new(2 * ctx.k)
        roots2 = _dense.roots(ext, [embed_bits(ctx, ext, qj), embed_bits(ctx, ext, bij), embed_bits(ctx, ext, qi)])
        root_data = [(ext, (r, 1)) for r in roots2]
    if len(root_data) != 2:  # pragma: no cover - defensive
        raise AssertionError("a cross fiber must have exactly two line directions")
    for fld, (al, be) in root_data:
        w = [0, 0, 0]
        w[i] = al
        w[j] = be
        nf = tuple(embed_bits(ctx, fld, c) for c in n)
        lines.append((fld, nf, tuple(w)))
    return lines


def _restrict_to_fiber(form: Poly, base_vals: tuple[int, int], ctx_p: FieldCtx) -> Poly:
    """Substitute the two base-chart coordinates; result in fiber variables."""
    src = form.ctx
    mul, pw = ctx_p.mul, ctx_p.pow
    terms: dict = {}
    for (e1, e2, ea, eb, ec), c in form.terms.items():
        val = c if src is ctx_p else embed_bits(src, ctx_p, c)
        if e1:
            val = mul(val, pw(base_vals[0], e1))
        if val and e2:
            val = mul(val, pw(base_vals[1], e2))
        if val:
            mono = (ea, eb, ec)
            cur = terms.get(mono, 0) ^ val
            if cur:
                terms[mono] = cur
            else:
                terms.pop(mono, None)
    return Poly(ctx_p, FIBER_VARS, terms)


def _line_restriction(g: Poly, fld: FieldCtx, w1: tuple, w2: tuple) -> Poly:
    """Binary form g(s*w1 + t*w2) in (s, t)."""
    st = ("s", "t")
    ge = g.embed_to(fld)
    images = {}
    for idx, name in enumerate(FIBER_VARS):
        images[name] = Poly.from_terms(fld, st, [((1, 0), w1[idx]), ((0, 1), w2[idx])])
    return substitute(ge, images, vars_out=st)


def smooth_along_fiber(spec: ConicBundleSpec, p: ProjPoint) -> bool:
    """No singular point of the total space on the (degenerate) fiber over p.

    On each base chart containing p, the chart form and its five partials are
    restricted to the fiber and pulled back along each line of the reduced
    fiber; the gcd of the resulting binary forms is constant exactly when the
    line carries no singular point.  Both lines of a cross, and with them the
    intersection point, are covered.
    """
    ftype = classify_fiber(spec, p)
    if ftype not in (FiberType.CROSS, FiberType.DOUBLE_LINE):
        raise FiberNotDegenerate(f"fiber over {p!r} is {ftype}")
    lines = _fiber_lines(spec, p, ftype)
    for w_idx, w in enumerate(BASE_VARS):
        if p.coords[w_idx] == 0:
            continue
        scale = p.ctx.inv(p.coords[w_idx])
        base_vals = tuple(
            p.ctx.mul(p.coords[k], scale) for k in range(3) if k != w_idx
        )
        # Chart fiber coordinates carry the line-bundle trivializations:
        # a_i on the chart is a_i * p_w^(e_i) in the normalized picture.
        twist = tuple(p.ctx.pow(p.coords[w_idx], e) for e in spec.degree_vector)
        form = fiber_form_on_chart(spec, w)
        partials = [partial_derivative(form, v) for v in form.vars]
        restricted = [_restrict_to_fiber(q, base_vals, p.ctx) for q in partials]
        for fld, w1_raw, w2_raw in lines:
            tw = tuple(embed_bits(p.ctx, fld, t) for t in twist)
            w1 = tuple(fld.mul(c, t) for c, t in zip(w1_raw, tw))
            w2 = tuple(fld.mul(c, t) for c, t in zip(w2_raw, tw))
            binaries = []
            for q in restricted:
                if q.is_zero():
                    continue
                b = _line_restriction(q, fld, w1, w2)
                if not b.is_zero():
                    binaries.append(b)
            if not binaries:
                return False
            acc = binaries[0]
            for b in binaries[1:]:
                acc = binary_gcd(acc, b)
                if acc.is_constant():
                    break
            if not acc.is_constant():
                return False
    return True


def ordinary_node_check(chart_eq: Poly, point: tuple, ctx_q: FieldCtx) -> bool:
    """Nondegenerate quadratic part at a singular chart point.

    In characteristic 2 nondegeneracy of a 4-variable quadratic form is full
    rank of its alternating bilinear form B(u, w) = Q(u+w) + Q(u) + Q(w): any
    nonzero radical of B carries a zero of Q over a perfect field, i.e. a
    singular point of the projectivized tangent cone.
    """
    nvars = len(chart_eq.vars)
    if nvars != 4:
        raise ValueError("ordinary_node_check expects a 4-variable chart equation")
    eq = chart_eq.embed_to(ctx_q)
    shift = {
        name: Poly.var(ctx_q, eq.vars, name) + Poly.const(ctx_q, eq.vars, point[i])
        for i, name in enumerate(eq.vars)
    }
    local = substitute(eq, shift)
    if local.constant_bits() != 0:
        raise NotSingularHere("the equation does not vanish at the point")
    for m, c in local.terms.items():
        if sum(m) == 1 and c != 0:
            raise NotSingularHere("the gradient does not vanish at the point")
    rows = [[0] * nvars for _ in range(nvars)]
    for m, c in local.terms.items():
        if sum(m) != 2:
            continue
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 2:
            i, j = support
            rows[i][j] ^= c
            rows[j][i] ^= c
    return _rank(ctx_q, rows) == nvars


def _rank(ctx: FieldCtx, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(v, inv) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v ^ ctx.mul(f, w) for v, w in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank
