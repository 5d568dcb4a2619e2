"""Shared helpers for the test suite: random generators and brute oracles."""

from itertools import product

from conic2.conic import (
    BASE_VARS,
    FIBER_VARS,
    SECTION_KEYS,
    ConicBundleSpec,
    chart_equation,
)
from conic2.gf2k import field_new
from conic2.poly import Poly, partial_derivative


def monomials_of_degree(d, nvars=3):
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        for rest in monomials_of_degree(d - e, nvars - 1):
            out.append((e,) + rest)
    return out


def rand_homogeneous(rng, ctx, degree, max_terms=4, vars=BASE_VARS, nonzero=False):
    monos = monomials_of_degree(degree, len(vars))
    items = []
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        items.append((rng.choice(monos), rng.randrange(1, ctx.q)))
    p = Poly.from_terms(ctx, vars, items)
    if nonzero and p.is_zero():
        mono = rng.choice(monos)
        p = Poly.from_terms(ctx, vars, [(mono, rng.randrange(1, ctx.q))])
    return p


def rand_spec(rng, ctx=None, max_entry_degree=2):
    """A random validated-shape bundle spec (sections match the degree law)."""
    ctx = ctx or field_new(rng.choice((1, 1, 2)))
    m = rng.randint(0, 1)
    ev = tuple(rng.randint(0, max_entry_degree) for _ in range(3))
    sections = {}
    for key in SECTION_KEYS:
        i, j = FIBER_VARS.index(key[0]), FIBER_VARS.index(key[1])
        d = ev[i] + ev[j] + m
        sections[key] = rand_homogeneous(rng, ctx, d, max_terms=3)
    if all(sections[k].is_zero() for k in SECTION_KEYS):
        sections["aa"] = rand_homogeneous(rng, ctx, 2 * ev[0] + m, nonzero=True)
    return ConicBundleSpec(ctx, ev, m, sections)


def vanish_at(rng, ctx, degree, point_bits, vars=BASE_VARS):
    """A random homogeneous polynomial vanishing at the given point."""
    p = rand_homogeneous(rng, ctx, degree, max_terms=3, vars=vars)
    val = p.eval_bits(ctx, point_bits)
    if val == 0:
        return p
    # cancel the value against a monomial that is nonzero at the point
    monos = monomials_of_degree(degree, len(vars))
    for mono in monos:
        mval = Poly.from_terms(ctx, vars, [(mono, 1)]).eval_bits(ctx, point_bits)
        if mval:
            fix = ctx.mul(val, ctx.inv(mval))
            return p + Poly.from_terms(ctx, vars, [(mono, fix)])
    raise AssertionError("no monomial is nonzero at a projective point")


def brute_fiber_singular_points(spec, p, ctx_big):
    """Total-space singular points on the fiber over p, rational over ctx_big.

    Independent oracle: enumerates the fiber pointwise and checks the affine
    Jacobian on every chart (with the line-bundle twists applied).
    """
    sing = []
    pb = p.embed_to(ctx_big)
    v = {k: spec.sections[k].eval_bits(ctx_big, pb.coords) for k in SECTION_KEYS}
    M = ctx_big.mul

    def conic_val(a, b, c):
        return (
            M(M(a, a), v["aa"]) ^ M(M(b, b), v["bb"]) ^ M(M(c, c), v["cc"])
            ^ M(M(a, b), v["ab"]) ^ M(M(a, c), v["ac"]) ^ M(M(b, c), v["bc"])
        )

    fiber_pts = []
    for a, b, c in product(range(ctx_big.q), repeat=3):
        if (a, b, c) == (0, 0, 0):
            continue
        lead = a if a else (b if b else c)
        if lead != 1:
            continue
        if conic_val(a, b, c) == 0:
            fiber_pts.append((a, b, c))
    for abc in fiber_pts:
        singular_here = None
        for wi, w in enumerate(BASE_VARS):
            if pb.coords[wi] == 0:
                continue
            tw = [ctx_big.pow(pb.coords[wi], e) for e in spec.degree_vector]
            chart_fib = tuple(M(cc, t) for cc, t in zip(abc, tw))
            for vi, vf in enumerate(FIBER_VARS):
                fc = chart_fib[vi]
                if fc == 0:
                    continue
                ce = chart_equation(spec, w, vf)
                sb = ctx_big.inv(pb.coords[wi])
                sf = ctx_big.inv(fc)
                base_aff = [M(cc, sb) for k, cc in enumerate(pb.coords) if k != wi]
                fib_aff = [M(cc, sf) for k, cc in enumerate(chart_fib) if k != vi]
                pt = tuple(base_aff + fib_aff)
                eq = ce.equation.embed_to(ctx_big)
                assert eq.eval_bits(ctx_big, pt) == 0, "fiber point escaped the chart equation"
                grads = [partial_derivative(eq, nm).eval_bits(ctx_big, pt) for nm in eq.vars]
                s = all(g == 0 for g in grads)
                if singular_here is None:
                    singular_here = s
                else:
                    assert singular_here == s, "charts disagree on singularity"
        if singular_here:
            sing.append(abc)
    return sing
