"""Polynomial gcds and factorization over F_{2^k}.

Univariate factorization is the squarefree / distinct-degree / equal-degree
chain from :mod:`conic2._dense`.  Bivariate factorization specializes the
co-variable at a point keeping the leading coefficient nonzero and the
specialized polynomial squarefree (extending the field when the base is too
small), Hensel-lifts the univariate factors to precision beyond twice the
co-variable degree, recombines factor subsets by exact division, and merges
factors found over an auxiliary extension along Frobenius orbits back to the
coefficient field.

Absolute irreducibility is decided by factoring over F_{2^(k e)} for every
e up to the total degree: the absolute irreducible factors of an
F_{2^k}-irreducible polynomial are Galois-conjugate, hence defined over an
extension of degree at most the degree, so the test is complete.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import _dense
from .gf2k import FieldCtx, embed_bits, field_new, section_bits
from .poly import (
    NotDivisible,
    Poly,
    dehomogenize,
    exact_div,
    from_dense,
    homogenize,
    is_homogeneous,
    is_square,
    partial_derivative,
    poly_sqrt,
    substitute,
    to_dense,
)


class UnluckySpecializationExhausted(RuntimeError):
    """No valid specialization found within the configured budget."""


_SPECIALIZATION_BUDGET = 4096


# -- canonical ordering --------------------------------------------------------


def _factor_sort_key(p: Poly):
    return (p.total_degree(), sorted(p.terms.items(), reverse=True))


def sort_factors(items: list[tuple[Poly, int]]) -> list[tuple[Poly, int]]:
    return sorted(items, key=lambda fm: _factor_sort_key(fm[0]))


# -- univariate ------------------------------------------------------------------


def univariate_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a polynomial using at most one variable into monic irreducibles."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    active = f.variables_used()
    if len(active) > 1:
        raise ValueError(f"univariate_factor got a polynomial in {active}")
    if not active:
        return []
    name = active[0]
    _, fac = _dense.factor(f.ctx, to_dense(f, name))
    return sort_factors([(from_dense(f.ctx, f.vars, name, coeffs), m) for coeffs, m in fac])


def univariate_roots(f: Poly, ctx_eval: FieldCtx) -> list[int]:
    """Roots (raw bits) inside ctx_eval of a one-variable polynomial."""
    active = f.variables_used()
    if len(active) != 1:
        raise ValueError("univariate_roots expects exactly one active variable")
    name = active[0]
    i = f.vars.index(name)
    dense = [0] * (f.degree_in(name) + 1)
    for m, c in f.terms.items():
        dense[m[i]] = embed_bits(f.ctx, ctx_eval, c)
    return _dense.roots(ctx_eval, dense)


# -- binary forms ------------------------------------------------------------------


def binary_form_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a nonzero binary form into irreducible forms over its own field."""
    if len(f.vars) != 2:
        raise ValueError("binary_form_factor expects a two-variable polynomial")
    d = is_homogeneous(f)
    if d is None or d == "zero":
        raise ValueError("binary_form_factor expects a nonzero homogeneous form")
    u, v = f.vars
    out: dict[Poly, int] = {}
    ev = min(m[1] for m in f.terms)
    g = f.shift(v, -ev) if ev else f
    if ev:
        out[Poly.var(f.ctx, f.vars, v)] = ev
    eu = min(m[0] for m in g.terms)
    if eu:
        g = g.shift(u, -eu)
        out[Poly.var(f.ctx, f.vars, u)] = eu
    if g.total_degree() > 0:
        dense = [0] * (g.degree_in(u) + 1)
        for m, c in g.terms.items():
            dense[m[0]] = c
        _, fac = _dense.factor(f.ctx, dense)
        for coeffs, m in fac:
            dd = _dense.deg(coeffs)
            form = Poly(f.ctx, f.vars, {(e, dd - e): c for e, c in enumerate(coeffs) if c})
            out[form] = out.get(form, 0) + m
    return sort_factors(list(out.items()))


# -- bivariate gcd (primitive polynomial remainder sequence) -----------------------

# Internal bivariate layout: list over the main variable's exponent of dense
# co-variable coefficient lists ("columns").


def _bl_from(p: Poly, xn: str, yn: str) -> list[list[int]]:
    ix, iy = p.vars.index(xn), p.vars.index(yn)
    cols: list[list[int]] = [[0] * (p.degree_in(yn) + 1) for _ in range(p.degree_in(xn) + 1)]
    for m, co in p.terms.items():
        cols[m[ix]][m[iy]] ^= co
    return [_dense.trim(c) for c in cols]


def _bl_to(ctx: FieldCtx, cols, vars: tuple, xn: str, yn: str) -> Poly:
    ix, iy = vars.index(xn), vars.index(yn)
    n = len(vars)
    terms = {}
    for e, col in enumerate(cols):
        for ey, c in enumerate(col):
            if c:
                mono = [0] * n
                mono[ix] = e
                mono[iy] = ey
                terms[tuple(mono)] = c
    return Poly(ctx, vars, terms)


def _bl_trim(cols):
    n = len(cols)
    while n and not cols[n - 1]:
        n -= 1
    return cols[:n]


def _bl_content(ctx, cols) -> list[int]:
    cont: list[int] = []
    for c in cols:
        if c:
            cont = _dense.gcd(ctx, cont, c) if cont else _dense.monic(ctx, c)
            if _dense.deg(cont) == 0:
                return [1]
    return cont


def _bl_divide_content(ctx, cols, cont):
    if cont == [1]:
        return [list(c) for c in cols]
    out = []
    for c in cols:
        if not c:
            out.append([])
        else:
            q, r = _dense.divmod_(ctx, c, cont)
            if r:  # pragma: no cover - defensive
                raise AssertionError("content division left a remainder")
            out.append(q)
    return out


def _bl_scale(ctx, cols, s: list[int]):
    return [_dense.mul(ctx, c, s) if c else [] for c in cols]


def _bl_add(a, b):
    out = []
    for i in range(max(len(a), len(b))):
        ca = a[i] if i < len(a) else []
        cb = b[i] if i < len(b) else []
        out.append(_dense.add(ca, cb))
    return _bl_trim(out)


def _bl_prem(ctx, a, b):
    """Pseudo-remainder in the main variable (char 2, so signs are free)."""
    a = _bl_trim([list(c) for c in a])
    b = _bl_trim(b)
    lb = b[-1]
    while a and len(a) >= len(b):
        la = a[-1]
        shift = len(a) - len(b)
        scaled = _bl_scale(ctx, a, lb)
        killer = [[] for _ in range(shift)] + _bl_scale(ctx, b, la)
        a2 = _bl_add(scaled, killer)
        if len(a2) >= len(a):  # pragma: no cover - defensive
            raise AssertionError("pseudo-division failed to reduce the degree")
        a = a2
    return a


def gcd_bivariate(f: Poly, g: Poly) -> Poly:
    """Gcd of polynomials using at most two variables, normalized monic."""
    if f.ctx is not g.ctx or f.vars != g.vars:
        raise ValueError("gcd_bivariate expects polynomials over one ring")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    ctx = f.ctx
    active = sorted(set(f.variables_used()) | set(g.variables_used()))
    if not active:
        return Poly.const(ctx, f.vars, 1)
    if len(active) == 1:
        d = _dense.gcd(ctx, to_dense(f, active[0]), to_dense(g, active[0]))
        return from_dense(ctx, f.vars, active[0], d).monic()
    if len(active) > 2:
        raise ValueError(f"gcd_bivariate got more than two variables: {active}")
    xn, yn = active
    a, b = _bl_from(f, xn, yn), _bl_from(g, xn, yn)
    ca, cb = _bl_content(ctx, a), _bl_content(ctx, b)
    a = _bl_divide_content(ctx, a, ca)
    b = _bl_divide_content(ctx, b, cb)
    cont = _dense.gcd(ctx, ca, cb)
    while _bl_trim(b):
        if len(a) < len(b):
            a, b = b, a
        r = _bl_prem(ctx, a, b)
        if r:
            r = _bl_divide_content(ctx, r, _bl_content(ctx, r))
        a, b = b, r
    result = _bl_to(ctx, a, f.vars, xn, yn)
    if _dense.deg(cont) > 0:
        result = result * from_dense(ctx, f.vars, yn, cont)
    return result.monic()


def gcd_many(polys: list[Poly]) -> Poly:
    """Fold gcd_bivariate over nonzero inputs."""
    acc: Poly | None = None
    for p in polys:
        if p.is_zero():
            continue
        acc = p.monic() if acc is None else gcd_bivariate(acc, p)
        if acc.is_constant():
            return acc
    if acc is None:
        raise ValueError("gcd of an all-zero family")
    return acc


# -- homogeneous trivariate gcd and squarefreeness -----------------------------


def _strip_monomial(f: Poly) -> tuple[Poly, list[int]]:
    ords = [min(m[i] for m in f.terms) for i in range(len(f.vars))]
    g = f
    for name, e in zip(f.vars, ords):
        if e:
            g = g.shift(name, -e)
    return g, ords


def gcd_homogeneous(f: Poly, g: Poly) -> Poly:
    """Gcd of nonzero homogeneous trivariate polynomials, normalized monic."""
    if is_homogeneous(f) in (None, "zero") or is_homogeneous(g) in (None, "zero"):
        raise ValueError("gcd_homogeneous expects nonzero homogeneous inputs")
    fs, of = _strip_monomial(f)
    gs, og = _strip_monomial(g)
    last = f.vars[-1]
    h = gcd_bivariate(dehomogenize(fs, last), dehomogenize(gs, last))
    d = h.total_degree()
    hh = homogenize(h, last) if d >= 0 else Poly.const(f.ctx, f.vars, 1)
    hh = hh.with_vars(f.vars)
    for name, ef, eg in zip(f.vars, of, og):
        e = min(ef, eg)
        if e:
            hh = hh * Poly.var(f.ctx, f.vars, name, e)
    return hh.monic()


def gcd_homogeneous_many(polys: list[Poly]) -> Poly:
    acc: Poly | None = None
    for p in polys:
        if p.is_zero():
            continue
        acc = p.monic() if acc is None else gcd_homogeneous(acc, p)
        if acc.is_constant():
            return acc
    if acc is None:
        raise ValueError("gcd of an all-zero family")
    return acc


def squarefree_homogeneous(f: Poly) -> bool:
    """Whether a nonzero homogeneous polynomial has no repeated factor."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.is_constant():
        return True
    parts = [partial_derivative(f, v) for v in f.variables_used()]
    nonzero = [p for p in parts if not p.is_zero()]
    if not nonzero:
        return False  # all partials vanish: f is a perfect square
    return gcd_homogeneous_many([f] + nonzero).is_constant()


# -- bivariate factorization ----------------------------------------------------


def _bl_eval_y(ctx, cols, r: int) -> list[int]:
    return _dense.trim([_dense.eval_at(ctx, c, r) for c in cols])


def _dense_is_squarefree(ctx, u) -> bool:
    du = _dense.deriv(u)
    if not du:
        return _dense.deg(u) == 0
    return _dense.deg(_dense.gcd(ctx, u, du)) == 0


def _find_specialization(f: Poly, xn: str, yn: str):
    """(field, embedded poly, r) with lc_x(f)(r) != 0 and f(x, r) squarefree."""
    ctx = f.ctx
    tried = 0
    ext = 1
    while ctx.k * ext <= 64:
        ctx_e = field_new(ctx.k * ext)
        fe = f.embed_to(ctx_e)
        cols = _bl_from(fe, xn, yn)
        lead = cols[-1]
        for r in range(ctx_e.q):
            tried += 1
            if tried > _SPECIALIZATION_BUDGET:
                raise UnluckySpecializationExhausted(
                    f"no good specialization of {yn} within {_SPECIALIZATION_BUDGET} tries"
                )
            if _dense.eval_at(ctx_e, lead, r) == 0:
                continue
            u = _bl_eval_y(ctx_e, cols, r)
            if _dense_is_squarefree(ctx_e, u):
                return ctx_e, fe, cols, r, u
        ext += 1
    raise UnluckySpecializationExhausted("field tower exhausted while specializing")


def _sp_mul(ctx, a, b, prec: int):
    """Product of column polynomials, co-variable truncated below prec."""
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            prod = _dense.mul(ctx, ca, cb)
            out[i + j] = _dense.add(out[i + j], prod[:prec])
    return _bl_trim([_dense.trim(c[:prec]) for c in out])


def _hensel_lift(ctx, f_monic_cols, base_factors, prec: int):
    """Lift pairwise-coprime monic base factors to a factorization mod t^prec."""
    n = len(f_monic_cols) - 1
    s = len(base_factors)
    others = []
    bezout = []
    for i in range(s):
        g = [1]
        for j in range(s):
            if j != i:
                g = _dense.mul(ctx, g, base_factors[j])
        others.append(g)
        bezout.append(_dense.inv_mod(ctx, g, base_factors[i]))
    lifted = [[[c] if c else [] for c in g] for g in base_factors]
    for j in range(1, prec):
        prod = lifted[0]
        for i in range(1, s):
            prod = _sp_mul(ctx, prod, lifted[i], j + 1)
        err = _bl_add(f_monic_cols, prod)
        e = _dense.trim([col[j] if len(col) > j else 0 for col in err])
        if not e:
            continue
        for i in range(s):
            delta = _dense.mod(ctx, _dense.mul(ctx, e, bezout[i]), base_factors[i])
            cols = lifted[i]
            for idx, c in enumerate(delta):
                if c:
                    col = cols[idx]
                    if len(col) <= j:
                        col.extend([0] * (j + 1 - len(col)))
                    col[j] ^= c
                    cols[idx] = _dense.trim(col)
    return lifted


def _primitive_x(p: Poly, xn: str, yn: str) -> Poly:
    cols = _bl_from(p, xn, yn)
    cont = _bl_content(p.ctx, cols)
    if _dense.deg(cont) > 0:
        cols = _bl_divide_content(p.ctx, cols, cont)
    return _bl_to(p.ctx, cols, p.vars, xn, yn)


def _factor_squarefree_primitive(f: Poly, xn: str, yn: str) -> list[Poly]:
    """Irreducible factors of f: squarefree, primitive in xn, specializing yn."""
    ctx = f.ctx
    ctx_e, fe, cols, r, u = _find_specialization(f, xn, yn)
    lc_u, base = _dense.factor(ctx_e, u)
    base_factors = [g for g, _ in base]
    if len(base_factors) == 1:
        return [f.monic()]
    degy = fe.degree_in(yn)
    prec = 2 * degy + 1
    r_elem = Poly.const(ctx_e, fe.vars, r)
    shift_in = {yn: Poly.var(ctx_e, fe.vars, yn) + r_elem}
    ft = substitute(fe, shift_in)
    tcols = _bl_from(ft, xn, yn)
    linv = _dense.series_inverse(ctx_e, tcols[-1], prec)
    monic_cols = [_dense.trim(_dense.mul(ctx_e, c, linv)[:prec]) if c else [] for c in tcols]
    lifted = _hensel_lift(ctx_e, monic_cols, base_factors, prec)
    order = sorted(range(len(lifted)), key=lambda i: (len(base_factors[i]), base_factors[i][::-1]))
    pool = [lifted[i] for i in order]

    remaining = fe
    found: list[Poly] = []
    while pool:
        if remaining.is_constant():  # pragma: no cover - defensive
            break
        rem_cols = _bl_from(remaining, xn, yn)
        lshift = _dense.compose(ctx_e, rem_cols[-1], [r, 1])
        extracted = False
        max_size = len(pool)
        for size in range(1, max_size):
            for combo in itertools.combinations(range(len(pool)), size):
                prod = pool[combo[0]]
                for i in combo[1:]:
                    prod = _sp_mul(ctx_e, prod, pool[i], prec)
                cand_cols = [
                    _dense.trim(_dense.mul(ctx_e, c, lshift)[:prec]) if c else [] for c in prod
                ]
                cand_t = _bl_to(ctx_e, cand_cols, fe.vars, xn, yn)
                cand = substitute(cand_t, shift_in)
                cand = _primitive_x(cand, xn, yn)
                if cand.is_constant():
                    continue
                try:
                    quo = exact_div(remaining, cand)
                except NotDivisible:
                    continue
                found.append(cand.monic())
                remaining = quo
                pool = [p for i, p in enumerate(pool) if i not in combo]
                extracted = True
                break
            if extracted:
                break
        if not extracted:
            found.append(remaining.monic())
            remaining = Poly.const(ctx_e, fe.vars, 1)
            pool = []
    if not remaining.is_constant():
        found.append(remaining.monic())

    if ctx_e is ctx:
        return found
    return _merge_frobenius_orbits(ctx, ctx_e, found)


def _frobenius_poly(p: Poly, q_base: int) -> Poly:
    pw = p.ctx.pow
    return Poly(p.ctx, p.vars, {m: pw(c, q_base) for m, c in p.terms.items()})


def _merge_frobenius_orbits(ctx: FieldCtx, ctx_e: FieldCtx, factors: list[Poly]) -> list[Poly]:
    """Group factors over an extension into base-field irreducible products."""
    pending = sorted(factors, key=_factor_sort_key)
    out: list[Poly] = []
    while pending:
        h = pending.pop(0)
        orbit = [h]
        nxt = _frobenius_poly(h, ctx.q).monic()
        while nxt != h:
            if nxt not in pending:  # pragma: no cover - defensive
                raise AssertionError("Frobenius conjugate missing from factor list")
            pending.remove(nxt)
            orbit.append(nxt)
            nxt = _frobenius_poly(nxt, ctx.q).monic()
        prod = orbit[0]
        for o in orbit[1:]:
            prod = prod * o
        terms = {}
        for m, c in prod.monic().terms.items():
            back = section_bits(ctx, ctx_e, c)
            if back is None:  # pragma: no cover - defensive
                raise AssertionError("orbit product has coefficients outside the base field")
            terms[m] = back
        out.append(Poly(ctx, prod.vars, terms).monic())
    return out


def bivariate_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Complete factorization of a polynomial in at most two variables.

    Returns monic irreducible factors with multiplicities, sorted canonically;
    the product times the leading coefficient re-expands to the input.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    active = f.variables_used()
    if len(active) > 2:
        raise ValueError(f"bivariate_factor got a polynomial in {active}")
    if len(active) <= 1:
        return univariate_factor(f)
    acc: dict[Poly, int] = {}
    _split_bivariate(f.monic(), active[0], active[1], 1, acc)
    return sort_factors(list(acc.items()))


def _split_bivariate(f: Poly, xn: str, yn: str, mult: int, acc: dict) -> None:
    if f.is_constant():
        return
    active = f.variables_used()
    if len(active) <= 1:
        for g, m in univariate_factor(f):
            acc[g] = acc.get(g, 0) + m * mult
        return
    # contents with respect to both variables
    for main, co in ((xn, yn), (yn, xn)):
        cols = _bl_from(f, main, co)
        cont = _bl_content(f.ctx, cols)
        if _dense.deg(cont) > 0:
            cont_poly = from_dense(f.ctx, f.vars, co, cont)
            _split_bivariate(cont_poly, xn, yn, mult, acc)
            _split_bivariate(exact_div(f, cont_poly).monic(), xn, yn, mult, acc)
            return
    if is_square(f):
        _split_bivariate(poly_sqrt(f).monic(), xn, yn, 2 * mult, acc)
        return
    fx = partial_derivative(f, xn)
    main, co, d = (xn, yn, fx) if not fx.is_zero() else (yn, xn, partial_derivative(f, yn))
    g = gcd_bivariate(f, d)
    if not g.is_constant():
        _split_bivariate(g, xn, yn, mult, acc)
        _split_bivariate(exact_div(f, g).monic(), xn, yn, mult, acc)
        return
    for irr in _factor_squarefree_primitive(f, main, co):
        acc[irr] = acc.get(irr, 0) + mult


# -- absolute irreducibility ------------------------------------------------------


@lru_cache(maxsize=4096)
def _abs_irred_bivariate(f: Poly) -> bool:
    deg = f.total_degree()
    factors = bivariate_factor(f)
    if sum(m for _, m in factors) != 1:
        return False
    ctx = f.ctx
    for e in range(2, deg + 1):
        if ctx.k * e > 64:
            raise UnluckySpecializationExhausted(
                f"absolute irreducibility needs F_{{2^{ctx.k * e}}}, beyond the word bound"
            )
        fe = f.embed_to(field_new(ctx.k * e))
        if sum(m for _, m in bivariate_factor(fe)) != 1:
            return False
    return True


def is_absolutely_irreducible(f: Poly) -> bool:
    """True iff f is irreducible over the algebraic closure.

    Accepts a polynomial in at most two variables, or a homogeneous one in
    three; trivariate input is dehomogenized on a chart not dividing it.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("absolute irreducibility needs a nonzero non-constant input")
    active = f.variables_used()
    if len(active) == 3:
        if is_homogeneous(f) is None:
            raise ValueError("trivariate input must be homogeneous")
        g, ords = _strip_monomial(f)
        if g.is_constant():
            # monomial: irreducible only when it is a single variable
            return sum(ords) == 1
        if any(ords):
            return False
        work = dehomogenize(f, f.vars[-1])
    else:
        work = f
    if work.total_degree() == 1:
        return True
    wactive = work.variables_used()
    if len(wactive) == 1:
        return work.total_degree() == 1
    if len(wactive) == 0:
        raise ValueError("constant after dehomogenization")
    # canonicalize variable tuple for caching
    wa = tuple(sorted(wactive))
    return _abs_irred_bivariate(work.with_vars(wa))
