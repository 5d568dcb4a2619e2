"""Sparse multivariate polynomials over F_{2^k}.

A :class:`Poly` is a context, an ordered tuple of variable names, and a map
from exponent vectors to nonzero coefficient bits.  Terms are kept in no
particular order internally; printing and iteration use graded
lexicographic order, so the printed form is canonical and equality is
structural.  The characteristic-2 calculus lives here as well: the formal
derivative keeps exactly the odd-exponent terms, and squaring doubles
exponents and squares coefficients (Frobenius).

Grammar for :func:`poly_parse` / :func:`poly_print`: terms joined by ``+``;
a term is an optional coefficient literal (``0``, ``1``, ``j``, or
``F<2^k>:<hex>``) and ``*``-joined variable powers like ``x^3``; whitespace
is insignificant and there is no ``-`` in characteristic 2.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from . import _dense
from .gf2k import ContextMismatch, FieldCtx, FieldElem, elem_parse, embed_bits, field_new


class ParseError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(ParseError):
    """Identifier in polynomial text that is not a declared variable."""


class NotDivisible(ArithmeticError):
    """exact_div was called with a non-divisor."""


Monomial = tuple  # tuple[int, ...]


def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial over a fixed F_{2^k} in named variables."""

    __slots__ = ("ctx", "vars", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, vars: tuple[str, ...], terms: dict) -> None:
        self.ctx = ctx
        self.vars = vars
        self.terms = terms
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ctx: FieldCtx, vars: Iterable[str]) -> "Poly":
        return Poly(ctx, tuple(vars), {})

    @staticmethod
    def const(ctx: FieldCtx, vars: Iterable[str], bits: int) -> "Poly":
        vars = tuple(vars)
        if bits == 0:
            return Poly(ctx, vars, {})
        return Poly(ctx, vars, {(0,) * len(vars): bits})

    @staticmethod
    def var(ctx: FieldCtx, vars: Iterable[str], name: str, exp: int = 1) -> "Poly":
        vars = tuple(vars)
        i = vars.index(name)
        mono = tuple(exp if j == i else 0 for j in range(len(vars)))
        return Poly(ctx, vars, {mono: 1})

    @staticmethod
    def from_terms(ctx: FieldCtx, vars: Iterable[str], items: Iterable[tuple[Monomial, int]]) -> "Poly":
        vars = tuple(vars)
        terms: dict = {}
        n = len(vars)
        for mono, bits in items:
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for variables {vars}")
            bits &= ctx.q - 1
            if bits:
                cur = terms.get(mono, 0) ^ bits
                if cur:
                    terms[mono] = cur
                else:
                    terms.pop(mono, None)
        return Poly(ctx, vars, terms)

    # -- predicates and degrees ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_bits(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def leading(self) -> tuple[Monomial, int]:
        """Graded-lex leading (monomial, coefficient bits); error if zero."""
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale(self.ctx.inv(lc))

    def coefficient(self, mono: Monomial) -> FieldElem:
        return FieldElem(self.ctx, self.terms.get(tuple(mono), 0))

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise ContextMismatch("polynomials over different field contexts")
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            cur = terms.get(m, 0) ^ c
            if cur:
                terms[m] = cur
            else:
                terms.pop(m, None)
        return Poly(self.ctx, self.vars, terms)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.ctx, self.vars, {})
        fmul = self.ctx.mul
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = cb if ca == 1 else (ca if cb == 1 else fmul(ca, cb))
                cur = terms.get(m, 0) ^ c
                if cur:
                    terms[m] = cur
                else:
                    terms.pop(m, None)
        return Poly(self.ctx, self.vars, terms)

    def scale(self, bits: int) -> "Poly":
        if bits == 0:
            return Poly(self.ctx, self.vars, {})
        if bits == 1:
            return self
        fmul = self.ctx.mul
        return Poly(self.ctx, self.vars, {m: fmul(c, bits) for m, c in self.terms.items()})

    def shift(self, name: str, exp: int) -> "Poly":
        """Multiply by name**exp (exp may be negative if every term allows it)."""
        i = self.vars.index(name)
        terms = {}
        for m, c in self.terms.items():
            e = m[i] + exp
            if e < 0:
                raise NotDivisible(f"term {m} not divisible by {name}^{-exp}")
            terms[m[:i] + (e,) + m[i + 1:]] = c
        return Poly(self.ctx, self.vars, terms)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.ctx, self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and other.ctx is self.ctx
            and other.vars == self.vars
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.k, self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return poly_print(self)

    # -- variable plumbing -----------------------------------------------------

    def with_vars(self, vars_out: Iterable[str]) -> "Poly":
        """Re-express over a different variable tuple (a superset/reorder)."""
        vars_out = tuple(vars_out)
        idx = []
        for i, v in enumerate(self.vars):
            if v in vars_out:
                idx.append((i, vars_out.index(v)))
            elif any(m[i] for m in self.terms):
                raise ValueError(f"variable {v} in use but absent from {vars_out}")
        n = len(vars_out)
        terms = {}
        for m, c in self.terms.items():
            mono = [0] * n
            for i, j in idx:
                mono[j] = m[i]
            terms[tuple(mono)] = c
        return Poly(self.ctx, vars_out, terms)

    def embed_to(self, target: FieldCtx) -> "Poly":
        if target is self.ctx:
            return self
        terms = {m: embed_bits(self.ctx, target, c) for m, c in self.terms.items()}
        return Poly(target, self.vars, terms)

    # -- evaluation --------------------------------------------------------------

    def eval_bits(self, ctx_eval: FieldCtx, coords: tuple) -> int:
        """Evaluate at raw coordinates in ctx_eval (coefficients embed there)."""
        if len(coords) != len(self.vars):
            raise ValueError("coordinate count does not match variables")
        src = self.ctx
        fmul = ctx_eval.mul
        fpow = ctx_eval.pow
        acc = 0
        for m, c in self.terms.items():
            t = c if src is ctx_eval else embed_bits(src, ctx_eval, c)
            for base, e in zip(coords, m):
                if e:
                    t = fmul(t, fpow(base, e)) if t else 0
                    if t == 0:
                        break
            acc ^= t
        return acc

    def __call__(self, *coords: FieldElem) -> FieldElem:
        if not coords:
            raise ValueError("evaluation needs coordinates")
        ctx_eval = coords[0].ctx
        for c in coords:
            if c.ctx is not ctx_eval:
                raise ContextMismatch("evaluation coordinates over mixed contexts")
        return FieldElem(ctx_eval, self.eval_bits(ctx_eval, tuple(c.bits for c in coords)))


# -- spec operations ---------------------------------------------------------


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def exact_div(p: Poly, q: Poly) -> Poly:
    """Exact quotient p/q; raises NotDivisible when q does not divide p."""
    p._check(q)
    if q.is_zero():
        raise NotDivisible("division by the zero polynomial")
    ctx = p.ctx
    lm, lc = q.leading()
    inv_lc = ctx.inv(lc)
    quot_terms: dict = {}
    r = p
    while not r.is_zero():
        rm, rc = r.leading()
        mono = tuple(a - b for a, b in zip(rm, lm))
        if any(e < 0 for e in mono):
            raise NotDivisible("leading term not divisible; remainder nonzero")
        c = ctx.mul(rc, inv_lc)
        quot_terms[mono] = c
        r = r + Poly(ctx, p.vars, {mono: c}) * q
    return Poly(ctx, p.vars, quot_terms)


def poly_square(p: Poly) -> Poly:
    """Frobenius square: exponents double, coefficients square."""
    sq = p.ctx.sq
    return Poly(p.ctx, p.vars, {tuple(2 * e for e in m): sq(c) for m, c in p.terms.items()})


def is_square(p: Poly) -> bool:
    return all(all(e % 2 == 0 for e in m) for m in p.terms)


def poly_sqrt(p: Poly) -> Poly:
    """Inverse of poly_square; defined exactly on polynomials with even exponents."""
    if not is_square(p):
        raise ValueError("polynomial is not a square")
    sqrt = p.ctx.sqrt
    return Poly(p.ctx, p.vars, {tuple(e // 2 for e in m): sqrt(c) for m, c in p.terms.items()})


def partial_derivative(p: Poly, name: str) -> Poly:
    """Formal derivative; modulo 2 only odd exponents contribute."""
    i = p.vars.index(name)
    terms: dict = {}
    for m, c in p.terms.items():
        if m[i] & 1:
            mono = m[:i] + (m[i] - 1,) + m[i + 1:]
            cur = terms.get(mono, 0) ^ c
            if cur:
                terms[mono] = cur
            else:
                terms.pop(mono, None)
    return Poly(p.ctx, p.vars, terms)


def substitute(p: Poly, assignment: Mapping[str, "Poly | FieldElem | int"],
               vars_out: Iterable[str] | None = None) -> Poly:
    """Ring-homomorphic image; unassigned variables map to themselves."""
    ctx = p.ctx
    vars_out = tuple(vars_out) if vars_out is not None else p.vars
    images: list[Poly] = []
    for v in p.vars:
        val = assignment.get(v)
        if val is None:
            images.append(Poly.var(ctx, vars_out, v) if v in vars_out else None)  # type: ignore[arg-type]
        elif isinstance(val, Poly):
            if val.ctx is not ctx:
                raise ContextMismatch("substitution value over a different context")
            images.append(val.with_vars(vars_out))
        elif isinstance(val, FieldElem):
            if val.ctx is not ctx:
                raise ContextMismatch("substitution value over a different context")
            images.append(Poly.const(ctx, vars_out, val.bits))
        elif val in (0, 1):
            images.append(Poly.const(ctx, vars_out, val))
        else:
            raise TypeError(f"cannot substitute {val!r}")
    acc = Poly.zero(ctx, vars_out)
    for m, c in p.terms.items():
        term = Poly.const(ctx, vars_out, c)
        for img, e in zip(images, m):
            if e:
                if img is None:
                    raise ValueError("variable in use is missing from the output variables")
                term = term * img ** e
        acc = acc + term
    return acc


def is_homogeneous(p: Poly):
    """Common total degree, or None if inhomogeneous.

    The zero polynomial is homogeneous of every degree: it returns the string
    ``"zero"`` so callers can branch on it explicitly.
    """
    if p.is_zero():
        return "zero"
    degs = {sum(m) for m in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def dehomogenize(p: Poly, name: str) -> Poly:
    """Set one variable to 1 and drop it from the variable tuple."""
    i = p.vars.index(name)
    rest = p.vars[:i] + p.vars[i + 1:]
    terms: dict = {}
    for m, c in p.terms.items():
        mono = m[:i] + m[i + 1:]
        cur = terms.get(mono, 0) ^ c
        if cur:
            terms[mono] = cur
        else:
            terms.pop(mono, None)
    return Poly(p.ctx, rest, terms)


def homogenize(p: Poly, name: str, position: int | None = None) -> Poly:
    """Introduce a variable making p homogeneous of its total degree."""
    if name in p.vars:
        raise ValueError(f"variable {name} already present")
    d = p.total_degree()
    vars_out = list(p.vars)
    pos = len(vars_out) if position is None else position
    vars_out.insert(pos, name)
    terms = {}
    for m, c in p.terms.items():
        mono = list(m)
        mono.insert(pos, d - sum(m))
        terms[tuple(mono)] = c
    return Poly(p.ctx, tuple(vars_out), terms)


# -- univariate and binary-form views ----------------------------------------


def to_dense(p: Poly, name: str) -> list:
    """Dense coefficient list of a polynomial using only the one variable."""
    i = p.vars.index(name)
    out = [0] * (p.degree_in(name) + 1) if p.terms else []
    for m, c in p.terms.items():
        if any(e and j != i for j, e in enumerate(m)):
            raise ValueError(f"polynomial uses more than the variable {name}")
        out[m[i]] = c
    return out


def from_dense(ctx: FieldCtx, vars: Iterable[str], name: str, coeffs: list) -> Poly:
    vars = tuple(vars)
    i = vars.index(name)
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            mono = tuple(e if j == i else 0 for j in range(len(vars)))
            terms[mono] = c
    return Poly(ctx, vars, terms)


def _binary_split(f: Poly) -> tuple[int, list]:
    """Write a binary form as second_var^e * (dense univariate in first var)."""
    u, v = f.vars
    e = min((m[1] for m in f.terms), default=0)
    g = f.shift(v, -e) if e else f
    dense = [0] * (g.degree_in(u) + 1)
    for m, c in g.terms.items():
        dense[m[0]] = c
    return e, dense


def binary_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two binary forms (homogeneous, same two variables).

    The gcd of forms over F_{2^k} is unchanged by extending the field, so
    computing over the coefficient field is enough.
    """
    if len(f.vars) != 2 or f.vars != g.vars:
        raise ValueError("binary_gcd expects two forms in the same two variables")
    for h in (f, g):
        if is_homogeneous(h) is None:
            raise ValueError("binary_gcd expects homogeneous forms")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    ctx = f.ctx
    ef, df = _binary_split(f)
    eg, dg = _binary_split(g)
    d = _dense.gcd(ctx, df, dg)
    u, v = f.vars
    # Rehomogenize the univariate gcd to a form of its own degree.
    dd = _dense.deg(d)
    terms = {}
    for e, c in enumerate(d):
        if c:
            terms[(e, dd - e + min(ef, eg))] = c
    return Poly(ctx, f.vars, terms).monic()


# -- resultants ----------------------------------------------------------------


def _coeffs_in(p: Poly, name: str) -> list[Poly]:
    """Dense list of Poly coefficients of p viewed in the one variable."""
    i = p.vars.index(name)
    d = p.degree_in(name)
    out = [Poly.zero(p.ctx, p.vars) for _ in range(d + 1)]
    for m, c in p.terms.items():
        mono = m[:i] + (0,) + m[i + 1:]
        out[m[i]] = out[m[i]] + Poly(p.ctx, p.vars, {mono: c})
    return out


def resultant(f: Poly, g: Poly, name: str) -> Poly:
    """Sylvester resultant eliminating one variable (char 2: signs vanish).

    Computed by fraction-free (Bareiss) elimination on the Sylvester matrix,
    so all intermediate divisions are exact.
    """
    f._check(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    m, n = f.degree_in(name), g.degree_in(name)
    if m <= 0 and n <= 0:
        return Poly.const(f.ctx, f.vars, 1)
    if m <= 0:
        return f ** n
    if n <= 0:
        return g ** m
    fc = _coeffs_in(f, name)
    gc = _coeffs_in(g, name)
    size = m + n
    zero = Poly.zero(f.ctx, f.vars)
    rows: list[list[Poly]] = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    # Bareiss elimination; row swaps cost no sign in characteristic 2.
    denom = Poly.const(f.ctx, f.vars, 1)
    for k in range(size - 1):
        pivot = next((r for r in range(k, size) if not rows[r][k].is_zero()), None)
        if pivot is None:
            return zero
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = rows[k][k] * rows[i][j] + rows[i][k] * rows[k][j]
                rows[i][j] = exact_div(num, denom) if not num.is_zero() else zero
            rows[i][k] = zero
        denom = rows[k][k]
    return rows[size - 1][size - 1]


# -- parsing and printing ---------------------------------------------------

_COEFF_RE = re.compile(r"F\d+:[0-9A-Fa-f]+")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_INT_RE = re.compile(r"\d+")


def poly_parse(text: str, ctx: FieldCtx, vars: Iterable[str]) -> Poly:
    """Parse the grammar described in the module docstring."""
    vars = tuple(vars)
    acc = Poly.zero(ctx, vars)
    pos = 0
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos >= n:
        raise ParseError("empty polynomial text", pos)
    expect_term = True
    while pos < n:
        if not expect_term:
            if text[pos] != "+":
                raise ParseError(f"expected '+', found {text[pos]!r}", pos)
            pos = skip_ws(pos + 1)
            expect_term = True
            continue
        term = Poly.const(ctx, vars, 1)
        is_zero_term = False
        while True:
            pos = skip_ws(pos)
            if pos >= n:
                raise ParseError("unexpected end of text inside a term", pos)
            mco = _COEFF_RE.match(text, pos)
            if mco:
                e = elem_parse(mco.group(0), ctx)
                term = term.scale(e.bits)
                is_zero_term = is_zero_term or e.bits == 0
                pos = mco.end()
            elif text[pos].isdigit():
                mi = _INT_RE.match(text, pos)
                lit = mi.group(0)
                if lit == "0":
                    is_zero_term = True
                elif lit != "1":
                    raise ParseError(
                        f"coefficient literal {lit!r} is not valid in characteristic 2", pos
                    )
                pos = mi.end()
            else:
                mid = _IDENT_RE.match(text, pos)
                if not mid:
                    raise ParseError(f"unexpected character {text[pos]!r}", pos)
                name = mid.group(0)
                pos = mid.end()
                if name == "j":
                    e = elem_parse("j", ctx)
                    exp = 1
                    if pos < n and text[pos] == "^":
                        mi = _INT_RE.match(text, pos + 1)
                        if not mi:
                            raise ParseError("expected an integer exponent after '^'", pos + 1)
                        exp = int(mi.group(0))
                        pos = mi.end()
                    term = term.scale(ctx.pow(e.bits, exp))
                elif name in vars:
                    exp = 1
                    if pos < n and text[pos] == "^":
                        mi = _INT_RE.match(text, pos + 1)
                        if not mi:
                            raise ParseError("expected an integer exponent after '^'", pos + 1)
                        exp = int(mi.group(0))
                        pos = mi.end()
                    term = term * Poly.var(ctx, vars, name, exp)
                else:
                    raise UnknownVariable(f"unknown variable {name!r}", mid.start())
            pos = skip_ws(pos)
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            break
        if not is_zero_term:
            acc = acc + term
        expect_term = False
    if expect_term:
        raise ParseError("dangling '+'", pos)
    return acc


def _coeff_str(ctx: FieldCtx, bits: int) -> str:
    if bits == 1:
        return "1"
    if ctx.k == 2 and bits == 2:
        return "j"
    return f"F{ctx.q}:{bits:X}"


def poly_print(p: Poly) -> str:
    """Canonical graded-lex (descending) rendering; round-trips with parse."""
    if p.is_zero():
        return "0"
    parts = []
    for mono in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[mono]
        factors = []
        for name, e in zip(p.vars, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors or c != 1:
            factors.insert(0, _coeff_str(p.ctx, c))
        parts.append("*".join(factors))
    return " + ".join(parts)


# Convenience parser bound to the base-plane variables used throughout.
PLANE_VARS = ("x", "y", "z")


def plane_poly(text: str, ctx: FieldCtx | None = None) -> Poly:
    return poly_parse(text, ctx if ctx is not None else field_new(1), PLANE_VARS)
