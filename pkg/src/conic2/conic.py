"""Conic bundles over the projective plane in characteristic two.

A bundle is recorded as its "half matrix": six homogeneous sections
s_aa, s_ab, s_ac, s_bb, s_bc, s_cc on P^2 (base coordinates x, y, z) cutting
the conic

    s_aa a^2 + s_bb b^2 + s_cc c^2 + s_ab ab + s_ac ac + s_bc bc = 0

in fiber coordinates a, b, c.  Twist degrees (e_a, e_b, e_c) and the value
degree m force deg s_ij = e_i + e_j + m for nonzero sections; zero sections
are legal entries.

In characteristic two the discriminant simplifies to

    Delta = s_ab s_bc s_ac + s_ab^2 s_cc + s_ac^2 s_bb + s_bc^2 s_aa

and the double-line locus Sigma is cut by s_ab = s_ac = s_bc = 0.  Fibers
classify as Smooth / Cross / DoubleLine / NotConic from the values of the
sections at a point; NotConic (all six sections vanish) is a classification
outcome rather than an error so that search workflows can observe and
discard such candidates cheaply.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .gf2k import FieldCtx, FieldElem, elem_parse, elem_str, embed_bits, field_new
from .poly import (
    Poly,
    dehomogenize,
    is_homogeneous,
    poly_parse,
    poly_print,
)

BASE_VARS = ("x", "y", "z")
FIBER_VARS = ("a", "b", "c")
SECTION_KEYS = ("aa", "ab", "ac", "bb", "bc", "cc")
OFF_DIAGONAL = ("ab", "ac", "bc")


class DegreeMismatch(ValueError):
    """A section's degree disagrees with the degree vector."""


class AllZero(ValueError):
    """All six sections vanish identically."""


class FiberType(enum.Enum):
    SMOOTH = "Smooth"
    CROSS = "Cross"
    DOUBLE_LINE = "DoubleLine"
    NOT_CONIC = "NotConic"

    def __str__(self) -> str:
        return self.value


class ProjPoint:
    """A point of P^2 over some F_{2^k}, in normalized homogeneous coordinates.

    Coordinates are scaled so the first nonzero one equals 1; equality is
    equality of normalized coordinates over a common field.
    """

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords: tuple) -> None:
        coords = tuple(coords)
        if len(coords) != 3 or all(c == 0 for c in coords):
            raise ValueError("a projective point needs three not-all-zero coordinates")
        lead = next(c for c in coords if c != 0)
        if lead != 1:
            s = ctx.inv(lead)
            coords = tuple(ctx.mul(c, s) for c in coords)
        self.ctx = ctx
        self.coords = coords

    @staticmethod
    def from_elems(coords: tuple[FieldElem, FieldElem, FieldElem]) -> "ProjPoint":
        ctx = coords[0].ctx
        for c in coords:
            if c.ctx is not ctx:
                raise ValueError("point coordinates over mixed contexts")
        return ProjPoint(ctx, tuple(c.bits for c in coords))

    @staticmethod
    def parse(text: str, ctx: FieldCtx | None = None) -> "ProjPoint":
        raw = text.split(":")
        # hex literals like F4:2 contain a colon of their own: rejoin them
        parts: list[str] = []
        i = 0
        while i < len(raw):
            tok = raw[i].strip()
            if tok.startswith("F") and tok[1:].isdigit() and i + 1 < len(raw):
                parts.append(tok + ":" + raw[i + 1].strip())
                i += 2
            else:
                parts.append(tok)
                i += 1
        if len(parts) != 3:
            raise ValueError(f"a point literal needs three ':'-separated parts: {text!r}")
        elems = [elem_parse(p) for p in parts]
        k = 1
        for e in elems:
            k = k * e.ctx.k // _gcd(k, e.ctx.k)
        target = ctx if ctx is not None else field_new(k)
        bits = tuple(embed_bits(e.ctx, target, e.bits) for e in elems)
        return ProjPoint(target, bits)

    def embed_to(self, target: FieldCtx) -> "ProjPoint":
        if target is self.ctx:
            return self
        return ProjPoint(target, tuple(embed_bits(self.ctx, target, c) for c in self.coords))

    def serialize(self) -> list[str]:
        return [elem_str(FieldElem(self.ctx, c)) for c in self.coords]

    def sort_key(self):
        return (self.ctx.k, self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if other.ctx is self.ctx:
            return other.coords == self.coords
        k = _lcm(self.ctx.k, other.ctx.k)
        if k > 64:
            return False
        common = field_new(k)
        return self.embed_to(common).coords == other.embed_to(common).coords

    def __hash__(self) -> int:
        # Hash by rational data only; cross-field equality stays consistent.
        return hash(tuple(c if c in (0, 1) else -1 for c in self.coords))

    def __repr__(self) -> str:
        return "[" + ":".join(self.serialize()) + "]"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


@dataclass(frozen=True)
class ConicBundleSpec:
    """The half matrix: twist degrees, value degree, and six sections."""

    ctx: FieldCtx
    degree_vector: tuple[int, int, int]
    value_degree: int
    sections: dict

    def section(self, key: str) -> Poly:
        return self.sections[key]

    def forced_degree(self, key: str) -> int:
        i, j = FIBER_VARS.index(key[0]), FIBER_VARS.index(key[1])
        return self.degree_vector[i] + self.degree_vector[j] + self.value_degree

    def twisted(self, t: int) -> "ConicBundleSpec":
        """Simultaneous twist (e_a+t, e_b+t, e_c+t, m-2t): same sections."""
        ea, eb, ec = self.degree_vector
        return ConicBundleSpec(
            self.ctx, (ea + t, eb + t, ec + t), self.value_degree - 2 * t, dict(self.sections)
        )


@dataclass(frozen=True)
class SpecReport:
    section_degrees: dict
    delta_degree: int


def spec_validate(spec: ConicBundleSpec) -> SpecReport:
    """Check homogeneity degrees and nonzeroness; report the forced deg(Delta)."""
    degrees = {}
    any_nonzero = False
    for key in SECTION_KEYS:
        s = spec.sections.get(key)
        if s is None:
            raise DegreeMismatch(f"missing section {key}")
        if s.ctx is not spec.ctx or s.vars != BASE_VARS:
            raise DegreeMismatch(f"section {key} is not a polynomial in x, y, z over the spec field")
        d = is_homogeneous(s)
        if d == "zero":
            degrees[key] = None
            continue
        any_nonzero = True
        forced = spec.forced_degree(key)
        if d != forced:
            raise DegreeMismatch(
                f"section {key} = {poly_print(s)} has degree {d}, but the degree vector forces {forced}"
            )
        degrees[key] = forced
    if not any_nonzero:
        raise AllZero("all six sections are zero")
    ea, eb, ec = spec.degree_vector
    return SpecReport(degrees, 2 * (ea + eb + ec) + 3 * spec.value_degree)


def discriminant(spec: ConicBundleSpec) -> Poly:
    """Delta = s_ab s_bc s_ac + s_ab^2 s_cc + s_ac^2 s_bb + s_bc^2 s_aa."""
    s = spec.sections
    return (
        s["ab"] * s["bc"] * s["ac"]
        + s["ab"] * s["ab"] * s["cc"]
        + s["ac"] * s["ac"] * s["bb"]
        + s["bc"] * s["bc"] * s["aa"]
    )


def sigma_generators(spec: ConicBundleSpec) -> tuple[Poly, Poly, Poly]:
    """The three off-diagonal sections; Sigma is their common zero locus."""
    return (spec.sections["ab"], spec.sections["ac"], spec.sections["bc"])


def section_values(spec: ConicBundleSpec, p: ProjPoint) -> dict:
    """Raw values of the six sections at p, in p's field."""
    return {key: spec.sections[key].eval_bits(p.ctx, p.coords) for key in SECTION_KEYS}


def _delta_value(v: dict, ctx: FieldCtx) -> int:
    mul = ctx.mul
    return (
        mul(mul(v["ab"], v["bc"]), v["ac"])
        ^ mul(mul(v["ab"], v["ab"]), v["cc"])
        ^ mul(mul(v["ac"], v["ac"]), v["bb"])
        ^ mul(mul(v["bc"], v["bc"]), v["aa"])
    )


def classify_fiber(spec: ConicBundleSpec, p: ProjPoint) -> FiberType:
    v = section_values(spec, p)
    if all(v[k] == 0 for k in SECTION_KEYS):
        return FiberType.NOT_CONIC
    if all(v[k] == 0 for k in OFF_DIAGONAL):
        return FiberType.DOUBLE_LINE
    if _delta_value(v, p.ctx) == 0:
        return FiberType.CROSS
    return FiberType.SMOOTH


def cross_singular_point(spec: ConicBundleSpec, p: ProjPoint) -> ProjPoint:
    """The unique singular point of a cross fiber, in fiber coordinates.

    The radical of the fiber's bilinear form is spanned by
    (s_bc, s_ac, s_ab)(p), which lies on the conic exactly when Delta(p) = 0.
    """
    v = section_values(spec, p)
    coords = (v["bc"], v["ac"], v["ab"])
    if all(c == 0 for c in coords):
        raise ValueError("fiber is a double line; the singular locus is a whole line")
    return ProjPoint(p.ctx, coords)


_FIBER_MONO = {
    "aa": (2, 0, 0),
    "ab": (1, 1, 0),
    "ac": (1, 0, 1),
    "bb": (0, 2, 0),
    "bc": (0, 1, 1),
    "cc": (0, 0, 2),
}


def fiber_form_on_chart(spec: ConicBundleSpec, base_var: str) -> Poly:
    """The conic form over the base chart base_var = 1.

    The result lives in the two remaining base variables plus all three fiber
    variables, and is homogeneous of degree 2 in the fiber variables.
    """
    rest = tuple(v for v in BASE_VARS if v != base_var)
    vars_out = rest + FIBER_VARS
    ctx = spec.ctx
    acc = Poly.zero(ctx, vars_out)
    for key in SECTION_KEYS:
        s = dehomogenize(spec.sections[key], base_var).with_vars(vars_out)
        mono = Poly.from_terms(ctx, vars_out, [((0, 0) + _FIBER_MONO[key], 1)])
        acc = acc + s * mono
    return acc


@dataclass(frozen=True)
class ChartEquation:
    """Affine equation of the total space on one of the 9 charts."""

    base_var: str
    fiber_var: str
    equation: Poly  # in the 2 remaining base and 2 remaining fiber variables


def chart_equation(spec: ConicBundleSpec, base_var: str, fiber_var: str) -> ChartEquation:
    if base_var not in BASE_VARS or fiber_var not in FIBER_VARS:
        raise ValueError(f"no chart ({base_var}, {fiber_var})")
    form = fiber_form_on_chart(spec, base_var)
    rest_base = tuple(v for v in BASE_VARS if v != base_var)
    rest_fiber = tuple(v for v in FIBER_VARS if v != fiber_var)
    eq = dehomogenize(form.with_vars(rest_base + FIBER_VARS), fiber_var)
    return ChartEquation(base_var, fiber_var, eq.with_vars(rest_base + rest_fiber))


def total_space_charts(spec: ConicBundleSpec) -> list[ChartEquation]:
    """The 9 affine chart equations covering the total space."""
    return [chart_equation(spec, w, v) for w in BASE_VARS for v in FIBER_VARS]


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    witness: ProjPoint | None
    generically_smooth: bool


def flatness_check(spec: ConicBundleSpec, k_max: int = 24) -> FlatnessReport:
    """Flat iff the six sections share no projective zero; smooth iff Delta != 0.

    Flatness failures surface as data (a witness point with NotConic fiber),
    not as exceptions, so search loops can discard candidates cheaply.
    """
    from . import geom  # deferred: geom depends on this module

    spec_validate(spec)
    nonzero = [spec.sections[k] for k in SECTION_KEYS if not spec.sections[k].is_zero()]
    gen_smooth = not discriminant(spec).is_zero()
    if any(s.is_constant() for s in nonzero):
        return FlatnessReport(True, None, gen_smooth)
    try:
        common = geom.solve_system(nonzero, k_max)
        witness = common.points[0] if common.points else None
    except geom.PositiveDimensional as exc:
        witness = geom.point_on_curve(exc.common_factor, k_max)
    return FlatnessReport(witness is None, witness, gen_smooth)


# -- spec files -------------------------------------------------------------


def spec_to_dict(spec: ConicBundleSpec) -> dict:
    return {
        "field_degree": spec.ctx.k,
        "degree_vector": list(spec.degree_vector),
        "value_degree": spec.value_degree,
        "sections": {k: poly_print(spec.sections[k]) for k in SECTION_KEYS},
    }


def spec_from_dict(data: dict) -> ConicBundleSpec:
    ctx = field_new(int(data["field_degree"]))
    dv = tuple(int(e) for e in data["degree_vector"])
    if len(dv) != 3:
        raise DegreeMismatch("degree_vector needs exactly three entries")
    m = int(data["value_degree"])
    sections = {}
    for key in SECTION_KEYS:
        text = data["sections"].get(key, "0")
        sections[key] = poly_parse(text, ctx, BASE_VARS)
    spec = ConicBundleSpec(ctx, dv, m, sections)
    spec_validate(spec)
    return spec


def load_spec(path: str) -> ConicBundleSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def save_spec(spec: ConicBundleSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
