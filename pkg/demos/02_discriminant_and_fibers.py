"""The conic-bundle model: half matrix, discriminant, fiber types.

Run with:  python demos/02_discriminant_and_fibers.py
"""

from conic2 import (
    ProjPoint,
    classify_fiber,
    discriminant,
    field_new,
    poly_print,
    sigma_generators,
    solve_system,
    total_space_charts,
)
from conic2.cli import load_corpus_spec
from conic2.geom import singular_points, intersection_points

# The bundled corpus carries the explicit examples; ex1 is the conic bundle
#   a^2 + x ab + zy b^2 + (x(y^3+z^3)+y^2z^2) bc + (y^6+z^6+x^4yz+xz^5+xy^5) c^2
# over P^2 in O + O(1) + O(3).
spec = load_corpus_spec("ex1")
print("degree vector:", spec.degree_vector, " value degree:", spec.value_degree)
for key in ("aa", "ab", "ac", "bb", "bc", "cc"):
    print(f"  s_{key} =", poly_print(spec.sections[key]))

# In characteristic 2 the discriminant collapses to four terms.
delta = discriminant(spec)
print("\nDelta =", poly_print(delta))

# The double-line locus is cut by the three off-diagonal sections.
F2 = field_new(1)
sigma = solve_system([s for s in sigma_generators(spec) if not s.is_zero()])
print("Sigma =", list(sigma.points), "with certificate", sigma.certificate)

# Fibers classify exactly from the section values at a point.
for text in ("0:1:0", "0:0:1", "1:0:0", "0:1:1"):
    p = ProjPoint.parse(text, F2)
    print(f"  fiber over [{text}] is {classify_fiber(spec, p)}")

# The two discriminant components meet in 16 transversal points over F_16,
# matching Bezout's 4 * 4.
from conic2.poly import plane_poly

inter = intersection_points(plane_poly("x^3*z + y^4"), plane_poly("x^3*y + z^4"))
print("\ncomponent intersection:", inter.certificate)
print("singular loci:",
      list(singular_points(plane_poly("x^3*z + y^4")).points),
      list(singular_points(plane_poly("x^3*y + z^4")).points))

# Nine affine charts cover the total space.
charts = total_space_charts(spec)
print(f"\n{len(charts)} charts; chart (z, a) equation:")
print("  ", poly_print(charts[[(c.base_var, c.fiber_var) for c in charts].index(('z', 'a'))].equation))
