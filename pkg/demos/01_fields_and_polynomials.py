"""Tour of the exact arithmetic layers: binary fields and sparse polynomials.

Run with:  python demos/01_fields_and_polynomials.py
"""

from conic2 import (
    field_new,
    frobenius_sqrt,
    embed,
    poly_parse,
    poly_print,
    poly_square,
    partial_derivative,
    resultant,
    univariate_factor,
    bivariate_factor,
    is_absolutely_irreducible,
)

# ----------------------------------------------------------------------------
# Binary fields.  Every degree 1..64 has one fixed defining modulus, so
# serialized elements mean the same thing on every machine.
# ----------------------------------------------------------------------------
F4 = field_new(2)
j = F4.gen()
print("In F_4 the generator j satisfies j^2 + j + 1 = 0:")
print("  j * j      =", j * j)            # F4:3, i.e. j + 1
print("  inv(j)     =", j.inv())
print("  sqrt(j)    =", frobenius_sqrt(j), " (squaring is a bijection in char 2)")

F16 = field_new(4)
print("  j embeds into F_16 as", embed(j, F16), "which still has order 3")
print()

# ----------------------------------------------------------------------------
# Sparse polynomials over those fields.  The parser takes '+'-joined terms;
# there is no '-' in characteristic two.
# ----------------------------------------------------------------------------
F2 = field_new(1)
V = ("x", "y", "z")
d1 = poly_parse("x^3*z + y^4", F2, V)
d2 = poly_parse("x^3*y + z^4", F2, V)
print("Two plane quartics:", poly_print(d1), "and", poly_print(d2))
print("  their product:   ", poly_print(d1 * d2))
print("  d/dx of the first:", poly_print(partial_derivative(d1, "x")),
      "(3 = 1 and 4 = 0 modulo 2)")
print("  squaring doubles exponents:", poly_print(poly_square(d1)))
print("  resultant eliminating z:   ", poly_print(resultant(d1, d2, "z")))
print()

# ----------------------------------------------------------------------------
# Factorization: univariate, bivariate, and absolute irreducibility.
# ----------------------------------------------------------------------------
t15 = poly_parse("t^15 + 1", F2, ("t",))
print("t^15 + 1 factors over F_2 into", len(univariate_factor(t15)),
      "irreducibles of degrees",
      sorted(g.total_degree() for g, _ in univariate_factor(t15)))

from conic2.poly import dehomogenize

chart = dehomogenize(d1 * d2, "z")
print("the product, dehomogenized at z = 1, refactors as",
      " * ".join(f"({poly_print(g)})" for g, _ in bivariate_factor(chart)))
print("x^3*z + y^4 is absolutely irreducible:", is_absolutely_irreducible(d1))
print("x^2 + y^2 is not (it is (x+y)^2):     ",
      is_absolutely_irreducible(poly_parse("x^2 + y^2", F2, V)))
