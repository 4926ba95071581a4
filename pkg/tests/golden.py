"""Frozen reference polynomials used across the test suite."""

from strandpoly.poly import parse

# multivariate form of the melon (two vertices, one edge of each color)
MELON_MULTI = parse(
    "beta0 beta1 beta2 beta3 x z1^6 z2^4"
    " + beta0 beta1 beta2 x z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta0 beta2 beta3 x z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta1 beta2 beta3 x z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta0 beta1 beta3 x z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta0 beta1 x z1 z3^4 s w^4 q^6 t^4 + beta0 beta2 x z1 z3^4 s w^4 q^6 t^4"
    " + beta0 beta3 x z1 z3^4 s w^4 q^6 t^4 + beta1 beta2 x z1 z3^4 s w^4 q^6 t^4"
    " + beta1 beta3 x z1 z3^4 s w^4 q^6 t^4 + beta2 beta3 x z1 z3^4 s w^4 q^6 t^4"
    " + beta0 x z3^5 s w^5 q^9 t^6 + beta1 x z3^5 s w^5 q^9 t^6"
    " + beta2 x z3^5 s w^5 q^9 t^6 + beta3 x z3^5 s w^5 q^9 t^6"
    " + z3^8 s^2 w^8 q^12 t^8"
)

# melon with its color-0 edge cut
MELON_CUT_MULTI = parse(
    "beta1 beta2 beta3 x z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta1 beta2 x z1 z3^4 s w^4 q^6 t^4 + beta1 beta3 x z1 z3^4 s w^4 q^6 t^4"
    " + beta2 beta3 x z1 z3^4 s w^4 q^6 t^4"
    " + beta1 x z3^5 s w^5 q^9 t^6 + beta2 x z3^5 s w^5 q^9 t^6 + beta3 x z3^5 s w^5 q^9 t^6"
    " + z3^8 s^2 w^8 q^12 t^8"
)

# melon with its color-0 edge contracted
MELON_CONTRACT_MULTI = parse(
    "beta1 beta2 beta3 z1^6 z2^4"
    " + beta1 beta2 z1^3 z2 z3^3 s w^3 q^3 t^2 + beta2 beta3 z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta1 beta3 z1^3 z2 z3^3 s w^3 q^3 t^2"
    " + beta1 z1 z3^4 s w^4 q^6 t^4 + beta2 z1 z3^4 s w^4 q^6 t^4 + beta3 z1 z3^4 s w^4 q^6 t^4"
    " + z3^5 s w^5 q^9 t^6"
)

# seven-variable invariant of the melon; computed by state sum, cross-checked
# against the multivariate form in test_invariant, then frozen
MELON_T = parse(
    "X z^20 s^2 w^8 q^12 t^8 + 4 z^12 s w^5 q^9 t^6 + 6 Y z^11 s w^4 q^6 t^4"
    " + 4 Y^2 z^10 s w^3 q^3 t^2 + Y^3 z^7"
)

# planar w-colored graph with edges e0, e1, e2 (shifted basis)
_PLANAR_FACTOR = parse("z^14 s w^5 q^9 t^6")
PLANAR_T = (
    parse("X z^10 s w^5 q^9 t^6 + X Y z^9 s w^4 q^6 t^4 + 2 z^2 w^2 q^6 t^4 + 3 Y z w q^3 t^2 + Y^2")
    * _PLANAR_FACTOR
)

# ((G cut e2) / e0) cut e1 and friends
PLANAR_CUT2_CON0_CUT1 = parse("z^16 s w^7 q^15 t^10")
PLANAR_CUT2_CON0_CON1 = parse("z^14 s w^6 q^12 t^8")
PLANAR_CON2_CUT1 = parse("z^16 s w^7 q^15 t^10 + Y z^15 s w^6 q^12 t^8")
PLANAR_CON2_CON1 = parse("z^14 s w^6 q^12 t^8 + Y z^13 s w^5 q^9 t^6")
