"""
Points on the induced elliptic curve
====================================

The triple {a, b, c} induces y^2 = (x+ab)(x+ac)(x+bc). Integral
x-coordinates of points in 2E(Q) are values of n for which the triple is a
D(n)-set.
"""
from diophlab import (
    Triple, add, double, induced_curve, n_from_double, named_points, q_point, x2p_formula,
    x2q_formula, xs2p_formula,
)

t = Triple(4, 12, 420)
E = induced_curve(t)
pts = named_points(t)
print(pts)

# 2P has x = (a+b+c)^2/4 - ab - ac - bc
twoP = double(E, pts.P)
print(twoP.x, x2p_formula(t))

# R halves S
print(double(E, pts.R) == pts.S)

# S + 2P = 2(R + P) is integral here, with x = a + b + c
print(add(E, pts.S, twoP), xs2p_formula(t), sum(t))
print(n_from_double(t, add(E, pts.R, pts.P)))

# The extra point Q for i = 1 doubles to the fourth value n = 3796
Q = q_point(1)
print(Q, double(E, Q).x, x2q_formula(1))
