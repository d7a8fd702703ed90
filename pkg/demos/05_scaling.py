"""
Many n at once by clearing denominators
=======================================

Rational points in 2E(Q) give rational x with x+ab, x+ac, x+bc all rational
squares. Scaling the triple by z with z^2 x integral turns them into integer
D(n) memberships.
"""
from diophlab import Triple, is_rational_solution, scale_solutions, spectrum

t = Triple(1, 8, 120)
xs = ["1", "721", "12289/4", "769/9", "1921/36"]
for x in xs:
    print(x, is_rational_solution(t, x))

sol = scale_solutions(t, xs)
print(sol.z, sol.scaled_triple, sol.n_values)

# The scaled triple's full spectrum
print([e.n for e in spectrum(sol.scaled_triple)])

# Triples whose spectra realise small |n_1(k)|
for k, abc in [(6, (28, 168, 1848)), (7, (380, 1400, 3240)), (11, (9120, 22770, 30960))]:
    got = [e.n for e in spectrum(Triple(*abc))]
    print(k, len(got), min(got, key=abs))
