"""
All n for which a triple is a D(n)-set
======================================

A triple {a, b, c} is a D(n)-set when ab+n, ac+n and bc+n are all perfect
squares. For a fixed triple only finitely many n qualify, and the divisor
method finds every one of them.
"""
from diophlab import Triple, is_dn_set, spectrum, spectrum_bruteforce

# {8, 21, 55} is a Diophantine triple (n = 1) that also works for n = 4321
t = Triple(8, 21, 55)
print(is_dn_set(t, 4321))

# The full spectrum. With products p1 < p2 < p3, any valid n has
# r^2 - t^2 = p3 - p1, so r - t runs over divisors of p3 - p1.
for entry in spectrum(t):
    print(entry.n, entry.witness)

# Cross-check on a window with a direct scan
print([e.n for e in spectrum_bruteforce(t, 5000)])

# {4, 12, 420} has four n values
print([e.n for e in spectrum(Triple(4, 12, 420))])

# Negative entries are fine too; degenerate witnesses (a zero square) are flagged
for entry in spectrum(Triple(-3, 1, 5)):
    print(entry.n, entry.degenerate)
