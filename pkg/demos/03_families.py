"""
Infinite families with two extra n
==================================

If {2, a, b, c} is a regular Diophantine quadruple, then {a, b, c} is a
D(n)-set for n = 1, a+b+c and x(2P).
"""
from diophlab import family_k, inf1, inf2, inf3, rec_sequence, regc_extension, spectrum

for i in range(1, 5):
    out = inf1(i)
    print(out.provenance, out.triple, out.n_list)

print(inf2(1))

# The recurrence for a = 4: {2, 4, b_i, b_{i+1}} are regular quadruples
seq = rec_sequence(4, 6)
print(seq)
print(regc_extension(4, seq[2], 1) == seq[3])
print(inf3(4, 3))

# Non-regular family {k-1, 4k, 16k^3-4k} and {k+1, 4k, 16k^3-4k}
for t in family_k(11):
    print(t, [e.n for e in spectrum(t)])
