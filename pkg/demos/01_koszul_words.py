"""Polynomials, Koszul factorisation words, and their consistency checks.

Run:  python demos/01_koszul_words.py
"""

from rwcalc.poly import Variable, parse_poly, vdiff, poly, DEG_X, DEG_A
from rwcalc.matfac import koszul, koszul_multi, unit_mf

# Exact polynomial arithmetic over named variables; primes mark fresh copies.
w = parse_poly("a1*(x1' - x1) + 2*y2^3")
print("parsed:", w)

x, xp = Variable("x1"), Variable("x1", 1)
print("divided difference of x^2:", end=" ")
from rwcalc.poly import divided_difference
print(divided_difference(poly(x) ** 2, 0, [x], [xp]))

# A Koszul word [p, q] factorises p*q: its expansion is checked exactly.
word = koszul(poly(x), poly(Variable("y1")))
mf = word.expand()
print("\nsingle factor [x, y]: d0 =", mf.d0, " d1 =", mf.d1)
print("d^2 = potential * id:", mf.check().ok)

# Two factors expand to the familiar 4x4 differential.
p1, q1, p2, q2 = (poly(Variable(n)) for n in ("p1", "q1", "p2", "q2"))
two = koszul(p1, q1).tensor(koszul(p2, q2))
print("\ntwo-factor d0 =", two.expand().d0)

# The unit word of a potential W has q_i = x_i' - x_i and difference
# quotients in the p slots; its potential telescopes to W(x') - W(x).
unit = unit_mf(poly(x) ** 3, [x], [xp])
print("\nunit word of x^3:", unit)
print("potential:", unit.potential())

# In graded mode every entry must be homogeneous and the differential has
# bidegree (1,0); twists shift the whole module.
gx = Variable("x1", grade=DEG_X)
ga, gap = Variable("a1", grade=DEG_A), Variable("a1", 1, DEG_A)
graded = koszul(vdiff(gap, ga), poly(gx), graded=True).twisted(1, 0)
print("\ngraded word:", graded, "| check:", graded.check().ok)
