"""The circle's Frobenius data and the fusion product on classes.

Run:  python demos/05_fusion.py   (the axiom suite takes a few minutes)
"""

import sys

from rwcalc.tqft import (
    frobenius, circle_class_word, grothendieck_product, verify_frobenius,
)

fd = frobenius(1)
print("A   :", fd.A)
print("eta :", fd.eta.word)
print("mu  :", fd.mu.word)
print("beta:", fd.beta.word)

# The pair-of-pants product on class representatives: unital, and a double
# shift is trivial.
u = circle_class_word(1)
print("\nunit * unit:        ", grothendieck_product(u, u, 1).word)
print("unit[1] * unit[1]:  ", grothendieck_product(u.shifted(1), u.shifted(1), 1).word)
print("unit[1] * unit:     ", grothendieck_product(u.shifted(1), u, 1).word)

if "--full" in sys.argv:
    print("\nverifying the Frobenius axioms (takes a few minutes)...")
    print(verify_frobenius(1))
else:
    print("\n(pass --full to run the complete axiom verification)")
