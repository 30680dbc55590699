"""Full dualisability at desk scale: the eight snake moves and the Serre
automorphism with its two trivialisations.

Run:  python demos/03_duality.py   (about half a minute)
"""

from rwcalc.duality import (
    TwistParams, verify_zorro, serre, serre_chain_form, verify_serre_trivial,
)

# All eight snake moves reduce to identity words, ungraded...
for rep in verify_zorro(1):
    print(rep)

# ... and in the graded case all twists cancel to (0,0) for any parameters.
params = TwistParams.make(r_s="1/2", q_s=3, r_sh=1, q_sh=-2, r_nh=0, q_nh=2)
print("\ngraded, generic parameters:")
for rep in verify_zorro(1, graded=True, params=params):
    print(rep)

# The Serre 1-morphism is a chain of seven unit-type pairings; its canonical
# trivialisation is invertible, and there are exactly two of them (the unit
# word and its shift).
s = serre(1)
print("\nserre potential:", s.w)
groups, ok = serre_chain_form(s, 1)
print("chain of", len(groups), "pairings:", ok)
rep = verify_serre_trivial(1)
print(rep)
for t in rep.trivialisations:
    print("  trivialisation:", t)
