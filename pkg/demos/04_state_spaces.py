"""Evaluating closed surfaces: state spaces and generating functions.

Run:  python demos/04_state_spaces.py
"""

from rwcalc.duality import TwistParams
from rwcalc.tqft import (
    state_space, generating_function, specialize_s_to_minus_t,
    index_closed_form,
)
from rwcalc.bordism import parse_bordism, evaluate

# The sphere reduces to a one-factor word and an even free block.
ss = state_space(0, 1, graded=True)
print("sphere residual:", ss.word)
print("sphere series:  ", ss.series())

# Genus-g surfaces: the reduction pipeline agrees with the closed form
# exactly, for any twist parameters.
params = TwistParams.make(r_s="1/2", q_s=3, r_sh=1, q_sh=-2, r_nh=0, q_nh=2)
for g in range(4):
    pipeline = state_space(g, 1, graded=True, params=params)
    closed = generating_function(g, 1, params)
    print(f"genus {g}: pipeline == closed form:",
          pipeline.series().equals(closed),
          "| parity:", pipeline.parity)

# Counting with s = -t collapses the series to a finite closed form.
gf = generating_function(2, 1)
print("\ngenus-2 series:", gf)
print("s = -t:", index_closed_form(2, 1))
assert specialize_s_to_minus_t(gf).equals(index_closed_form(2, 1).as_series())

# The same surfaces through the bordism words.
torus = parse_bordism("cap . (1[ev~] o (saddle+ . saddle-) o 1[coev]) . cup")
print("\ntorus via the word language:", evaluate(torus, 1, graded=True).series())
