# # Negativity and realignment along the first Horodecki family
#
# At Dt = 0 the auxiliary qubit plays no role, so this is just the
# bipartite state. Realignment turns positive at alpha = 3 and the
# negativity at alpha = 4, which leaves a PPT entangled window in between.

import numpy as np

from entlab.criteria import classify, negativity_array, realignment_array
from entlab.states import horodecki_state1_matrix

alphas = np.round(np.arange(2.0, 5.0001, 0.01), 10)
mats = np.stack([horodecki_state1_matrix(a) for a in alphas])

n = negativity_array(mats)
r = realignment_array(mats)

# a coarse table
for a, nn, rr in list(zip(alphas, n, r))[::25]:
    print(f"alpha={a:4.2f}  N={nn:+.5f}  R={rr:+.5f}  {classify(nn, rr)}")

# where the signs flip
print("R > 0 from alpha =", alphas[np.argmax(r > 1e-9)])
print("N > 0 from alpha =", alphas[np.argmax(n > 1e-9)])
