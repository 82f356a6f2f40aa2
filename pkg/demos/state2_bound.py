# # The second family is PPT everywhere but realignment still sees it

import numpy as np

from entlab.evolution import evolve_reduce_array
from entlab.states import aux_qubit, horodecki_state2_matrix
from entlab.criteria import negativity_array, realignment_array, reduction_array

alphas = np.arange(1, 100) / 100
qubit, _ = aux_qubit(0.0)

mats = np.concatenate([evolve_reduce_array(horodecki_state2_matrix(a), qubit, [0.0]) for a in alphas])
n = negativity_array(mats)
r = realignment_array(mats)
red_a, red_b = reduction_array(mats)

print("largest |N|:", np.abs(n).max())
print("smallest R:", r.min(), "at alpha =", alphas[r.argmin()])
print("largest R:", r.max(), "at alpha =", alphas[r.argmax()])

# PPT states never violate the reduction criterion
print("smallest reduction eigenvalue:", min(red_a.min(), red_b.min()))
