"""The two one-dimensional operators behind the gradient estimates.

The averaging operator (1/s) int_0^s f and the dual operator int_s^L f/r
bound the rearranged gradient; their norm ratios stay bounded exactly when
the balance conditions hold.  The spike family chi_(0,delta)/delta makes the
failure quantitative for the linear pair: the ratio is 1 + log(L/delta).
"""

import math

from orlicz_korn import hardy, young

cat = young.load_catalog()

print("worst trial ratios over the fixed family (64 random steps, 16 power")
print("spikes, 8 log spikes, certificate profiles):")
for a, b in (("L2", "L2"), ("LlogL", "L1"), ("L1", "L1")):
    rep = hardy.verify_hardy(cat[a], cat[b], 1.0, trials=64)
    print(f"  ({a:6s},{b:6s}) avg {rep.worst_avg.ratio_avg:7.3f}  "
          f"dual {rep.worst_dual.ratio_dual:7.3f}  "
          f"balance holds: {rep.balance_holds}  spike sweep growing: {rep.sweep_growing}")

print()
print("spike sharpness sweep for the linear pair (exact value 1 + log(L/delta)):")
rep = hardy.verify_hardy(cat["L1"], cat["L1"], 1.0, trials=4)
for delta, ratio in rep.spike_sweep:
    print(f"  delta {delta:9.2e}: ratio {ratio:7.3f}   exact {1 + math.log(1/delta):7.3f}")
