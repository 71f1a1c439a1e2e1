"""
Dependency by chance
====================

A random column with many distinct values looks like it explains the target
almost perfectly, even though it is independent of it. The corrected score
stays near zero.
"""

import numpy as np

from reliable_fd import Labeling, contingency, score_bundle
from reliable_fd.experiments import figure1

rng = np.random.default_rng(0)
n = 1000
y = Labeling.from_codes(rng.integers(0, 4, n))

# a noise column with 512 values, drawn independently of y
x = Labeling.from_codes(rng.integers(0, 512, n))
s = score_bundle(contingency(x, y))
print(f"naive fraction F  = {s.fraction:.3f}")
print(f"expected by chance = {s.b0:.3f}")
print(f"reliable F0       = {s.f0:.3f}")

# the same effect across domain sizes, averaged over 20 draws each
print("\ndomain  mean F  mean F0")
for k, f, f0 in figure1(n=n, y_domain=4, trials=20, seed=1):
    print(f"{k:>6}  {f:6.3f}  {f0:+7.3f}")
