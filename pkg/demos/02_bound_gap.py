"""
Two bounds on the same candidate
================================

Both bounds cap the score any superset of a candidate can reach. The refined
bound uses the candidate joined with the target and can be far tighter. On
this small family it drops to zero while the simple bound stays large, so a
search using it prunes the whole subtree at once.
"""

from reliable_fd import contingency, delta_gap, f_mon, f_spc
from reliable_fd.synthetic import key_gadget

print("   l   rows   f_mon   f_spc   gap")
for l in (1, 2, 4, 8, 16, 32):
    ds = key_gadget(l)
    t = contingency(ds.columns["X"], ds.target)
    print(f"{l:>4} {ds.n:>6}   {f_mon(t):.3f}   {f_spc(t):.3f}   {delta_gap(t):.3f}")
