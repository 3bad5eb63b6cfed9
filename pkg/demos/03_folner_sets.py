"""Approximately invariant finite sets in amenable groups.

A Folner set F nearly absorbs translation: |sF symmetric-difference F| is a
small fraction of |F|.  On the integers, intervals work and the search
returns the shortest interval meeting the requested ratio; on a finite
group the whole group is exactly invariant.
"""

from lpalg import ZWindow, cyclic_group, folner_ratio, folner_search

shifts = [1, -1, 2, -3]
print("integers, shifts", shifts)
for delta in (0.5, 0.2, 0.1, 0.05):
    f = folner_search(ZWindow(300), shifts, delta)
    worst = max(folner_ratio(f, s) for s in shifts)
    lo, hi = min(f.members), max(f.members)
    print(f"  delta={delta:<5} -> interval [{lo}, {hi}]  size {len(f.members):3d}"
          f"  worst ratio {worst:.6f}")
print()

g = cyclic_group(12)
f = folner_search(g, [1, 5], 0.01)
print(f"cyclic group of order 12: search returns all {len(f.members)} elements,"
      f" ratios are exactly 0")
for s in (1, 5):
    print(f"  shift {s}: ratio {folner_ratio(f, s)}")
