"""Walk through the first- and second-type counts.

    python demos/counting_differentials.py
"""

from merodiff.dkp import RTable
from merodiff.firstcount import FirstProfile, cross_check_first, first_profiles
from merodiff.secondcount import SecondProfile, count_second_closed, theta_closed

table = RTable().fill(10)

print("first type, every method on the worked examples")
for a, b, poles in [(1, 1, (2, 2)), (2, 2, (3, 3)), (2, 2, (2, 2, 2))]:
    rep = cross_check_first(FirstProfile(a, b, poles),
                            ["coeff", "sl2", "dkp", "hurwitz"] + (["oracle"] if len(poles) <= 2 else []),
                            table)
    per = ", ".join(f"{k}={v}" for k, v in rep.per_method.items())
    print(f"  {FirstProfile(a, b, poles)}: {per}")

# the largest count per pole weight grows quickly
print("\nlargest first-type count by pole weight")
best = {}
for prof in first_profiles(10):
    n = cross_check_first(prof, ["coeff"]).value
    s = sum(prof.poles)
    if n > best.get(s, (0, None))[0]:
        best[s] = (n, prof)
for s, (n, prof) in sorted(best.items()):
    print(f"  {s:2d}  {n:4d}  {prof}")

print("\nsecond type: theta^a_{1,1} and the counts it stores")
for a in range(2, 7):
    print(f"  theta^{a}_1,1 = {theta_closed(a, 1, 1)}")
print("  (5,-1,-2;-2,-2) ->", count_second_closed(SecondProfile(5, 1, 2, (2, 2))))
