"""
Checking inequalities on instances
==================================

verify() evaluates both sides of a registered claim.  Assert-mode claims hold
for every finite instance; report-mode claims are measured only, because
their statements are asymptotic or have unspecified constants.
"""

from sumprod import ClaimInstance, FiniteSet, LatticeSet, verify

cases = [
    ClaimInstance("cs_iterated", A=FiniteSet([1, 2, 3]), h=2),
    ClaimInstance("plunnecke", A=FiniteSet([0, 1]), B=FiniteSet([0, 1]), n=1, m=1),
    ClaimInstance("identity_15", A=FiniteSet([2, 4, 8])),
    ClaimInstance("ruzsa_rn", X=LatticeSet([(0, 0), (1, 0), (0, 1)]), Y=LatticeSet([(0, 0), (1, 0), (0, 1)])),
    ClaimInstance("thm_sumprod", A=FiniteSet(2**i for i in range(8)), h=2),
    # report mode: fails on this small set without anything being wrong
    ClaimInstance("multdim_ratio", A=FiniteSet([2, 3])),
    ClaimInstance("gK_lower", A=FiniteSet(range(1, 21))),
]

for inst in cases:
    v = verify(inst)
    lhs = v.lhs_exact or f"exp({float(v.lhs_log):.4g})"
    rhs = v.rhs_exact or f"exp({float(v.rhs_log):.4g})"
    print(f"{v.claim:14} {v.mode:6}  lhs={lhs:>12}  rhs={rhs:>16}  holds={v.holds}")

# the full record is one JSON object
print(verify(cases[0]).to_json(timing=False))
