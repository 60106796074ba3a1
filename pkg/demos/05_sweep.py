"""
A reproducible sweep
====================

Families generate structured sets; sweep() runs every claim on every set and
returns verdicts in input order regardless of thread count.  The same run is
available as ``sumprod sweep manifest.json``.
"""

from sumprod.families import ClaimSpec, expand_families, report_csv, summarize, sweep

specs = expand_families([
    {"kind": "range", "N": [6, 10, 14]},
    {"kind": "gp", "a": 1, "r": 3, "N": 10},
    {"kind": "smooth", "y": 5, "N": 12},
    {"kind": "random_subset", "seed": 2024, "pool": 300, "N": 12},
])
claims = [
    ClaimSpec("identity_15"),
    ClaimSpec("cs_iterated", {"h": 3}),
    ClaimSpec("dilated_simple_sum", {"h": 4}),
    ClaimSpec("addtuples_bound", {"k": 2, "l": 1}),
]

verdicts = sweep(specs, claims, threads=4)
print(report_csv(verdicts))
print(summarize(verdicts))
