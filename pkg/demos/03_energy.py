"""
Representation functions and additive energy
============================================

r(x) counts ordered h-tuples summing to x; the energy is the sum of r(x)^2.
By Cauchy-Schwarz, |hA| * energy >= |A|^(2h), with equality exactly when r is
constant on its support.
"""

from sumprod import FiniteSet, energy, linear_combo, rep_function

A = FiniteSet([1, 2, 3])
r = rep_function(2, A)
print("r_{2A}:", {str(x): c for x, c in r.entries.items()})
print("energy(2, A) =", energy(2, A))

for name, S in [("interval", FiniteSet(range(1, 13))),
                ("powers of 2", FiniteSet(2**i for i in range(12))),
                ("squares", FiniteSet(i * i for i in range(1, 13)))]:
    for h in (2, 3):
        E = energy(h, S)
        size = len(linear_combo(h, S))
        print(f"{name:12} h={h}  |hA|={size:5d}  energy={E:8d}  |A|^2h/energy={len(S) ** (2 * h) / E:9.2f}")
