"""Two-qubit concurrence three ways.

For a pure state the concurrence is twice the product of the Schmidt
coefficients.  For a mixed state it comes from the spectrum of rho times its
spin-flipped partner.  This script checks that the two agree, then shows the
entanglement of formation curve.

    python notebooks/01_two_qubit_measures.py
"""
import numpy as np

from entgraph import DensityMatrix, eof, normalize, schmidt2, wootters_concurrence
from entgraph.concurrence import rho_tilde_spectrum

rng = np.random.default_rng(1)
psi = normalize(rng.standard_normal(4) + 1j * rng.standard_normal(4))
sp = schmidt2(psi)
print(f"Schmidt coefficients   {sp.alpha:.6f} {sp.beta:.6f}")
print(f"2 * alpha * beta       {2 * sp.alpha * sp.beta:.12f}")
print(f"Wootters (pure input)  {wootters_concurrence(psi):.12f}")

rho = DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))
print(f"Wootters (projector)   {wootters_concurrence(rho):.12f}")
print("spectrum of rho rho~   ", np.array2string(rho_tilde_spectrum(rho), precision=3))

# a Werner state stops being entangled at p = 1/3
bell = np.zeros((4, 4))
bell[np.ix_([0, 3], [0, 3])] = 0.5
print("\n  p     C(werner)   E_F")
for p in (0.2, 1 / 3, 0.5, 0.75, 1.0):
    c = wootters_concurrence(DensityMatrix(p * bell + (1 - p) * np.eye(4) / 4))
    print(f"{p:5.3f}   {c:.6f}   {eof(c):.6f}")
