"""Complex potentials with real spectra, and one whose quoted spectrum fails."""
import numpy as np

from pctpdm.eigensolver import solve_complex
from pctpdm.numerics import Grid
from pctpdm.potentials import ReferenceProblem

# (A+iB)^2 e^{-2y} - (2C+1)(A+iB) e^{-y}: complex, not PT symmetric, yet the
# complex shift y -> y + log(A+iB) maps it onto a real Morse well.
ref = ReferenceProblem.morse_non_pt(A=1, B=1, C=2)
rep = solve_complex(None, ref.potential, Grid(-3, 14, 800), 2, kinetic=1.0, tol=1e-3)
print("non-PT Morse:", np.round(rep.eigenvalues, 4), rep.classification.value)
print("quoted      :", [ref.energy(n) for n in range(2)])

# The PT Poschl-Teller potential is periodic in y and only carries
# e^{-2iky} Fourier modes. The solver finds real levels, but they are box
# states that slide towards zero like (pi/2L)^2 as the box grows, i.e. the
# bottom of a continuum, nowhere near the quoted value.
pt = ReferenceProblem.poschl_teller_pt(alpha=1, V0=1, q=0.1)
for L in (8, 12):
    rep = solve_complex(None, pt.potential, Grid(-L, L, 100 * L), 3, tol=1e-6)
    print(f"PT Poschl-Teller on [-{L},{L}]:", np.round(rep.eigenvalues.real, 5),
          " free box:", np.round(0.5 * (np.pi * np.arange(1, 4) / (2 * L)) ** 2, 5))
print("quoted ground level:", round(pt.energy(0).real, 4))
