"""Same spectrum, different mass: a Morse well carried onto three mass profiles."""
import numpy as np

from pctpdm.engine import SignConvention, build_target, grid_from_reference
from pctpdm.mass import MassDistribution
from pctpdm.eigensolver import solve_constant_mass, solve_pdm
from pctpdm.numerics import Grid
from pctpdm.potentials import ReferenceProblem

# Reference problem: -Phi'' + V Phi = E Phi with V = e^{-2y} - 10 e^{-y}.
# With a unit kinetic prefactor the textbook levels are exact.
ref = ReferenceProblem.morse(alpha=1, V1=1, V2=10)
kinetic = 1.0
print("closed form:", [ref.energy(n).real for n in range(3)])

# A straight finite-difference solve. The left wall has to sit past the
# classical turning point near y = -2, so we start at -4.
rep = solve_constant_mass(lambda y: ref.potential(y).real, Grid(-4, 12, 3000), 3, kinetic)
print("unit mass  :", rep.real.round(4))

# Now give the particle a mass m(x) = 1/(x^2+1). The transformed potential
# picks up a mass-dependent shift; with the right sign the levels are unchanged.
dist = MassDistribution.vanishing(alpha=1, q=1)
grid = grid_from_reference(dist, -3.5, 5.0, 3000)   # x-grid covering the well
for sign in SignConvention:
    ts = build_target(dist, ref, sign, grid, kinetic)
    vals = solve_pdm(dist, ts.potential, grid, 2, kinetic).real
    print(f"{sign.value:9s} shift:", vals.round(4))

# The potential itself no longer looks like a Morse well in x
x = np.linspace(-3, 3, 7)
print(np.c_[x, build_target(dist, ref, grid=grid, kinetic=kinetic).potential(x)].round(3))
