"""
Gap certificates, tail bounds and the nonconvexity diagnostic
=============================================================

Everything the solvers promise is quantified by closed-form constants:
C0 (bounded differences), C1 (curvature of the relaxation), the
per-agent weights D_i behind the dimension-aware refined gap, and the
concentration constants v_K, m_K of the stochastic solver.
"""

import numpy as np

import aggfw
from aggfw.bounds import nonconvexity_measure, sfw_tail, sfw_tail_constants
from aggfw.stochastic_fw import ConstantSchedule, QuadraticSchedule

# %% Constants of a benchmark instance.  The refined gap bound improves on
# the basic one exactly when the aggregate dimension q is below N.
problem = aggfw.generate(3, 40, seed=8)  # q = 3 blocks, N = 40 agents
constants = aggfw.compute_constants(problem)
print(f"N = 40, q = {constants.total_dim}")
print(f"C0 = {constants.c0:.3f}, C1 = {constants.c1:.3f}")
print(f"basic gap bound   C1/(2N)        = {aggfw.gap_bound_basic(constants):.5f}")
print(f"refined gap bound D[q^N]/(2N^2)  = {aggfw.gap_bound_refined(constants):.5f}")
print(f"top per-agent weights D_i: {np.sort(constants.d_i)[::-1][:4].round(3)}")

# %% Selection-method certificates: how many draws to be (3 C1/k)-optimal
# with confidence 1 - zeta after k iterations, and the one-draw tail.
for zeta in (0.5, 0.1, 0.01):
    n = aggfw.sample_size_for_confidence(40, 40, zeta, constants.c0, constants.c1)
    print(f"draws for confidence {1 - zeta:.2f} at k = N: {n}")
for eps in (0.05, 0.1, 0.2):
    print(f"tail at eps = {eps}: {aggfw.mcdiarmid_tail(40, eps, constants.c0):.4f}")

# %% Stochastic-solver concentration: the constants v_K and m_K depend only
# on the draw schedule, and the quadratic schedule makes the tail decay
# uniformly in K.
for schedule, label in ((ConstantSchedule(10), "n_k = 10"), (QuadraticSchedule(24.0), "quadratic A=24")):
    v_k, m_k = sfw_tail_constants(80, constants.c0, schedule, 40)
    tail = sfw_tail(80, 0.5, 40, constants.c0, schedule)
    print(f"{label:16s}: v_K = {v_k:8.4f}, m_K = {m_k:8.4f}, tail(0.5) = {tail:.4f}")

# %% The nonconvexity measure of a finite set: the worst-case minimal
# variance of a distribution pinned to a hull point.  It vanishes iff the
# set is (densely) convex and never exceeds the diameter.
two_points = nonconvexity_measure([[0.0], [1.0]])
chain = nonconvexity_measure([[0.0], [0.5], [1.0]])
print(f"\nrho({{0, 1}}) = {two_points}")
print(f"rho({{0, 1/2, 1}}) = {chain}")

square = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
print(f"rho(unit-square corners) = {nonconvexity_measure(square, resolution=0.02):.4f}")
print(f"diameter of that set     = {np.sqrt(2):.4f}")

# %% Homogeneity and subadditivity of the squared measure make it behave
# well under the averaging that defines aggregative problems.
scaled = nonconvexity_measure([[0.0], [3.0]])
print(f"rho(3 * {{0,1}}) = {scaled}  (three times rho({{0,1}}))")
