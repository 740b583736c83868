"""
Frank-Wolfe on the relaxed problem
==================================

Each iteration linearizes the relaxed objective at the current mean
aggregate and lets every agent best-respond independently; the measure
iterate then mixes toward the resulting Dirac profile.  The primal gap
decays like 2 C1 / k under the canonical step, and the computable dual
gap certifies progress without knowing the optimum.
"""

import aggfw
from aggfw.frank_wolfe import LineSearchFwStep, fw_run, fw_with_selection

# %% A benchmark instance at a comfortable desk scale.
problem = aggfw.generate(20, 60, seed=3)
constants = aggfw.compute_constants(problem)
reference = problem.relaxed_optimum(tol=1e-9)
print(f"N = {problem.n_agents}, M = {problem.n_blocks}")
print(f"C1 = {constants.c1:.3f}, relaxed optimum = {reference.value:.6f}")

# %% Canonical steps: omega_k = 2/(k+2).  The primal gap stays below the
# 2 C1 / k envelope, and the dual gap beta_k upper-bounds it throughout.
profile, records = fw_run(problem, 200)
print("\n   k      gap        2*C1/k     beta_k")
for k in (1, 2, 5, 10, 50, 100, 200):
    rec = records[k]
    gap = rec.objective - reference.value
    print(f"{k:4d}   {gap:9.5f}   {2 * constants.c1 / k:9.5f}  {rec.beta:9.5f}")

# %% Exact line search on the per-iteration quadratic model converges much
# faster on this instance while keeping the same guarantee.
_, ls_records = fw_run(problem, 200, rule=LineSearchFwStep())
gap_canonical = records[-1].objective - reference.value
gap_ls = ls_records[-1].objective - reference.value
print(f"\nfinal relaxed gap, canonical:   {gap_canonical:.2e}")
print(f"final relaxed gap, line search: {gap_ls:.2e}")

# %% The measure support stays tiny here because the agents' decision sets
# are binary: repeated best responses merge into existing atoms.
print(f"support sizes after 200 iterations: {sorted(set(profile.support_sizes))}")

# %% Running the selection method on the final measure profile recovers a
# concrete binary profile; the helper also reports how many draws the
# 1 - zeta guarantee would request at this iteration count.
result = fw_with_selection(problem, 60, n_select=200, seed=11)
print(f"\nselection after 60 iterations: J = {result.value:.6f}")
print(f"gap to relaxed optimum: {result.value - reference.value:.2e}")
print(f"recommended draws at 90% confidence: {result.recommended_draws}")
