"""Finitely supported measure profiles and the selection method.

The relaxed problem replaces each agent's decision by a finitely
supported probability distribution over its decision set; the
contribution maps enter only through their means, which makes the
relaxed objective convex whenever the outer function is.  This module
holds the measure containers, mixing (the Frank-Wolfe update), the
per-block variances, and sampling.
"""
from __future__ import annotations

import numpy as np

from .problems import Aggregate, Decision, DecisionProfile, ProblemInstance, objective

# Atoms below this weight are dropped and the rest renormalized.  With
# the canonical step sizes an atom added at iteration s still has weight
# about 2(s+1)/(k(k+1)) at iteration k, so the threshold only fires for
# runs far longer than the support can usefully grow.
PRUNE_WEIGHT = 1e-12

_WEIGHT_SUM_TOL = 1e-12


class DiscreteMeasure:
    """Finitely supported probability distribution for one agent.

    Atoms are (weight, decision) pairs in a stable order: duplicates are
    merged by weight addition, weights below ``prune`` are dropped and
    the remainder renormalized.  Instances are immutable.
    """

    __slots__ = ("agent", "atoms", "_mean", "_cdf")

    def __init__(self, agent: int, atoms, prune: float = PRUNE_WEIGHT):
        merged: dict = {}
        for weight, decision in atoms:
            weight = float(weight)
            if weight < 0:
                raise ValueError(f"negative atom weight {weight} for agent {agent}")
            merged[decision] = merged.get(decision, 0.0) + weight
        total = sum(merged.values())
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"atom weights for agent {agent} sum to {total}, expected 1")
        kept = [(w, d) for d, w in merged.items() if w > 0 and w >= prune]
        if not kept:
            raise ValueError(f"all atoms of agent {agent} fell below the prune threshold")
        norm = sum(w for w, _ in kept)
        self.agent = int(agent)
        self.atoms = tuple((w / norm, d) for w, d in kept)
        self._mean = None
        self._cdf = None

    @classmethod
    def dirac(cls, agent: int, decision: Decision) -> "DiscreteMeasure":
        return cls(agent, [(1.0, decision)])

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.atoms])

    @property
    def decisions(self) -> tuple:
        return tuple(d for _, d in self.atoms)

    def mean_contribution(self, problem: ProblemInstance) -> Aggregate:
        """E_mu[g_i], cached after the first evaluation."""
        if self._mean is None:
            total = np.zeros(problem.total_dim)
            for weight, decision in self.atoms:
                total += weight * problem.contribution(self.agent, decision).values
            self._mean = Aggregate(total, problem.block_dims)
        return self._mean

    def pick(self, u: float) -> Decision:
        """Inverse-CDF lookup over the atom list in stored order."""
        if self._cdf is None:
            self._cdf = np.cumsum(self.weights)
        index = int(np.searchsorted(self._cdf, u, side="right"))
        return self.atoms[min(index, len(self.atoms) - 1)][1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.agent == other.agent and self.atoms == other.atoms

    def __repr__(self) -> str:
        return f"DiscreteMeasure(agent={self.agent}, atoms={self.atoms!r})"


class MeasureProfile:
    """One finitely supported distribution per agent."""

    __slots__ = ("measures",)

    def __init__(self, measures):
        measures = tuple(measures)
        for i, measure in enumerate(measures):
            if measure.agent != i:
                raise ValueError(f"measure at position {i} is owned by agent {measure.agent}")
        self.measures = measures

    @classmethod
    def dirac(cls, profile: DecisionProfile) -> "MeasureProfile":
        return cls(DiscreteMeasure.dirac(i, d) for i, d in enumerate(profile.decisions))

    @property
    def n_agents(self) -> int:
        return len(self.measures)

    @property
    def support_sizes(self) -> tuple[int, ...]:
        return tuple(m.support_size for m in self.measures)

    def mean_aggregate(self, problem: ProblemInstance) -> Aggregate:
        """(1/N) sum_i E_mu_i[g_i]."""
        total = np.zeros(problem.total_dim)
        for measure in self.measures:
            total += measure.mean_contribution(problem).values
        return Aggregate(total / self.n_agents, problem.block_dims)

    def __len__(self) -> int:
        return len(self.measures)

    def __getitem__(self, i: int) -> DiscreteMeasure:
        return self.measures[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasureProfile):
            return NotImplemented
        return self.measures == other.measures


def relaxed_objective(problem: ProblemInstance, profile: MeasureProfile) -> float:
    """Relaxed objective: f evaluated at the mean aggregate of the profile."""
    if profile.n_agents != problem.n_agents:
        raise ValueError(
            f"profile has {profile.n_agents} measures, problem has {problem.n_agents} agents"
        )
    values = problem.f_block_values(profile.mean_aggregate(problem))
    if not np.isfinite(values).all():
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise ValueError(f"non-finite relaxed objective value in block {bad}")
    return float(values.sum())


def mix(
    profile_a: MeasureProfile,
    profile_b: MeasureProfile,
    omega: float,
    prune: float = PRUNE_WEIGHT,
) -> MeasureProfile:
    """Convex combination (1 - omega) * a + omega * b, agent by agent.

    Atom lists are merged by token, keeping the order of ``profile_a``
    first; the mean contributions of the result equal the convex
    combination of the inputs' means up to the pruning threshold.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {omega}")
    if profile_a.n_agents != profile_b.n_agents:
        raise ValueError("cannot mix profiles with different agent counts")
    mixed = []
    for ma, mb in zip(profile_a.measures, profile_b.measures):
        atoms = [(w * (1.0 - omega), d) for w, d in ma.atoms]
        atoms += [(w * omega, d) for w, d in mb.atoms]
        mixed.append(DiscreteMeasure(ma.agent, atoms, prune=prune))
    return MeasureProfile(mixed)


def contribution_variance(problem: ProblemInstance, measure: DiscreteMeasure, block: int) -> float:
    """Variance of the block-j contribution under the measure."""
    mean = measure.mean_contribution(problem).block(block)
    total = 0.0
    for weight, decision in measure.atoms:
        diff = problem.contribution(measure.agent, decision).block(block) - mean
        total += weight * float(diff @ diff)
    return total


def total_contribution_variance(problem: ProblemInstance, measure: DiscreteMeasure) -> float:
    """Variance of the full contribution map, summed over blocks."""
    mean = measure.mean_contribution(problem).values
    total = 0.0
    for weight, decision in measure.atoms:
        diff = problem.contribution(measure.agent, decision).values - mean
        total += weight * float(diff @ diff)
    return total


def sample_profile(profile: MeasureProfile, rng: np.random.Generator) -> DecisionProfile:
    """Draw one decision per agent, independently, in agent order."""
    uniforms = rng.random(profile.n_agents)
    return DecisionProfile(tuple(m.pick(u) for m, u in zip(profile.measures, uniforms)))


def select_best(
    problem: ProblemInstance,
    profile: MeasureProfile,
    n_draws: int,
    rng: np.random.Generator,
) -> tuple[DecisionProfile, float]:
    """Selection method: sample ``n_draws`` profiles, keep the lowest objective.

    Ties are broken by first occurrence, so the result is a deterministic
    function of the stream state.
    """
    if n_draws < 1:
        raise ValueError(f"selection needs at least one draw, got {n_draws}")
    best_profile = None
    best_value = np.inf
    for _ in range(n_draws):
        candidate = sample_profile(profile, rng)
        value = objective(problem, candidate)
        if value < best_value:
            best_profile, best_value = candidate, value
    return best_profile, best_value
