"""Stochastic Frank-Wolfe: Bernoulli mixing, candidate selection, speed-ups.

Instead of carrying measures, the stochastic solver keeps one concrete
decision per agent and replaces the measure update by sampling: at
iteration k it draws ``n_k`` candidate profiles whose agents switch to
their best response independently with probability ``omega_k``, and
keeps the candidate with the lowest objective.  All Bernoulli variables
are presampled from a counter-based stream keyed by the iteration, so
the draw at position (k, j, i) is a pure function of the run seed and
the lexicographic simulation order of the analysis is reproduced
exactly, regardless of how the work is scheduled.
"""
from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from .bounds import ProblemConstants, compute_constants
from .frank_wolfe import CanonicalStep, LineSearchSfwStep, StepRule, dual_gap_beta
from .problems import (
    Aggregate,
    DecisionProfile,
    ProblemInstance,
    aggregate_of,
    check_profile,
    linearized_best_response,
    objective,
    zero_gradient_profile,
)


@dataclass(frozen=True)
class ConstantSchedule:
    """Fixed number of candidate draws per iteration."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"draw count must be at least 1, got {self.n}")

    def size(self, k: int, n_agents: int) -> int:
        return self.n


@dataclass(frozen=True)
class QuadraticSchedule:
    """Growing schedule n_k = max(ceil(A k^2 / N), 1).

    With this schedule the tail constants decay like 1/K^2 and the
    success probability of the run is at least 1 - exp(-A / 12).
    """

    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"schedule coefficient must be positive, got {self.a}")

    def size(self, k: int, n_agents: int) -> int:
        return max(math.ceil(self.a * k**2 / n_agents), 1)


@dataclass(frozen=True)
class SfwRecord:
    """State of one stochastic iteration, captured before the update.

    ``beta`` is NaN when the active-set speed-up skipped part of the
    subproblem resolution (the dual gap needs every agent's best
    response).  ``accepted`` tells whether the iterate actually moved.
    """

    k: int
    objective: float
    beta: float
    omega: float
    n_draws: int
    active_count: int
    accepted: bool
    wall_ms: float


def bernoulli_matrix(
    rng: np.random.Generator, n_draws: int, n_agents: int, omega: float
) -> np.ndarray:
    """Presampled switch indicators, shape (n_draws, N), drawn row-major.

    Entry (j, i) is the Bernoulli(omega) variable of candidate j and
    agent i; row-major generation makes the stream consumption follow
    the lexicographic (k, j, i) order when the caller keys the stream by
    the iteration.
    """
    return rng.random((n_draws, n_agents)) < omega


def canonical_active_expectation(n_agents: int, k: int, n_draws: int) -> float:
    """Expected number of agents needing a subproblem solve, N(1 - (k/(k+2))^n_k).

    Valid under the canonical step size, for which the switch
    probability at iteration k is 2/(k+2).
    """
    return n_agents * (1.0 - (k / (k + 2.0)) ** n_draws)


def sfw_step(
    problem: ProblemInstance,
    profile: DecisionProfile,
    k: int,
    omega: float,
    n_draws: int,
    rng: np.random.Generator,
    keep_if_worse: bool = True,
    use_active_set: bool = True,
) -> tuple[DecisionProfile, SfwRecord]:
    """One stochastic Frank-Wolfe update from ``profile``.

    Bernoulli switches are presampled first, so with ``use_active_set``
    only the agents that actually switch in some candidate get their
    subproblem solved; the trajectory is identical either way.  With
    ``keep_if_worse`` the iterate stays put when every candidate is
    worse than the current profile (the objective then never increases);
    otherwise the best candidate is taken unconditionally.
    """
    start = time.perf_counter()
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"switch probability must lie in [0, 1], got {omega}")
    if n_draws < 1:
        raise ValueError(f"need at least one candidate draw, got {n_draws}")
    check_profile(problem, profile)
    n, q, dims = problem.n_agents, problem.total_dim, problem.block_dims

    contrib = np.stack([problem.contribution(i, d).values for i, d in enumerate(profile.decisions)])
    y_values = contrib.sum(axis=0) / n
    y = Aggregate(y_values, dims)
    value = problem.f_value(y)

    switches = bernoulli_matrix(rng, n_draws, n, omega)
    active = np.flatnonzero(switches.any(axis=0))
    solve_idx = active if use_active_set else np.arange(n)

    best_response: dict[int, object] = {}
    delta = np.zeros((n, q))
    beta = float("nan")
    if solve_idx.size:
        grad = problem.f_grad(y)
        for i in solve_idx:
            i = int(i)
            best_response[i] = problem.best_response(i, grad)
            delta[i] = problem.contribution(i, best_response[i]).values - contrib[i]
        if solve_idx.size == n:
            ybar = Aggregate(y_values + delta.sum(axis=0) / n, dims)
            beta = dual_gap_beta(problem, y, ybar)

    candidates = y_values + (switches.astype(float) @ delta) / n
    candidate_values = problem.f_value_batch(candidates)
    best = int(np.argmin(candidate_values))  # first occurrence wins ties

    if keep_if_worse and candidate_values[best] >= value:
        next_profile = profile
        accepted = False
    else:
        next_profile = DecisionProfile(
            tuple(
                best_response[i] if switches[best, i] else d
                for i, d in enumerate(profile.decisions)
            )
        )
        accepted = next_profile != profile

    record = SfwRecord(
        k=k,
        objective=value,
        beta=beta,
        omega=omega,
        n_draws=n_draws,
        active_count=int(active.size),
        accepted=accepted,
        wall_ms=(time.perf_counter() - start) * 1e3,
    )
    return next_profile, record


def sfw_run(
    problem: ProblemInstance,
    n_iters: int,
    schedule,
    seed: int,
    rule: StepRule | None = None,
    keep_if_worse: bool = True,
    use_active_set: bool = True,
    initial: DecisionProfile | None = None,
    callback=None,
) -> tuple[DecisionProfile, list[SfwRecord]]:
    """Run the stochastic solver for ``n_iters`` iterations under ``seed``.

    The step rule is the canonical one or its closed-loop variant; the
    closed-loop rule needs the dual gap before sampling, so it forces a
    full subproblem resolution and disables the active-set shortcut.
    The convergence guarantees cover iteration counts up to 2N; longer
    runs are allowed but flagged.  A terminal sentinel record carries
    the final objective (its draw and active counts are zero).
    """
    if n_iters < 1:
        raise ValueError(f"need at least one iteration, got {n_iters}")
    rule = rule if rule is not None else CanonicalStep()
    if not isinstance(rule, (CanonicalStep, LineSearchSfwStep)):
        raise ValueError(f"unsupported step rule for the stochastic solver: {rule!r}")
    if n_iters > 2 * problem.n_agents:
        warnings.warn(
            f"{n_iters} iterations exceed twice the agent count "
            f"({problem.n_agents}); the convergence bounds are proven only up to 2N",
            stacklevel=2,
        )
    profile = initial if initial is not None else zero_gradient_profile(problem)
    records: list[SfwRecord] = []
    for k in range(n_iters):
        n_draws = schedule.size(k, problem.n_agents)
        if isinstance(rule, CanonicalStep):
            omega = rule.omega(k)
            active_set = use_active_set
        else:
            omega = rule.omega(k, beta=_presolve_beta(problem, profile))
            active_set = False
        stream = _rng.stream(seed, _rng.BERNOULLI, 0, k)
        profile, record = sfw_step(
            problem, profile, k, omega, n_draws, stream,
            keep_if_worse=keep_if_worse, use_active_set=active_set,
        )
        records.append(record)
        if callback is not None:
            callback(record)
    records.append(_terminal_record(problem, profile, n_iters))
    return profile, records


def _presolve_beta(problem: ProblemInstance, profile: DecisionProfile) -> float:
    y = aggregate_of(problem, profile)
    _, ybar = linearized_best_response(problem, y)
    return dual_gap_beta(problem, y, ybar)


def _terminal_record(problem: ProblemInstance, profile: DecisionProfile, k: int) -> SfwRecord:
    return SfwRecord(
        k=k,
        objective=objective(problem, profile),
        beta=float("nan"),
        omega=float("nan"),
        n_draws=0,
        active_count=0,
        accepted=False,
        wall_ms=0.0,
    )


@dataclass(frozen=True)
class StoppingStep:
    """Outcome of one stopping-time update."""

    decisions: DecisionProfile
    n_draws: int
    accepted: bool
    objective: float
    beta: float


def default_draw_cap(n_agents: int, k: int) -> int:
    """Draw budget for the stopping rule: ten times the expected-count bound.

    The expected number of draws is at most (1 - exp(-4N/(k+2)^3))^-2;
    the cap guards the (theoretically unbounded) worst case.
    """
    rejection = math.exp(-4.0 * n_agents / (k + 2.0) ** 3)
    if rejection >= 1.0 - 1e-9:
        return 1_000_000
    bound = 1.0 / (1.0 - rejection) ** 2
    return int(min(max(math.ceil(10.0 * bound), 50), 1_000_000))


def stopping_time_step(
    problem: ProblemInstance,
    profile: DecisionProfile,
    k: int,
    omega: float,
    rng: np.random.Generator,
    max_draws: int | None = None,
    constants: ProblemConstants | None = None,
) -> StoppingStep:
    """Draw candidates one at a time until the acceptance inequality holds.

    A candidate is accepted as soon as its objective does not exceed the
    relaxed value of the mixed iterate, ``f((1-omega) y + omega ybar)``,
    by more than ``(C1/2 + C0) omega^2``.  If ``max_draws`` candidates
    all fail, the best one seen is returned with ``accepted=False``.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"switch probability must lie in [0, 1], got {omega}")
    check_profile(problem, profile)
    constants = constants if constants is not None else compute_constants(problem)
    if max_draws is None:
        max_draws = default_draw_cap(problem.n_agents, k)
    if max_draws < 1:
        raise ValueError(f"draw budget must be at least 1, got {max_draws}")
    n, q, dims = problem.n_agents, problem.total_dim, problem.block_dims

    contrib = np.stack([problem.contribution(i, d).values for i, d in enumerate(profile.decisions)])
    y_values = contrib.sum(axis=0) / n
    grad = problem.f_grad(Aggregate(y_values, dims))
    best_response = [problem.best_response(i, grad) for i in range(n)]
    delta = np.stack(
        [problem.contribution(i, best_response[i]).values - contrib[i] for i in range(n)]
    )
    ybar_values = y_values + delta.sum(axis=0) / n
    beta = dual_gap_beta(problem, Aggregate(y_values, dims), Aggregate(ybar_values, dims))
    mixed = (1.0 - omega) * y_values + omega * ybar_values
    threshold = problem.f_value(Aggregate(mixed, dims)) + (
        constants.c1 / 2.0 + constants.c0
    ) * omega**2

    best_value, best_switches = np.inf, None
    for j in range(max_draws):
        switches = rng.random(n) < omega
        value = problem.f_value(
            Aggregate(y_values + (switches.astype(float) @ delta) / n, dims)
        )
        if value <= threshold:
            return StoppingStep(
                _apply_switches(profile, switches, best_response), j + 1, True, value, beta
            )
        if value < best_value:
            best_value, best_switches = value, switches
    return StoppingStep(
        _apply_switches(profile, best_switches, best_response), max_draws, False, best_value, beta
    )


def _apply_switches(profile, switches, best_response) -> DecisionProfile:
    return DecisionProfile(
        tuple(best_response[i] if switches[i] else d for i, d in enumerate(profile.decisions))
    )


def stopping_time_run(
    problem: ProblemInstance,
    n_iters: int,
    seed: int,
    max_draws: int | None = None,
    initial: DecisionProfile | None = None,
    callback=None,
) -> tuple[DecisionProfile, list[SfwRecord]]:
    """Stochastic solver with the stopping-time draw rule and canonical steps.

    Records reuse the stochastic record type: ``n_draws`` holds the
    number of candidates actually drawn, ``active_count`` the number of
    subproblems solved (always N here, the acceptance threshold needs
    the full best response), and ``accepted`` whether the inequality was
    met within the draw budget.
    """
    if n_iters < 1:
        raise ValueError(f"need at least one iteration, got {n_iters}")
    if n_iters > 2 * problem.n_agents:
        warnings.warn(
            f"{n_iters} iterations exceed twice the agent count "
            f"({problem.n_agents}); the convergence bounds are proven only up to 2N",
            stacklevel=2,
        )
    constants = compute_constants(problem)
    rule = CanonicalStep()
    profile = initial if initial is not None else zero_gradient_profile(problem)
    records: list[SfwRecord] = []
    for k in range(n_iters):
        start = time.perf_counter()
        value = objective(problem, profile)
        result = stopping_time_step(
            problem, profile, k, rule.omega(k),
            _rng.stream(seed, _rng.BERNOULLI, 0, k),
            max_draws=max_draws, constants=constants,
        )
        records.append(
            SfwRecord(
                k=k,
                objective=value,
                beta=result.beta,
                omega=rule.omega(k),
                n_draws=result.n_draws,
                active_count=problem.n_agents,
                accepted=result.accepted,
                wall_ms=(time.perf_counter() - start) * 1e3,
            )
        )
        profile = result.decisions
        if callback is not None:
            callback(records[-1])
    records.append(_terminal_record(problem, profile, n_iters))
    return profile, records
