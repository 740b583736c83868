import numpy as np
import pytest

import aggfw
from aggfw.problems import Aggregate, ProblemInstance


class TableInstance(ProblemInstance):
    """Generic finite-universe instance driven by explicit contribution tables.

    Agent i's decisions are indices into ``tables[i]``, a (U_i, q) array of
    contribution vectors (all blocks scalar); the outer function is the
    separable quadratic ``sum_j (y_j - target_j)^2``.  Used to exercise the
    abstract interface with more than two decisions per agent.
    """

    def __init__(self, tables, target):
        self.tables = [np.asarray(t, dtype=float) for t in tables]
        self.target = np.asarray(target, dtype=float)
        q = self.tables[0].shape[1]
        assert all(t.shape[1] == q for t in self.tables)
        self._dims = (1,) * q

    @property
    def n_agents(self):
        return len(self.tables)

    @property
    def block_dims(self):
        return self._dims

    def decision_universe(self, i):
        return tuple(range(self.tables[i].shape[0]))

    def validate_decision(self, i, decision):
        return isinstance(decision, (int, np.integer)) and 0 <= decision < self.tables[i].shape[0]

    def contribution(self, i, decision):
        return Aggregate(self.tables[i][decision], self._dims)

    def f_block_values(self, y):
        return (y.values - self.target) ** 2

    def f_grad(self, y):
        return Aggregate(2.0 * (y.values - self.target), self._dims)

    def best_response(self, i, grad):
        scores = self.tables[i] @ grad.values
        return int(np.argmin(scores))  # argmin returns the first minimizer

    @property
    def lipschitz_f(self):
        # Crude but valid modulus: 2 * (range radius + |target|) per block.
        lo = sum(t.min(axis=0) for t in self.tables) / self.n_agents
        hi = sum(t.max(axis=0) for t in self.tables) / self.n_agents
        return 2.0 * np.maximum(np.abs(lo - self.target), np.abs(hi - self.target))

    @property
    def lipschitz_grad(self):
        return np.full(self.n_blocks, 2.0)

    @property
    def diameters(self):
        return np.stack([t.max(axis=0) - t.min(axis=0) for t in self.tables])


@pytest.fixture(scope="session")
def miqp_small():
    """Desk-scale benchmark instance, N=10 agents and M=3 blocks."""
    return aggfw.generate(3, 10, seed=5)


@pytest.fixture(scope="session")
def miqp_small_reference(miqp_small):
    return miqp_small.relaxed_optimum(tol=1e-10)


@pytest.fixture(scope="session")
def miqp_medium():
    """N=M=30 instance used by the statistical tests."""
    return aggfw.generate(30, 30, seed=2)


@pytest.fixture(scope="session")
def miqp_medium_reference(miqp_medium):
    return miqp_medium.relaxed_optimum(tol=1e-9)


@pytest.fixture(scope="session")
def balanced_ten():
    return aggfw.BalancedSignsInstance(10)


@pytest.fixture()
def table_instance():
    rng = np.random.default_rng(42)
    tables = [rng.normal(size=(3 + (i % 2), 2)) for i in range(4)]
    return TableInstance(tables, target=np.array([0.3, -0.2]))
