import numpy as np
import pytest

from nestedcast import BroadcastSpec, MarkovChain, SearchConfig


def fast_cfg(**kw) -> SearchConfig:
    """Trimmed budgets for test runtime; seeds stay pinned."""
    base = dict(
        pairs=8_000,
        lines=200,
        line_points=17,
        simplex_seeds=400,
        ascent_restarts=4,
        multistarts=3,
        ascent_iters=10,
        lambdas=(0.0, 0.5, 1.0, 2.0, 1000.0),
    )
    base.update(kw)
    return SearchConfig(**base)


def random_channel(rng, n_in, n_out) -> np.ndarray:
    return rng.dirichlet(np.ones(n_out), size=n_in)


def random_bc(rng, K, L, n_in=2, n_out=None) -> BroadcastSpec:
    mats = [random_channel(rng, n_in, n_out or rng.integers(2, 4)) for _ in range(K)]
    return BroadcastSpec.of(mats, private=range(L))


def random_chain(rng, levels, cards, nx) -> MarkovChain:
    top = rng.dirichlet(np.ones(cards[0]))
    kernels = []
    sizes = list(cards) + [nx]
    for a, b in zip(sizes[:-1], sizes[1:]):
        kernels.append(rng.dirichlet(np.ones(b), size=a))
    return MarkovChain.of(top, kernels)


def degrade(matrix: np.ndarray, rng, n_out=None) -> np.ndarray:
    """Cascade with a random post-processing kernel."""
    m = np.asarray(matrix, dtype=float)
    n_out = n_out or m.shape[1]
    q = rng.dirichlet(np.ones(n_out), size=m.shape[1])
    return m @ q


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
