"""Finite-alphabet probability and information primitives.

Everything downstream (ordering tests, rate regions, union searches) is built
from four ingredients: probability vectors, row-stochastic channel matrices,
auxiliary Markov chains for superposition coding, and tables of the
mutual-information quantities those chains induce at each receiver.

All rates and entropies are in bits (log base 2).  All values are immutable
after construction; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

PMF_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when a probability object violates its invariants."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def as_pmf(values, renormalize: bool = False) -> np.ndarray:
    """Validate (and optionally renormalize) a probability mass function.

    Entries must be nonnegative and sum to 1 within ``PMF_TOL``; with
    ``renormalize`` the sum may deviate further and is rescaled, which
    tolerates decimal-rounded input files.
    """
    p = np.asarray(getattr(values, "p", values), dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise ValidationError(f"pmf must be a nonempty 1-d vector, got shape {p.shape}")
    if np.any(p < -PMF_TOL):
        raise ValidationError(f"pmf has negative entry: min={p.min()}")
    p = np.clip(p, 0.0, None)
    s = p.sum()
    if abs(s - 1.0) > PMF_TOL:
        if not renormalize:
            raise ValidationError(f"pmf sums to {s!r}, not 1")
        if s <= 0:
            raise ValidationError("pmf sums to zero; cannot renormalize")
        p = p / s
    return p


def as_channel(values, renormalize: bool = False) -> np.ndarray:
    """Validate a row-stochastic matrix W[x, y] = W(y | x)."""
    w = np.asarray(getattr(values, "rows", values), dtype=float)
    if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
        raise ValidationError(f"channel must be a nonempty 2-d matrix, got shape {w.shape}")
    return np.vstack([as_pmf(row, renormalize=renormalize) for row in w])


@dataclass(frozen=True, eq=False)
class ProbVector:
    """Probability mass over a finite alphabet."""

    p: np.ndarray

    @classmethod
    def of(cls, values, renormalize: bool = False) -> "ProbVector":
        return cls(_freeze(as_pmf(values, renormalize=renormalize)))

    def __len__(self) -> int:
        return self.p.size

    def __getitem__(self, i: int) -> float:
        return float(self.p[i])


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """Row-stochastic transition matrix; entry [x, y] is W(y | x).

    Only the marginal channel to a single receiver is ever stored: the rate
    regions computed here depend on the per-receiver marginals alone.
    """

    rows: np.ndarray

    @classmethod
    def of(cls, values, renormalize: bool = False) -> "ChannelMatrix":
        return cls(_freeze(as_channel(values, renormalize=renormalize)))

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def compose(self, post: "ChannelMatrix | np.ndarray") -> "ChannelMatrix":
        """Cascade with a post-processing channel: returns W @ Q."""
        q = as_channel(post)
        if q.shape[0] != self.output_size:
            raise ValidationError(
                f"cascade mismatch: {self.output_size} outputs into {q.shape[0]} inputs"
            )
        return ChannelMatrix.of(self.rows @ q)


# Common channel constructors, used throughout the tests and demos.

def bsc(eps: float) -> ChannelMatrix:
    """Binary symmetric channel with crossover probability eps."""
    if not 0.0 <= eps <= 1.0:
        raise ValidationError(f"crossover must be in [0,1], got {eps}")
    return ChannelMatrix.of([[1 - eps, eps], [eps, 1 - eps]])


def bec(e: float) -> ChannelMatrix:
    """Binary erasure channel; outputs are (0, erasure, 1)."""
    if not 0.0 <= e <= 1.0:
        raise ValidationError(f"erasure probability must be in [0,1], got {e}")
    return ChannelMatrix.of([[1 - e, e, 0.0], [0.0, e, 1 - e]])


def identity_channel(n: int) -> ChannelMatrix:
    return ChannelMatrix.of(np.eye(n))


def constant_channel(n_in: int, n_out: int = 1) -> ChannelMatrix:
    """Channel whose output is independent of the input (zero capacity)."""
    w = np.zeros((n_in, n_out))
    w[:, 0] = 1.0
    return ChannelMatrix.of(w)


def entropy(p) -> float:
    """Shannon entropy H(p) in bits, with 0 log 0 = 0."""
    q = p.p if isinstance(p, ProbVector) else as_pmf(p)
    nz = q[q > 0]
    return float(-(nz * np.log2(nz)).sum())


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def entropy_rows(w: np.ndarray) -> np.ndarray:
    """Row-wise entropies of a matrix of pmfs (vectorized, 0 log 0 = 0)."""
    w = np.asarray(w, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(w > 0, w * np.log2(np.where(w > 0, w, 1.0)), 0.0)
    return -t.sum(axis=-1)


def mutual_info(p, w) -> float:
    """I(X;Y) for input pmf p and channel W, in bits.

    I(X;Y) = H(pW) - sum_x p(x) H(W[x]).
    """
    q = p.p if isinstance(p, ProbVector) else as_pmf(p)
    m = w.rows if isinstance(w, ChannelMatrix) else as_channel(w)
    if q.size != m.shape[0]:
        raise ValidationError(f"input pmf length {q.size} != channel input size {m.shape[0]}")
    return float(entropy_rows((q @ m)[None, :])[0] - q @ entropy_rows(m))


def mutual_info_rows(ps: np.ndarray, w: np.ndarray) -> np.ndarray:
    """I(p_i; W) for a batch of input pmfs stacked as rows (no validation)."""
    hy = entropy_rows(ps @ w)
    hyx = entropy_rows(w)
    return hy - ps @ hyx


@dataclass(frozen=True, eq=False)
class BroadcastSpec:
    """A K-receiver DM broadcast channel with a private-receiver subset.

    Receivers are canonicalized so the L private receivers come first; the
    original ordering survives in ``names``.  Throughout, receivers are
    addressed 1-based to match the Y_1..Y_K convention: S = {1..L} private,
    C = {L+1..K} common.
    """

    input_size: int
    receivers: tuple[ChannelMatrix, ...]
    num_private: int
    names: tuple[str, ...] = ()

    @classmethod
    def of(
        cls,
        receivers: Sequence,
        private: Iterable[int],
        names: Sequence[str] | None = None,
        renormalize: bool = False,
    ) -> "BroadcastSpec":
        """Build from channel matrices and a 0-based private index set."""
        mats = [m if isinstance(m, ChannelMatrix) else ChannelMatrix.of(m, renormalize) for m in receivers]
        if not mats:
            raise ValidationError("at least one receiver required")
        nx = mats[0].input_size
        for i, m in enumerate(mats):
            if m.input_size != nx:
                raise ValidationError(f"receiver {i + 1} input size {m.input_size} != {nx}")
        k = len(mats)
        priv = sorted(set(private))
        if any(i < 0 or i >= k for i in priv):
            raise ValidationError(f"private indices out of range: {priv}")
        if not 1 <= len(priv) <= k - 1:
            raise ValidationError(f"need 1 <= |private| <= K-1, got {len(priv)} of {k}")
        if names is None:
            names = [f"Y{i + 1}" for i in range(k)]
        if len(names) != k:
            raise ValidationError("one name per receiver required")
        order = priv + [i for i in range(k) if i not in priv]
        return cls(
            input_size=nx,
            receivers=tuple(mats[i] for i in order),
            num_private=len(priv),
            names=tuple(names[i] for i in order),
        )

    @property
    def K(self) -> int:
        return len(self.receivers)

    @property
    def L(self) -> int:
        return self.num_private

    @property
    def private_set(self) -> tuple[int, ...]:
        return tuple(range(1, self.L + 1))

    @property
    def common_set(self) -> tuple[int, ...]:
        return tuple(range(self.L + 1, self.K + 1))

    def receiver(self, i: int) -> ChannelMatrix:
        """1-based receiver access (Y_i)."""
        if not 1 <= i <= self.K:
            raise ValidationError(f"receiver index {i} out of 1..{self.K}")
        return self.receivers[i - 1]


@dataclass(frozen=True, eq=False)
class MarkovChain:
    """Coding distribution for superposition with rate splitting.

    ``top`` is the pmf of the topmost auxiliary (the cloud center carrying the
    common message); ``kernels[i]`` maps level i to level i+1, the last kernel
    mapping the bottom auxiliary to the channel input X.  With no kernels the
    chain is a bare input distribution p(x).
    """

    top: np.ndarray
    kernels: tuple[np.ndarray, ...] = ()

    @classmethod
    def of(cls, top, kernels: Sequence = (), renormalize: bool = False) -> "MarkovChain":
        t = _freeze(as_pmf(top, renormalize=renormalize))
        ks = []
        size = t.size
        for i, k in enumerate(kernels):
            m = as_channel(k, renormalize=renormalize)
            if m.shape[0] != size:
                raise ValidationError(f"kernel {i} expects {size} inputs, has {m.shape[0]}")
            size = m.shape[1]
            ks.append(_freeze(m))
        return cls(top=t, kernels=tuple(ks))

    @property
    def num_aux(self) -> int:
        """Number of auxiliary levels above X (0 for a bare input pmf)."""
        return len(self.kernels)

    @property
    def input_size(self) -> int:
        return self.kernels[-1].shape[1] if self.kernels else self.top.size

    def level_sizes(self) -> tuple[int, ...]:
        sizes = [self.top.size]
        for k in self.kernels:
            sizes.append(k.shape[1])
        return tuple(sizes)

    def marginal(self, level: int) -> np.ndarray:
        """Marginal pmf at auxiliary level ``level`` (0 = top; num_aux = X)."""
        q = self.top
        for k in self.kernels[:level]:
            q = q @ k
        return q

    def down_kernel(self, level: int) -> np.ndarray:
        """p(x | u_level): composition of all kernels below ``level``."""
        d = np.eye(self.level_sizes()[level])
        for k in self.kernels[level:]:
            d = d @ k
        return d

    def between_kernel(self, upper: int, lower: int) -> np.ndarray:
        """p(u_lower | u_upper) for upper <= lower."""
        if upper > lower:
            raise ValidationError("between_kernel expects upper level index <= lower")
        d = np.eye(self.level_sizes()[upper])
        for k in self.kernels[upper:lower]:
            d = d @ k
        return d

    def collapsed(self) -> "MarkovChain":
        """Force the second level equal to the top: identity first kernel
        with the two top kernels composed below it, so the joint of the top
        level with everything beneath is unchanged."""
        if self.num_aux < 2:
            raise ValidationError("collapse needs at least two auxiliary levels")
        k0, k1 = self.kernels[0], self.kernels[1]
        eye = np.eye(self.top.size)
        return MarkovChain.of(self.top, (eye, k0 @ k1) + self.kernels[2:])


def chain_joint(chain: MarkovChain) -> np.ndarray:
    """Full joint distribution over (U_top, ..., U_bottom, X) as a tensor.

    Axis i is chain level i; the last axis is X.  The product of a valid
    chain's kernels, so marginalizing all but the last axis gives p(x).
    """
    joint = chain.top.copy()
    for k in chain.kernels:
        joint = joint[..., None] * k[(None,) * (joint.ndim - 1)]
    return joint


@dataclass(frozen=True, eq=False)
class MITable:
    """All mutual-information atoms induced by a chain on a broadcast channel.

    Keys use 0-based chain levels (0 = topmost auxiliary) and 1-based
    receivers.  ``aux_rx[a, i]`` is I(U_a; Y_i); ``x_rx_given_aux[a, i]`` is
    I(X; Y_i | U_a); ``x_rx[i]`` is I(X; Y_i); ``aux_rx_given_aux[a, b, i]``
    is I(U_a; Y_i | U_b) for a strictly below b (a > b as level indices).
    """

    num_aux: int
    num_receivers: int
    aux_rx: dict = field(default_factory=dict)
    x_rx_given_aux: dict = field(default_factory=dict)
    x_rx: dict = field(default_factory=dict)
    aux_rx_given_aux: dict = field(default_factory=dict)

    def iu_y(self, level: int, rx: int) -> float:
        try:
            return self.aux_rx[(level, rx)]
        except KeyError:
            raise ValidationError(f"missing atom I(U@{level};Y{rx})") from None

    def ix_y_given_u(self, level: int, rx: int) -> float:
        try:
            return self.x_rx_given_aux[(level, rx)]
        except KeyError:
            raise ValidationError(f"missing atom I(X;Y{rx}|U@{level})") from None

    def ix_y(self, rx: int) -> float:
        try:
            return self.x_rx[rx]
        except KeyError:
            raise ValidationError(f"missing atom I(X;Y{rx})") from None

    def iu_y_given_u(self, lower: int, upper: int, rx: int) -> float:
        try:
            return self.aux_rx_given_aux[(lower, upper, rx)]
        except KeyError:
            raise ValidationError(f"missing atom I(U@{lower};Y{rx}|U@{upper})") from None


def eval_mi_table(chain: MarkovChain, bc: BroadcastSpec, aux_pairs: bool = True) -> MITable:
    """Evaluate every mutual-information atom of ``chain`` over ``bc``.

    ``aux_pairs=False`` skips the conditional aux-vs-aux atoms
    I(U_a;Y|U_b), which only the joint-decoding region reads.
    """
    if chain.input_size != bc.input_size:
        raise ValidationError(
            f"chain produces alphabet of size {chain.input_size}, channel expects {bc.input_size}"
        )
    m = chain.num_aux
    margs = [chain.marginal(a) for a in range(m + 1)]
    downs = [chain.down_kernel(a) for a in range(m)]  # p(x | u_a)

    aux_rx: dict = {}
    x_rx_given_aux: dict = {}
    x_rx: dict = {}
    aux_rx_given_aux: dict = {}
    p_x = margs[m]
    for i in range(1, bc.K + 1):
        w = bc.receiver(i).rows
        x_rx[i] = max(0.0, float(mutual_info_rows(p_x[None, :], w)[0]))
        for a in range(m):
            t = downs[a] @ w  # channel U_a -> Y_i
            aux_rx[(a, i)] = max(0.0, float(mutual_info_rows(margs[a][None, :], t)[0]))
            cond = float(margs[a] @ mutual_info_rows(downs[a], w))
            x_rx_given_aux[(a, i)] = max(0.0, cond)
        if aux_pairs:
            for b in range(m):
                for a in range(b + 1, m):
                    between = chain.between_kernel(b, a)  # p(u_a | u_b)
                    t = downs[a] @ w
                    val = float(margs[b] @ mutual_info_rows(between, t))
                    aux_rx_given_aux[(a, b, i)] = max(0.0, val)
    return MITable(
        num_aux=m,
        num_receivers=bc.K,
        aux_rx=aux_rx,
        x_rx_given_aux=x_rx_given_aux,
        x_rx=x_rx,
        aux_rx_given_aux=aux_rx_given_aux,
    )
