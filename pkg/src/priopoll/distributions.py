"""Nonnegative service/switch-over time distributions with exact transforms.

Five closed-form families are supported: deterministic, exponential, Erlang,
hyperexponential and uniform.  Every family exposes the Laplace-Stieltjes
transform ``lst``, its complement ``1 - lst`` evaluated without cancellation
(needed when transforms are differenced near 0), raw moments up to order 3,
and reproducible sampling from a caller-owned RNG stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonpositiveParameter

__all__ = [
    "Distribution",
    "Deterministic",
    "Exponential",
    "Erlang",
    "Hyperexponential",
    "Uniform",
    "distribution_from_config",
]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise NonpositiveParameter(msg)


class Distribution:
    """Base class: a nonnegative random variable with an exact LST."""

    def lst(self, omega: float) -> float:
        """E[exp(-omega X)] for omega >= 0."""
        raise NotImplementedError

    def lst_complement(self, omega: float) -> float:
        """1 - lst(omega), computed to full relative precision."""
        raise NotImplementedError

    def moment(self, k: int) -> float:
        """Raw moment E[X^k] for k in {1, 2, 3}."""
        raise NotImplementedError

    @property
    def mean(self) -> float:
        return self.moment(1)

    def sample(self, rng: np.random.Generator) -> float:
        """One draw from the caller's stream."""
        return float(self.sample_block(rng, 1)[0])

    def sample_block(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Deterministic(Distribution):
    value: float

    def __post_init__(self):
        _require(self.value >= 0.0, f"deterministic value must be >= 0, got {self.value}")

    def lst(self, omega: float) -> float:
        return math.exp(-omega * self.value)

    def lst_complement(self, omega: float) -> float:
        return -math.expm1(-omega * self.value)

    def moment(self, k: int) -> float:
        return self.value**k

    def sample_block(self, rng, n):
        return np.full(n, self.value)

    def to_config(self):
        return {"family": "deterministic", "params": {"value": self.value}}


@dataclass(frozen=True)
class Exponential(Distribution):
    mean_: float

    def __post_init__(self):
        _require(self.mean_ > 0.0, f"exponential mean must be > 0, got {self.mean_}")

    def lst(self, omega: float) -> float:
        return 1.0 / (1.0 + omega * self.mean_)

    def lst_complement(self, omega: float) -> float:
        om = omega * self.mean_
        return om / (1.0 + om)

    def moment(self, k: int) -> float:
        return math.factorial(k) * self.mean_**k

    def sample_block(self, rng, n):
        return rng.exponential(self.mean_, n)

    def to_config(self):
        return {"family": "exponential", "params": {"mean": self.mean_}}


@dataclass(frozen=True)
class Erlang(Distribution):
    shape: int
    mean_: float

    def __post_init__(self):
        _require(isinstance(self.shape, int) and self.shape >= 1,
                 f"erlang shape must be an integer >= 1, got {self.shape}")
        _require(self.mean_ > 0.0, f"erlang mean must be > 0, got {self.mean_}")

    def lst(self, omega: float) -> float:
        return math.exp(-self.shape * math.log1p(omega * self.mean_ / self.shape))

    def lst_complement(self, omega: float) -> float:
        return -math.expm1(-self.shape * math.log1p(omega * self.mean_ / self.shape))

    def moment(self, k: int) -> float:
        # theta^k * n（n+1)...(n+k-1) with per-phase scale theta = mean/n
        n = self.shape
        theta = self.mean_ / n
        prod = 1.0
        for t in range(k):
            prod *= n + t
        return theta**k * prod

    def sample_block(self, rng, n):
        return rng.gamma(self.shape, self.mean_ / self.shape, n)

    def to_config(self):
        return {"family": "erlang", "params": {"shape": self.shape, "mean": self.mean_}}


@dataclass(frozen=True)
class Hyperexponential(Distribution):
    """Probabilistic mixture of exponentials: branch j with prob p_j, mean m_j."""

    probs: tuple
    means: tuple

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        _require(len(self.probs) == len(self.means) and len(self.probs) >= 1,
                 "hyperexponential needs matching, nonempty probs and means")
        _require(all(p > 0.0 for p in self.probs), "branch probabilities must be > 0")
        _require(all(m > 0.0 for m in self.means), "branch means must be > 0")
        _require(abs(sum(self.probs) - 1.0) < 1e-12,
                 f"branch probabilities must sum to 1, got {sum(self.probs)!r}")

    def lst(self, omega: float) -> float:
        return sum(p / (1.0 + omega * m) for p, m in zip(self.probs, self.means))

    def lst_complement(self, omega: float) -> float:
        return sum(p * omega * m / (1.0 + omega * m) for p, m in zip(self.probs, self.means))

    def moment(self, k: int) -> float:
        fk = math.factorial(k)
        return sum(p * fk * m**k for p, m in zip(self.probs, self.means))

    def sample_block(self, rng, n):
        cum = np.cumsum(self.probs)
        idx = np.searchsorted(cum, rng.random(n), side="right")
        idx = np.minimum(idx, len(self.means) - 1)
        return rng.exponential(1.0, n) * np.asarray(self.means)[idx]

    def to_config(self):
        return {"family": "hyperexponential",
                "params": {"probs": list(self.probs), "means": list(self.means)}}


def _one_minus_expm1_ratio(x: float) -> float:
    """1 - (1 - exp(-x))/x for x >= 0, stable near 0."""
    if x == 0.0:
        return 0.0
    if x < 1e-2:
        # alternating series x/2 - x^2/6 + x^3/24 - x^4/120 + x^5/720 - x^6/5040
        return x * (0.5 + x * (-1.0 / 6 + x * (1.0 / 24 + x * (-1.0 / 120 + x * (1.0 / 720 - x / 5040)))))
    return 1.0 - (-math.expm1(-x)) / x


@dataclass(frozen=True)
class Uniform(Distribution):
    low: float
    high: float

    def __post_init__(self):
        _require(self.low >= 0.0, f"uniform low must be >= 0, got {self.low}")
        _require(self.high > self.low, f"uniform needs high > low, got [{self.low}, {self.high}]")

    def lst(self, omega: float) -> float:
        if omega == 0.0:
            return 1.0
        c = self.high - self.low
        x = c * omega
        return math.exp(-self.low * omega) * (-math.expm1(-x)) / x

    def lst_complement(self, omega: float) -> float:
        if omega == 0.0:
            return 0.0
        c = self.high - self.low
        a = -math.expm1(-self.low * omega)  # 1 - exp(-a*omega)
        return a + (1.0 - a) * _one_minus_expm1_ratio(c * omega)

    def moment(self, k: int) -> float:
        a, b = self.low, self.high
        return (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))

    def sample_block(self, rng, n):
        return rng.uniform(self.low, self.high, n)

    def to_config(self):
        return {"family": "uniform", "params": {"low": self.low, "high": self.high}}


_FAMILIES = {
    "deterministic": (Deterministic, {"value"}),
    "exponential": (Exponential, {"mean"}),
    "erlang": (Erlang, {"shape", "mean"}),
    "hyperexponential": (Hyperexponential, {"probs", "means"}),
    "uniform": (Uniform, {"low", "high"}),
}


def distribution_from_config(cfg: dict) -> Distribution:
    """Build a Distribution from ``{"family": ..., "params": {...}}``.

    Unknown families, unknown parameter keys and missing parameters are
    rejected with a ValueError so that malformed model files fail loudly.
    """
    if not isinstance(cfg, dict):
        raise ValueError(f"distribution config must be an object, got {type(cfg).__name__}")
    unknown = set(cfg) - {"family", "params"}
    if unknown:
        raise ValueError(f"unknown distribution keys: {sorted(unknown)}")
    family = cfg.get("family")
    if family not in _FAMILIES:
        raise ValueError(f"unknown distribution family {family!r}; "
                         f"expected one of {sorted(_FAMILIES)}")
    cls, allowed = _FAMILIES[family]
    params = cfg.get("params")
    if not isinstance(params, dict):
        raise ValueError(f"distribution {family!r} needs a params object")
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"unknown parameters for {family!r}: {sorted(unknown)}")
    missing = allowed - set(params)
    if missing:
        raise ValueError(f"missing parameters for {family!r}: {sorted(missing)}")
    if family == "deterministic":
        return cls(value=float(params["value"]))
    if family == "exponential":
        return cls(mean_=float(params["mean"]))
    if family == "erlang":
        return cls(shape=int(params["shape"]), mean_=float(params["mean"]))
    if family == "hyperexponential":
        return cls(probs=tuple(params["probs"]), means=tuple(params["means"]))
    return cls(low=float(params["low"]), high=float(params["high"]))
