"""Score distributions used in the error-rate simulations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import ConfigError
from ..rng import RngStream
from ..samples import ScoreSample, make_sample

FAMILIES = ("normal", "normal_mixture", "laplace", "rayleigh")


@dataclass(frozen=True)
class DistributionSpec:
    """A distribution family and its parameters.

    ``params`` by family:

    - ``normal``: ``(mean, std)``
    - ``normal_mixture``: ``((mean, std, weight), ...)``
    - ``laplace``: ``(location, scale)``
    - ``rayleigh``: ``(scale,)``
    """

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown distribution family {self.family!r}")
        if self.family == "normal_mixture":
            if not self.params:
                raise ConfigError("a mixture needs at least one component")
            for component in self.params:
                if len(component) != 3:
                    raise ConfigError("mixture components are (mean, std, weight) triples")
                if component[1] <= 0 or component[2] <= 0:
                    raise ConfigError("mixture stds and weights must be positive")
            if abs(sum(c[2] for c in self.params) - 1.0) > 1e-12:
                raise ConfigError("mixture weights must sum to 1")
        else:
            expected = {"normal": 2, "laplace": 2, "rayleigh": 1}[self.family]
            if len(self.params) != expected:
                raise ConfigError(f"{self.family} takes {expected} parameter(s), got {len(self.params)}")
            if self.params[-1] <= 0:
                raise ConfigError(f"{self.family} scale must be positive")

    @classmethod
    def normal(cls, mean: float = 0.0, std: float = 1.0) -> DistributionSpec:
        return cls("normal", (float(mean), float(std)))

    @classmethod
    def normal_mixture(cls, components: Sequence[Sequence[float]]) -> DistributionSpec:
        return cls("normal_mixture", tuple(tuple(float(v) for v in c) for c in components))

    @classmethod
    def laplace(cls, location: float = 0.0, scale: float = 1.0) -> DistributionSpec:
        return cls("laplace", (float(location), float(scale)))

    @classmethod
    def rayleigh(cls, scale: float = 1.0) -> DistributionSpec:
        return cls("rayleigh", (float(scale),))

    def mean(self) -> float:
        if self.family in ("normal", "laplace"):
            return self.params[0]
        if self.family == "rayleigh":
            return self.params[0] * math.sqrt(math.pi / 2)
        return sum(mean * weight for mean, _, weight in self.params)

    def shifted(self, gap: float) -> DistributionSpec:
        """Move the distribution up by ``gap``.

        Mixtures move only their last component, which changes the mean by
        ``gap`` times that component's weight.
        """
        if self.family in ("normal", "laplace"):
            return DistributionSpec(self.family, (self.params[0] + gap,) + self.params[1:])
        if self.family == "normal_mixture":
            *head, (mean, std, weight) = self.params
            return DistributionSpec(self.family, tuple(head) + ((mean + gap, std, weight),))
        raise ConfigError("rayleigh distributions have no location parameter to shift")

    def to_dict(self) -> dict:
        return {"family": self.family, "params": _listify(self.params)}

    @classmethod
    def from_dict(cls, data: dict) -> DistributionSpec:
        return cls(data["family"], _tuplify(data["params"]))


def _listify(value):
    return [_listify(v) for v in value] if isinstance(value, (tuple, list)) else value


def _tuplify(value):
    return tuple(_tuplify(v) for v in value) if isinstance(value, (tuple, list)) else value


def _open_uniform(gen: np.random.Generator, n: int) -> np.ndarray:
    # strictly inside (0, 1) so the logarithms below stay finite
    return (gen.integers(0, 2**53, n) + 0.5) / 2.0**53


def draw(spec: DistributionSpec, n: int, gen: np.random.Generator) -> np.ndarray:
    """``n`` i.i.d. draws from ``spec`` as a raw array."""
    family, params = spec.family, spec.params
    if family == "normal":
        mean, std = params
        return mean + std * gen.standard_normal(n)
    if family == "normal_mixture":
        means, stds, weights = (np.array(column) for column in zip(*params))
        component = gen.choice(len(weights), size=n, p=weights)
        return means[component] + stds[component] * gen.standard_normal(n)
    if family == "laplace":
        location, scale = params
        u = _open_uniform(gen, n)
        return np.where(u < 0.5, location + scale * np.log(2 * u), location - scale * np.log(2 * (1 - u)))
    (scale,) = params
    return scale * np.sqrt(-2.0 * np.log(_open_uniform(gen, n)))


def sample_distribution(spec: DistributionSpec, n: int, rng: Union[RngStream, np.random.Generator]) -> ScoreSample:
    if n < 1:
        raise ConfigError(f"sample size must be positive, got {n}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    return make_sample(draw(spec, n, gen))
