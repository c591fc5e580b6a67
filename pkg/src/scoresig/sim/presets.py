"""Named experiment setups for the published error-rate figures and tables."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import ConfigError
from .distributions import DistributionSpec
from .experiments import ErrorRateTable, ExperimentConfig, run_type1_experiment, run_type2_experiment

NORMAL = DistributionSpec.normal(0.0, 1.5)
NORMAL_MIXTURE = DistributionSpec.normal_mixture([(0.0, 1.5, 0.75), (-0.5, 0.25, 0.25)])
# "Laplace(0, 1.5^2)" taken as scale 2.25; Type I rates do not depend on the scale
LAPLACE = DistributionSpec.laplace(0.0, 2.25)
RAYLEIGH = DistributionSpec.rayleigh(1.0)

FIGURE_THRESHOLDS = (0.05, 0.2)
TABLE_THRESHOLDS = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5)
MEAN_GAP = 0.5


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str
    mode: str
    config: ExperimentConfig
    description: str

    def run(self, config: ExperimentConfig | None = None) -> ErrorRateTable:
        config = config or self.config
        if self.kind == "type1":
            return run_type1_experiment(config)
        return run_type2_experiment(config, self.mode)


def _type1(dist, thresholds):
    return ExperimentConfig(dist_a=dist, dist_b=dist, thresholds=thresholds)


def _type2(dist, thresholds):
    return ExperimentConfig(dist_a=dist.shifted(MEAN_GAP), dist_b=dist, thresholds=thresholds)


def _build() -> dict[str, Preset]:
    presets = [
        Preset("fig2-normal", "type1", "by_size", _type1(NORMAL, FIGURE_THRESHOLDS), "Type I vs size, N(0, 1.5^2)"),
        Preset("fig2-mixture", "type1", "by_size", _type1(NORMAL_MIXTURE, FIGURE_THRESHOLDS), "Type I vs size, normal mixture"),
        Preset("fig2-laplace", "type1", "by_size", _type1(LAPLACE, FIGURE_THRESHOLDS), "Type I vs size, Laplace"),
        Preset("fig2-rayleigh", "type1", "by_size", _type1(RAYLEIGH, FIGURE_THRESHOLDS), "Type I vs size, Rayleigh(1)"),
        Preset("fig5-size", "type2", "by_size", _type2(NORMAL, FIGURE_THRESHOLDS), "Type II vs size, N(0.5, 1.5^2) vs N(0, 1.5^2)"),
        Preset("fig5-mean", "type2", "by_mean_difference", _type2(NORMAL, FIGURE_THRESHOLDS), "Type II vs mean difference, size 5"),
        Preset("tables-2", "type1", "by_size", _type1(NORMAL, TABLE_THRESHOLDS), "Type I, normal"),
        Preset("tables-3", "type2", "by_size", _type2(NORMAL, TABLE_THRESHOLDS), "Type II vs size, normal"),
        Preset("tables-4", "type1", "by_size", _type1(NORMAL_MIXTURE, TABLE_THRESHOLDS), "Type I, normal mixture"),
        Preset("tables-5", "type2", "by_mean_difference", _type2(NORMAL, TABLE_THRESHOLDS), "Type II vs mean difference, normal"),
        Preset("tables-6", "type2", "by_size", _type2(NORMAL_MIXTURE, TABLE_THRESHOLDS), "Type II vs size, normal mixture"),
        Preset("tables-7", "type2", "by_mean_difference", _type2(NORMAL_MIXTURE, TABLE_THRESHOLDS), "Type II vs mean difference, normal mixture"),
        Preset("tables-8", "type1", "by_size", _type1(LAPLACE, TABLE_THRESHOLDS), "Type I, Laplace"),
        Preset("tables-9", "type1", "by_size", _type1(RAYLEIGH, TABLE_THRESHOLDS), "Type I, Rayleigh"),
    ]
    return {p.name: p for p in presets}


PRESETS = _build()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def run_preset(name: str, **overrides) -> ErrorRateTable:
    """Run a preset, replacing any :class:`ExperimentConfig` fields given as keywords."""
    preset = get_preset(name)
    return preset.run(replace(preset.config, **overrides))
