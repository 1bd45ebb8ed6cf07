"""Experiment specification: packaged YAML defaults, user files and flag overrides."""

from __future__ import annotations

import enum
import logging
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from gmrf_greedy._core.errors import ConfigurationError, InvalidParameter, IOFailure
from gmrf_greedy.baselines.cv import DEFAULT_C_GRID
from gmrf_greedy.models.spec import Family, ModelSpec

logger = logging.getLogger(__name__)

MIN_SAMPLES = 2


class Method(enum.StrEnum):
    """Estimators the harness can run."""

    global_greedy = "global-greedy"
    nbd_greedy = "nbd-greedy"
    glasso = "glasso"
    nbd_lasso = "nbd-lasso"

    @property
    def neighborhood_based(self) -> bool:
        return self in (Method.nbd_greedy, Method.nbd_lasso)


def beta_to_n(family: Family | str, p: int, d: int, beta: float) -> int:
    """Sample size for control parameter ``beta``.

    Stars use ``n = beta * 200 * log(d p)``; every other family uses
    ``n = beta * 70 * d * log(p)``. The result is rounded and at least 2.
    """
    if not beta > 0:
        raise InvalidParameter(f"beta must be > 0, got {beta}")
    if p < 2 or d < 1:
        raise InvalidParameter(f"need p >= 2 and d >= 1 (got p={p}, d={d})")
    return max(MIN_SAMPLES, round(beta * beta_denominator(family, p, d)))


def beta_denominator(family: Family | str, p: int, d: int) -> float:
    """``n / beta`` for the family."""
    if Family(family) is Family.star:
        return 200.0 * math.log(d * p)
    return 70.0 * d * math.log(p)


def _deep_merge(base: dict, override: dict) -> dict:
    """Recursively merge *override* into *base* (mutates *base*)."""
    for key, val in override.items():
        if key in base and isinstance(base[key], dict) and isinstance(val, dict):
            _deep_merge(base[key], val)
        else:
            base[key] = val
    return base


# Flat ExperimentSpec field names and the section each one lives in.
_SECTION_KEYS: dict[str, dict[str, str]] = {
    "model": {"family": "family", "p": "p", "tau": "tau", "omega": "omega", "star_degree": "star_degree"},
    "greedy": {"c_eps": "c_eps", "nu": "nu", "population_eps": "population_eps"},
    "lasso": {
        "c_lambda": "c_lambda",
        "cv_folds": "cv_folds",
        "c_grid": "c_grid",
        "lasso_tol": "tol",
        "population_lambda": "population_lambda",
    },
}
_TOP_LEVEL_KEYS = frozenset({"methods", "beta_list", "n_list", "trials", "base_seed", "population"})


def normalize_layout(data: dict[str, Any], source: str = "experiment") -> dict[str, Any]:
    """Return ``data`` in the nested layout, lifting flat field names into their sections.

    Both ``{"family": "star", "c_eps": 3.0}`` and
    ``{"model": {"family": "star"}, "greedy": {"c_eps": 3.0}}`` are accepted.

    Raises:
        ConfigurationError: On a key that is neither a section, a section
            field nor a top-level field.

    """
    out: dict[str, Any] = {}
    unknown: list[str] = []
    for key, value in data.items():
        if key in _SECTION_KEYS:
            if not isinstance(value, dict):
                raise ConfigurationError(f"{source}: '{key}' must be a mapping")
            allowed = set(_SECTION_KEYS[key].values())
            unknown.extend(f"{key}.{name}" for name in value if name not in allowed)
            out.setdefault(key, {}).update(value)
        elif key in _TOP_LEVEL_KEYS:
            out[key] = value
        else:
            section = next((s for s, keys in _SECTION_KEYS.items() if key in keys), None)
            if section is None:
                unknown.append(key)
            else:
                out.setdefault(section, {})[_SECTION_KEYS[section][key]] = value
    if unknown:
        raise ConfigurationError(f"{source}: unknown keys {', '.join(sorted(unknown))}")
    return out


def _read_mapping(path: Path) -> dict:
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as err:
        raise IOFailure(f"Cannot read experiment file {path}: {err}") from err
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: experiment file must hold a mapping")
    return normalize_layout(data, str(path))


def default_experiment() -> dict:
    pkg = resources.files("gmrf_greedy.harness")
    return yaml.safe_load((pkg / "experiment_default.yaml").read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything that determines a sweep's output."""

    model: ModelSpec
    methods: tuple[Method, ...]
    beta_list: tuple[float, ...] | None = None
    n_list: tuple[int, ...] | None = None
    trials: int = 50
    base_seed: int = 0
    population: bool = False
    c_eps: float = 1.5
    nu: float = 0.5
    population_eps: float = 1e-6
    c_lambda: float = 1.0
    cv_folds: int = 0
    c_grid: tuple[float, ...] = DEFAULT_C_GRID
    lasso_tol: float = 1e-6
    population_lambda: float = 1e-3

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InvalidParameter(f"trials must be >= 1, got {self.trials}")
        if not self.methods:
            raise InvalidParameter("at least one method is required")
        if not self.n_list and not self.beta_list:
            raise InvalidParameter("either beta_list or n_list must be nonempty")
        if self.n_list and any(n < MIN_SAMPLES for n in self.n_list):
            raise InvalidParameter(f"sample sizes must be >= {MIN_SAMPLES}")
        if self.beta_list and any(not b > 0 for b in self.beta_list):
            raise InvalidParameter("beta values must be > 0")
        if self.base_seed < 0:
            raise InvalidParameter(f"base_seed must be >= 0, got {self.base_seed}")
        if not self.c_eps > 0 or not self.c_lambda >= 0:
            raise InvalidParameter("c_eps must be > 0 and c_lambda >= 0")
        if self.cv_folds == 1 or self.cv_folds < 0:
            raise InvalidParameter(f"cv_folds must be 0 (off) or >= 2, got {self.cv_folds}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentSpec:
        """Build from the nested layout of ``experiment_default.yaml`` or from flat field names."""
        data = normalize_layout(data)
        try:
            model = data["model"]
            greedy = data.get("greedy", {})
            lasso = data.get("lasso", {})
            n_list = data.get("n_list")
            return cls(
                model=ModelSpec(
                    family=Family(model["family"]),
                    p=int(model["p"]),
                    tau=float(model.get("tau", 0.5)),
                    omega=float(model.get("omega", 0.2)),
                    star_degree=model.get("star_degree"),
                ),
                methods=tuple(Method(m) for m in data["methods"]),
                beta_list=None if n_list else tuple(float(b) for b in data.get("beta_list") or ()),
                n_list=tuple(int(n) for n in n_list) if n_list else None,
                trials=int(data.get("trials", 50)),
                base_seed=int(data.get("base_seed", 0)),
                population=bool(data.get("population", False)),
                c_eps=float(greedy.get("c_eps", 1.5)),
                nu=float(greedy.get("nu", 0.5)),
                population_eps=float(greedy.get("population_eps", 1e-6)),
                c_lambda=float(lasso.get("c_lambda", 1.0)),
                cv_folds=int(lasso.get("cv_folds", 0)),
                c_grid=tuple(float(c) for c in lasso.get("c_grid") or DEFAULT_C_GRID),
                lasso_tol=float(lasso.get("tol", 1e-6)),
                population_lambda=float(lasso.get("population_lambda", 1e-3)),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigurationError(f"invalid experiment specification: {err}") from err


def load_experiment(path: Path | None = None, overrides: dict[str, Any] | None = None) -> ExperimentSpec:
    """Packaged defaults, then ``GMRF_EXPERIMENT_FILE``, then ``path``, then ``overrides``."""
    data = default_experiment()
    env_file = os.getenv("GMRF_EXPERIMENT_FILE")
    for source in (Path(env_file) if env_file else None, path):
        if source is not None:
            logger.debug("Merging experiment file %s", source)
            _deep_merge(data, _read_mapping(source))
    if overrides:
        _deep_merge(data, normalize_layout(overrides, "overrides"))
    return ExperimentSpec.from_dict(data)
