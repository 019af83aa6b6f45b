"""
Run configuration documents.

    {
      "sections": [<section>, ...],
      "lambda": 1000 | "lambda_sweep": {"from": 100, "to": 3000, "step": 100},
      "solver": "bisection" | "iteration",
      "tol": null, "max_iter": null, "theta0": null,
      "form": "flow" | "speed",
      "points": 50,
      "output": {"path": "out/run.json", "format": "csv" | "json"}
    }
"""

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.core.artifacts import config_digest
from apps.core.exceptions import ConfigError
from apps.diagram.entities import FundamentalDiagram
from apps.diagram.services.loader import load_section
from apps.section.entities import DistributionSource
from apps.tandem.entities import SolverKind, TandemConfig

__all__ = [
    'OutputFormat',
    'LambdaSweep',
    'OutputSpec',
    'RunConfig',
    'parse_run_config',
    'load_run_config',
]

KNOWN_KEYS = {'sections', 'lambda', 'lambda_sweep', 'solver', 'tol', 'max_iter', 'theta0', 'form', 'points', 'output'}
FORMS = {'flow': DistributionSource.FLOW_FORM, 'speed': DistributionSource.SPEED_FORM}


class OutputFormat(models.TextChoices):
    CSV = 'csv', _('CSV')
    JSON = 'json', _('JSON')


@dataclass(frozen=True)
class LambdaSweep:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ConfigError(f'Sweep step must be > 0, got {self.step}')
        if self.start > self.stop:
            raise ConfigError(f'Sweep must satisfy from <= to, got {self.start} > {self.stop}')
        if self.start < 0:
            raise ConfigError(f'Sweep must start at lambda >= 0, got {self.start}')

    def values(self) -> list[float]:
        # the small slack keeps `to` in the grid despite rounding of (to - from) / step
        count = math.floor((self.stop - self.start) / self.step + 1e-9) + 1
        return [self.start + k * self.step for k in range(count)]


@dataclass(frozen=True)
class OutputSpec:
    path: Path
    format: OutputFormat

    def sibling(self, suffix: str) -> Path:
        return self.path.with_name(f'{self.path.stem}{suffix}')


@dataclass(frozen=True, eq=False)
class RunConfig:
    sections: tuple[FundamentalDiagram, ...]
    output: OutputSpec
    arrival_rate: float | None = None
    sweep: LambdaSweep | None = None
    solver: SolverKind = SolverKind.BISECTION
    tol: float | None = None
    max_iter: int | None = None
    theta0: float | None = None
    form: DistributionSource = DistributionSource.FLOW_FORM
    points: int = 50
    document: Mapping[str, Any] = field(default_factory=dict)

    @property
    def digest(self) -> str:
        return config_digest(self.document)

    def arrival_rates(self) -> list[float]:
        return self.sweep.values() if self.sweep is not None else [self.arrival_rate]

    def require_sections(self, count: int) -> None:
        if len(self.sections) != count:
            raise ConfigError(f'This command needs exactly {count} section(s), got {len(self.sections)}')

    def require_single_rate(self) -> float:
        if self.arrival_rate is None:
            raise ConfigError('This command needs a single "lambda", not a sweep')
        return self.arrival_rate

    def tandem(self, arrival_rate: float) -> TandemConfig:
        self.require_sections(2)
        return TandemConfig(section1=self.sections[0], section2=self.sections[1], arrival_rate=arrival_rate)


def _optional_number(document: Mapping[str, Any], key: str, kind: type = float) -> Any:
    value = document.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int | float) or (kind is int and not float(value).is_integer()):
        raise ConfigError(f'"{key}" must be a {kind.__name__}, got {value!r}')
    return kind(value)


def _sweep(value: Any) -> LambdaSweep:
    if not isinstance(value, Mapping) or set(value) != {'from', 'to', 'step'}:
        raise ConfigError('"lambda_sweep" must be an object with "from", "to" and "step"')
    start, stop, step = (_optional_number(value, key) for key in ('from', 'to', 'step'))
    if None in (start, stop, step):
        raise ConfigError('"lambda_sweep" bounds and step must be numbers')
    return LambdaSweep(start=start, stop=stop, step=step)


def _output(value: Any) -> OutputSpec:
    if not isinstance(value, Mapping) or not isinstance(value.get('path'), str):
        raise ConfigError('"output" must be an object with a "path" string')
    try:
        output_format = OutputFormat(value.get('format', OutputFormat.JSON.value))
    except ValueError as e:
        raise ConfigError(f'Unknown output format {value.get("format")!r}') from e
    return OutputSpec(path=Path(value['path']), format=output_format)


def _choice(document: Mapping[str, Any], key: str, choices: Mapping[str, Any], default: str) -> Any:
    value = document.get(key, default)
    if not isinstance(value, str) or value not in choices:
        raise ConfigError(f'"{key}" must be one of {", ".join(sorted(choices))}, got {value!r}')
    return choices[value]


def parse_run_config(document: Any) -> RunConfig:
    if not isinstance(document, Mapping):
        raise ConfigError('Run configuration must be a JSON object')
    unknown = set(document) - KNOWN_KEYS
    if unknown:
        raise ConfigError(f'Unknown configuration keys: {", ".join(sorted(unknown))}')
    sections = document.get('sections')
    if not isinstance(sections, list) or not 1 <= len(sections) <= 2:
        raise ConfigError('"sections" must be a list of one or two section descriptions')
    if ('lambda' in document) == ('lambda_sweep' in document):
        raise ConfigError('Give exactly one of "lambda" and "lambda_sweep"')

    arrival_rate = _optional_number(document, 'lambda')
    if arrival_rate is not None and arrival_rate < 0:
        raise ConfigError(f'"lambda" must be >= 0, got {arrival_rate}')
    points = _optional_number(document, 'points', int)
    if points is not None and points < 2:
        raise ConfigError('"points" must be at least 2')
    tol = _optional_number(document, 'tol')
    if tol is not None and not (math.isfinite(tol) and tol > 0):
        raise ConfigError(f'"tol" must be a finite number > 0, got {tol}')
    max_iter = _optional_number(document, 'max_iter', int)
    if max_iter is not None and max_iter < 1:
        raise ConfigError(f'"max_iter" must be at least 1, got {max_iter}')

    return RunConfig(
        sections=tuple(load_section(section) for section in sections),
        output=_output(document.get('output')),
        arrival_rate=arrival_rate,
        sweep=_sweep(document['lambda_sweep']) if 'lambda_sweep' in document else None,
        solver=_choice(document, 'solver', {kind.value: kind for kind in SolverKind}, SolverKind.BISECTION.value),
        tol=tol,
        max_iter=max_iter,
        theta0=_optional_number(document, 'theta0'),
        form=_choice(document, 'form', FORMS, 'flow'),
        points=50 if points is None else points,
        document=dict(document),
    )


def load_run_config(path: str | Path) -> RunConfig:
    try:
        document = json.loads(Path(path).read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise ConfigError(f'Configuration file {path} not found') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'Configuration file {path} is not valid JSON: {e}') from e
    return parse_run_config(document)
