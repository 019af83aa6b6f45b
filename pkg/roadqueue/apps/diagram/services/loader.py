from collections.abc import Mapping
from typing import Any

from apps.core.exceptions import ConfigError
from apps.diagram.entities import ExponentialShape, FundamentalDiagram, SectionParams, SpeedModel

__all__ = [
    'load_section',
    'dump_section',
]

REQUIRED_KEYS = ('length_km', 'free_speed_kmh', 'jam_density_veh_per_km')
OPTIONAL_KEYS = ('q_max_override_veh_per_h', 'model')


def _number(document: Mapping[str, Any], key: str) -> float:
    value = document[key]
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ConfigError(f'Section field "{key}" must be a number, got {value!r}')
    return float(value)


def _shape(model: Any) -> ExponentialShape | None:
    if model == SpeedModel.LINEAR.value:
        return None
    if isinstance(model, Mapping) and set(model) == {SpeedModel.EXPONENTIAL.value}:
        parameters = model[SpeedModel.EXPONENTIAL.value]
        if not isinstance(parameters, Mapping) or set(parameters) != {'beta', 'gamma'}:
            raise ConfigError('Exponential model needs exactly "beta" and "gamma"')
        return ExponentialShape(beta=_number(parameters, 'beta'), gamma=_number(parameters, 'gamma'))
    raise ConfigError(f'Unknown section model {model!r}')


def load_section(document: Any) -> FundamentalDiagram:
    """Build a diagram from its JSON description; value errors surface as DomainError."""
    if not isinstance(document, Mapping):
        raise ConfigError('Section description must be a JSON object')
    missing = [key for key in REQUIRED_KEYS if key not in document]
    if missing:
        raise ConfigError(f'Section description lacks {", ".join(missing)}')
    unknown = set(document) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ConfigError(f'Section description has unknown fields {", ".join(sorted(unknown))}')

    params = SectionParams(
        length=_number(document, 'length_km'),
        free_speed=_number(document, 'free_speed_kmh'),
        jam_density=_number(document, 'jam_density_veh_per_km'),
    )
    override = document.get('q_max_override_veh_per_h')
    return FundamentalDiagram(
        params=params,
        shape=_shape(document.get('model', SpeedModel.LINEAR.value)),
        q_max_override=None if override is None else _number(document, 'q_max_override_veh_per_h'),
    )


def dump_section(d: FundamentalDiagram) -> dict[str, Any]:
    document: dict[str, Any] = {
        'length_km': d.params.length,
        'free_speed_kmh': d.params.free_speed,
        'jam_density_veh_per_km': d.params.jam_density,
        'capacity': d.capacity,
        'q_max_veh_per_h': d.q_max,
    }
    if d.shape is None:
        document['model'] = SpeedModel.LINEAR.value
    else:
        document['model'] = {SpeedModel.EXPONENTIAL.value: {'beta': d.shape.beta, 'gamma': d.shape.gamma}}
    return document
