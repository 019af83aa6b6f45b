import numpy as np

from apps.core.exceptions import ContractError
from apps.diagram.entities import FundamentalDiagram
from apps.diagram.services.laws import check_count, demand, demand_profile, flow_profile, quadratic_flow
from apps.section.entities import OutflowKind

__all__ = [
    'outflow',
    'outflow_profile',
]


def _check_contract(kind: OutflowKind, supply_downstream: float | None) -> OutflowKind:
    kind = OutflowKind(kind)
    if (kind == OutflowKind.CONSTRAINED) != (supply_downstream is not None):
        raise ContractError('Downstream supply is given exactly for constrained sections')
    return kind


def outflow(kind: OutflowKind, n_self: int, d_self: FundamentalDiagram, supply_downstream: float | None = None) -> float:
    kind = _check_contract(kind, supply_downstream)
    check_count(n_self, 0, d_self.capacity, name='n_self')
    if kind == OutflowKind.OPEN:
        return demand(n_self, d_self)
    if kind == OutflowKind.CONSTRAINED:
        return min(demand(n_self, d_self), supply_downstream)
    # min(demand, supply) of the same section is the flow itself
    return quadratic_flow(n_self, d_self)


def outflow_profile(kind: OutflowKind, d_self: FundamentalDiagram, supply_downstream: float | None = None) -> np.ndarray:
    """Outflow for every occupancy 0..c."""
    kind = _check_contract(kind, supply_downstream)
    if kind == OutflowKind.OPEN:
        return demand_profile(d_self)
    if kind == OutflowKind.CONSTRAINED:
        return np.minimum(demand_profile(d_self), supply_downstream)
    d_self.require_linear()
    return flow_profile(d_self)
