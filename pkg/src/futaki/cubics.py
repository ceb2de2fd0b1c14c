"""K-polystable cubic threefolds with a C*-action, and instability of their
adiabatic resolutions.

Two models are built in:

* ``F_Delta = x0 x1 x2 + x3^3 + x4^3``: three D4 points at the first three
  coordinate points; actions ``diag(t^a0, t^a1, t^a2, 1, 1)``, ``a0+a1+a2 = 0``.
* ``F_AB = A x2^3 + x0 x3^2 + x1^2 x4 - x0 x2 x4 + B x1 x2 x3``, ``beta =
  4A/B^2 != 1``: A5 points at ``p0`` and ``p4`` (plus an A1 point at ``p2``
  when ``beta = 0``); actions are coverings ``c`` of ``diag(t^-2, ..., t^2)``.

In both cases ``L^3 = 3``, ``ubar = 0`` and ``F(X, L) = 0``, so at order
``r^-2`` the Futaki invariant of ``L_r`` is ``-(1/2) sum u(p) K_M.(b_p E_p)^2``
with ``u(p)`` the Fubini-Study potential at the point. For ``F_AB`` that is
``c (v0 - v4)`` where ``v_j = K_M.(b_j E_j)^2``; the ``p2`` entry always has
potential 0 and drops out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .adiabatic import ResolutionData, SingularPointData, corollary_leading
from .characters import AmbientSpec, HypersurfaceSpec
from .engine import FutakiResult, futaki
from .errors import ConsistencyFailure, IncompleteInput, InvalidInput
from .exact import format_rational, to_rational

UNSTABLE = "UNSTABLE"
INCONCLUSIVE = "INCONCLUSIVE-AT-THIS-ORDER"
ALPHA_BOUND = 2


@dataclass(frozen=True)
class CubicPoint:
    label: str
    coordinates: tuple[int, ...]
    singularity_type: str
    u_value_formula: str


@dataclass(frozen=True)
class CubicModel:
    id: str
    singular_points: tuple[CubicPoint, ...]
    action_template: str
    beta: Fraction | None = None
    L3: Fraction = Fraction(3)
    u_bar: Fraction = Fraction(0)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.singular_points]


def _coord(i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(5))


def cubic_model(model_id: str, beta: Any = None) -> CubicModel:
    if model_id == "F_Delta":
        if beta is not None:
            raise InvalidInput("beta applies to F_AB only")
        pts = tuple(CubicPoint(f"p{j}", _coord(j), "D4", f"alpha_{j}") for j in range(3))
        return CubicModel(
            "F_Delta",
            pts,
            "diag(t^a0, t^a1, t^a2, 1, 1) with a0 + a1 + a2 = 0, not all zero",
        )
    if model_id == "F_AB":
        beta = Fraction(0) if beta is None else to_rational(beta)
        if beta == 1:
            raise InvalidInput("beta = 1 has a curve of singularities; not an isolated case")
        pts = [CubicPoint("p0", _coord(0), "A5", "-2c"), CubicPoint("p4", _coord(4), "A5", "2c")]
        if beta == 0:
            pts.insert(1, CubicPoint("p2", _coord(2), "A1", "0"))
        return CubicModel("F_AB", tuple(pts), "coverings diag(t^-2c, t^-c, 1, t^c, t^2c), c != 0", beta)
    raise InvalidInput(f"unknown cubic model {model_id!r}; expected F_Delta or F_AB")


def fs_potential(weights: Sequence[int], coordinates: Sequence[int]) -> Fraction:
    """``sum w_i |x_i|^2 / |x|^2`` at a point with integer coordinates."""
    norm = sum(x * x for x in coordinates)
    return Fraction(sum(w * x * x for w, x in zip(weights, coordinates)), norm)


def make_action(model: CubicModel, params: Sequence[int]) -> tuple[HypersurfaceSpec, dict[str, Fraction]]:
    params = tuple(params)
    if any(not isinstance(p, int) or isinstance(p, bool) for p in params):
        raise InvalidInput("action parameters must be integers")
    if model.id == "F_Delta":
        if len(params) != 3 or sum(params) != 0 or not any(params):
            raise InvalidInput(
                f"F_Delta needs three integers summing to 0, not all zero; got {list(params)}"
            )
        weights = params + (0, 0)
    else:
        if len(params) != 1 or params[0] == 0:
            raise InvalidInput(f"F_AB needs one nonzero covering multiplier; got {list(params)}")
        c = params[0]
        weights = tuple(c * w for w in (-2, -1, 0, 1, 2))
    spec = HypersurfaceSpec(AmbientSpec(4, weights), 3, 0)
    u = {p.label: fs_potential(weights, p.coordinates) for p in model.singular_points}
    return spec, u


def verify_polystable_futaki(model: CubicModel, params: Sequence[int]) -> FutakiResult:
    spec, _ = make_action(model, params)
    result = futaki(spec, 3)
    if result.F0 != 0 or result.F1 != 0:
        raise ConsistencyFailure(
            f"{model.id} with action {list(params)}: expected F0 = F1 = 0, "
            f"got F0 = {result.F0}, F1 = {result.F1}"
        )
    return result


@dataclass(frozen=True)
class PointNumbers:
    b: Fraction
    KM_E2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", to_rational(self.b))
        object.__setattr__(self, "KM_E2", to_rational(self.KM_E2))
        if self.b <= 0:
            raise InvalidInput("b must be positive")

    @property
    def value(self) -> Fraction:
        """``K_M . (b E)^2``."""
        return self.b**2 * self.KM_E2


@dataclass(frozen=True)
class ResolutionNumbers:
    entries: Mapping[str, PointNumbers]

    @classmethod
    def of(cls, **entries: tuple[Any, Any]) -> ResolutionNumbers:
        return cls({k: PointNumbers(*v) for k, v in entries.items()})

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ResolutionNumbers:
        if not isinstance(data, Mapping):
            raise InvalidInput("resolution numbers must be an object keyed by point label")
        out = {}
        for label, raw in data.items():
            if not isinstance(raw, Mapping) or "b" not in raw or "KM_E2" not in raw:
                raise IncompleteInput(f"point {label!r} needs both 'b' and 'KM_E2'")
            out[str(label)] = PointNumbers(to_rational(raw["b"]), to_rational(raw["KM_E2"]))
        return cls(out)

    def check(self, model: CubicModel) -> None:
        missing = [l for l in model.labels if l not in self.entries]
        if missing:
            raise IncompleteInput(f"{model.id}: missing resolution numbers for {missing}")
        unknown = [l for l in self.entries if l not in model.labels]
        if unknown:
            raise InvalidInput(f"{model.id} has no singular points {unknown}")


@dataclass(frozen=True)
class Report:
    model: str
    verdict: str
    coefficient: Fraction
    witness_alpha: tuple[int, ...] | None
    values: Mapping[str, Fraction]
    order: str = "r^-2"

    def to_json(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "verdict": self.verdict,
            "coefficient": format_rational(self.coefficient),
            "witness_alpha": None if self.witness_alpha is None else list(self.witness_alpha),
            "order": self.order,
            "values": {k: format_rational(v) for k, v in self.values.items()},
        }


def resolution_data(model: CubicModel, nums: ResolutionNumbers, params: Sequence[int]) -> ResolutionData:
    nums.check(model)
    _, u = make_action(model, params)
    points = tuple(
        SingularPointData(label, u[label], nums.entries[label].b, nums.entries[label].KM_E2)
        for label in model.labels
    )
    return ResolutionData(n=3, Ln=model.L3, FXL=Fraction(0), u_bar=model.u_bar, points=points)


def leading_coefficient(model: CubicModel, nums: ResolutionNumbers, params: Sequence[int]) -> Fraction:
    return corollary_leading(resolution_data(model, nums, params))


def trace_free_alphas(bound: int = ALPHA_BOUND) -> list[tuple[int, int, int]]:
    return [
        (a0, a1, -a0 - a1)
        for a0, a1 in itertools.product(range(-bound, bound + 1), repeat=2)
        if abs(a0 + a1) <= bound and (a0, a1) != (0, 0)
    ]


def instability_report(
    model: CubicModel, nums: ResolutionNumbers, params: Sequence[int] | None = None
) -> Report:
    nums.check(model)
    values = {label: nums.entries[label].value for label in model.labels}
    if params is not None:
        candidates = [tuple(params)]
    elif model.id == "F_Delta":
        candidates = trace_free_alphas()
    else:
        candidates = [(1,)]

    best: tuple[Fraction, tuple[int, ...]] | None = None
    for alpha in candidates:
        coef = leading_coefficient(model, nums, alpha)
        if best is None or abs(coef) > abs(best[0]):
            best = (coef, alpha)
    assert best is not None
    coef, alpha = best
    if coef != 0:
        return Report(model.id, UNSTABLE, coef, alpha, values)
    return Report(model.id, INCONCLUSIVE, Fraction(0), None, values)
