"""Adiabatic expansion of ``F(M, L_r)`` for resolutions of isolated singularities.

``L_r = pi^* L^r (x) O(-sum_p b_p E_p)``. The Futaki invariant is
``b(r)/c(r) - a(r) d(r)/c(r)^2`` for four polynomials in ``r`` whose
coefficients carry the geometry; expanding gives terms at ``r^0``,
``r^(1-n)`` and ``r^(-n)``.

Conventions (all classes integral, no 2*pi factors):

* The closed (1,1)-form ``xi_p`` supported near ``E_p`` must represent
  ``c_1(O(-E_p))`` for ``r pi^*omega + sum b_p xi_p`` to represent ``L_r``
  and for ``xi_p`` to be positive along ``E_p``. Hence in terms of the
  intersection numbers of the divisor ``E_p`` itself::

      int xi_p^n            = (-1)^n E_p^n
      int xi_p^(n-1) ^ Ric  = (-1)^n K_M . E_p^(n-1)

  with ``[Ric] = c_1(-K_M)``. For odd ``n`` (cubic threefolds) the signs
  of the leading correction agree with the familiar form
  ``-(n / 2L^n) sum (u(p) - ubar) K_M . (b_p E_p)^(n-1)``; for even ``n``
  they do not, and the toric blow-up of the plane decides in favour of the
  form used here.
* ``sbar = -n K_X . L^(n-1) / L^n`` is the average scalar curvature. With
  this normalization the closed form of the ``r^-n`` term agrees exactly with
  the expansion of ``b/c - a d / c^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Mapping

from .errors import IncompleteInput, InvalidInput
from .exact import (
    AsymptoticExpansion,
    Polynomial,
    format_rational,
    make_expansion,
    ratio_expansion,
    to_rational,
)


@dataclass(frozen=True)
class SingularPointData:
    label: str
    u_p: Fraction
    b_p: Fraction
    KM_Ep_nminus1: Fraction
    Ep_n: Fraction | None = None
    delta_u_p: Fraction | None = None

    def __post_init__(self) -> None:
        for name in ("u_p", "b_p", "KM_Ep_nminus1"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        for name in ("Ep_n", "delta_u_p"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, to_rational(value))
        if self.b_p <= 0:
            raise InvalidInput(f"b_p must be positive at point {self.label!r}")


@dataclass(frozen=True)
class ResolutionData:
    n: int
    Ln: Fraction
    FXL: Fraction
    u_bar: Fraction
    points: tuple[SingularPointData, ...]
    KX_Lnminus1: Fraction | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidInput("resolution dimension n must be an integer >= 2")
        for name in ("Ln", "FXL", "u_bar"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.KX_Lnminus1 is not None:
            object.__setattr__(self, "KX_Lnminus1", to_rational(self.KX_Lnminus1))
        object.__setattr__(self, "points", tuple(self.points))
        if self.Ln <= 0:
            raise InvalidInput("L^n must be positive")
        if not self.points:
            raise InvalidInput("at least one singular point is required")

    def scale_b(self, t: Fraction) -> ResolutionData:
        pts = tuple(
            SingularPointData(p.label, p.u_p, p.b_p * t, p.KM_Ep_nminus1, p.Ep_n, p.delta_u_p)
            for p in self.points
        )
        return ResolutionData(self.n, self.Ln, self.FXL, self.u_bar, pts, self.KX_Lnminus1)


@dataclass(frozen=True)
class CoefficientFamily:
    """Sparse coefficients of ``a(r), b(r), c(r), d(r)``.

    ``a = a0 r^(n+1) + a_n r + a_n1``, ``b = b0 r^n + b_n1 r + b_n``,
    ``c = c0 r^n + c_n``, ``d = d0 r^(n-1) + d_n1``; the suffix ``n1`` reads
    ``n+1`` for ``a`` and ``n-1`` for ``b`` and ``d``.
    """

    a0: Fraction
    b0: Fraction
    c0: Fraction
    d0: Fraction
    a_n: Fraction = Fraction(0)
    a_n1: Fraction = Fraction(0)
    b_n1: Fraction = Fraction(0)
    b_n: Fraction = Fraction(0)
    c_n: Fraction = Fraction(0)
    d_n1: Fraction = Fraction(0)

    def polynomials(self, n: int) -> dict[str, Polynomial]:
        return {
            "a": Polynomial.monomial(n + 1, self.a0) + Polynomial.monomial(1, self.a_n) + self.a_n1,
            "b": Polynomial.monomial(n, self.b0) + Polynomial.monomial(1, self.b_n1) + self.b_n,
            "c": Polynomial.monomial(n, self.c0) + self.c_n,
            "d": Polynomial.monomial(n - 1, self.d0) + self.d_n1,
        }


@dataclass(frozen=True)
class MetricInputs:
    a0: Fraction
    b0: Fraction
    d0: Fraction
    up_integrals: Mapping[str, Fraction] = field(default_factory=dict)


def xi_power(point: SingularPointData, n: int) -> Fraction:
    """``int xi_p^n`` from the self-intersection ``E_p^n``."""
    if point.Ep_n is None:
        raise IncompleteInput(f"Ep_n missing at point {point.label!r}")
    return (-1) ** n * point.Ep_n


def ricci_pairing(point: SingularPointData, n: int) -> Fraction:
    """``int xi_p^(n-1) ^ Ric`` from ``K_M . E_p^(n-1)``."""
    return (-1) ** n * point.KM_Ep_nminus1


def expansion_from_abcd(fam: CoefficientFamily, n: int) -> AsymptoticExpansion:
    if fam.c0 == 0:
        raise InvalidInput("c0 must be nonzero")
    c0 = fam.c0
    lead = fam.b0 / c0 - fam.a0 * fam.d0 / c0**2
    first = fam.b_n1 / c0 - fam.a0 * fam.d_n1 / c0**2
    second = (
        fam.b_n / c0
        + (fam.d0 / c0) * (fam.a0 * fam.c_n - c0 * fam.a_n) / c0**2
        - (fam.c_n / c0) * lead
    )
    return make_expansion({0: lead, 1 - n: first, -n: second}, -n, 0, report=(0, 1 - n, -n))


def expansion_from_polynomials(fam: CoefficientFamily, n: int) -> AsymptoticExpansion:
    """Same expansion read off the dense ratio ``(b c - a d) / c^2``."""
    polys = fam.polynomials(n)
    a, b, c, d = polys["a"], polys["b"], polys["c"], polys["d"]
    return ratio_expansion(b * c - a * d, c * c, depth=n, top=0, report=(0, 1 - n, -n))


def default_metric_inputs(data: ResolutionData) -> MetricInputs:
    """``a0, b0, d0`` consistent with ``ubar``, ``F(X,L)`` and ``K_X . L^(n-1)``."""
    if data.KX_Lnminus1 is None:
        raise IncompleteInput("KX_Lnminus1 is required to derive d0")
    n = data.n
    c0 = data.Ln / factorial(n)
    a0 = data.u_bar * c0
    d0 = -data.KX_Lnminus1 / (2 * factorial(n - 1))
    b0 = data.FXL * c0 + a0 * d0 / c0
    return MetricInputs(a0, b0, d0)


def build_coefficients(data: ResolutionData, metric: MetricInputs) -> CoefficientFamily:
    n = data.n
    nf, n1f = factorial(n), factorial(n - 1)
    a_n = a_n1 = b_n1 = b_n = c_n = d_n1 = Fraction(0)
    for p in data.points:
        if p.delta_u_p is None:
            raise IncompleteInput(f"delta_u_p missing at point {p.label!r}")
        vol = xi_power(p, n) / nf
        ric = ricci_pairing(p, n) / (2 * n1f)
        a_n += p.b_p**n * p.u_p * vol
        a_n1 += p.b_p ** (n + 1) * to_rational(metric.up_integrals.get(p.label, 0))
        c_n += p.b_p**n * vol
        b_n1 += p.u_p * p.b_p ** (n - 1) * ric
        b_n -= Fraction(1, 2) * p.delta_u_p * p.b_p**n * vol
        d_n1 += p.b_p ** (n - 1) * ric
    return CoefficientFamily(
        a0=metric.a0,
        b0=metric.b0,
        c0=data.Ln / nf,
        d0=metric.d0,
        a_n=a_n,
        a_n1=a_n1,
        b_n1=b_n1,
        b_n=b_n,
        c_n=c_n,
        d_n1=d_n1,
    )


def average_scalar_curvature(data: ResolutionData) -> Fraction:
    if data.KX_Lnminus1 is None:
        raise IncompleteInput("KX_Lnminus1 is required for the average scalar curvature")
    return -data.n * data.KX_Lnminus1 / data.Ln


def leading_correction(data: ResolutionData) -> Fraction:
    n = data.n
    total = sum(
        ((p.u_p - data.u_bar) * p.b_p ** (n - 1) * ricci_pairing(p, n) for p in data.points),
        Fraction(0),
    )
    return Fraction(n, 2) * total / data.Ln


def theorem_expansion(data: ResolutionData) -> AsymptoticExpansion:
    """Terms of ``F(M, L_r)`` at ``r^0``, ``r^(1-n)`` and ``r^(-n)``."""
    n = data.n
    sbar = average_scalar_curvature(data)
    second = Fraction(0)
    for p in data.points:
        if p.delta_u_p is None:
            raise IncompleteInput(f"delta_u_p missing at point {p.label!r}")
        second += (sbar * (p.u_p - data.u_bar) + p.delta_u_p + 2 * data.FXL) * p.b_p**n * xi_power(p, n)
    second = -second / (2 * data.Ln)
    return make_expansion(
        {0: data.FXL, 1 - n: leading_correction(data), -n: second},
        -n,
        0,
        report=(0, 1 - n, -n),
    )


def corollary_leading(data: ResolutionData) -> Fraction:
    """Coefficient of ``r^(1-n)``:
    ``-(n / 2L^n) sum_p (u(p) - ubar) K_M . (-b_p E_p)^(n-1)``.
    """
    n = data.n
    total = sum(
        (
            (p.u_p - data.u_bar) * (-p.b_p) ** (n - 1) * p.KM_Ep_nminus1
            for p in data.points
        ),
        Fraction(0),
    )
    return -Fraction(n, 2) * total / data.Ln


# -- JSON --------------------------------------------------------------------


def resolution_from_json(data: Mapping[str, Any]) -> ResolutionData:
    if not isinstance(data, Mapping):
        raise InvalidInput("resolution data must be a JSON object")
    try:
        points = []
        for i, raw in enumerate(data["points"]):
            if not isinstance(raw, Mapping):
                raise InvalidInput("each point must be a JSON object")
            points.append(
                SingularPointData(
                    label=str(raw.get("label", f"p{i}")),
                    u_p=to_rational(raw["u_p"]),
                    b_p=to_rational(raw["b_p"]),
                    KM_Ep_nminus1=to_rational(raw["KM_Ep_nminus1"]),
                    Ep_n=_opt(raw.get("Ep_n")),
                    delta_u_p=_opt(raw.get("delta_u_p")),
                )
            )
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidInput("n must be an integer")
        return ResolutionData(
            n=n,
            Ln=to_rational(data["Ln"]),
            FXL=to_rational(data.get("FXL", 0)),
            u_bar=to_rational(data.get("u_bar", 0)),
            points=tuple(points),
            KX_Lnminus1=_opt(data.get("KX_Lnminus1")),
        )
    except KeyError as exc:
        raise InvalidInput(f"resolution data missing field {exc.args[0]!r}") from exc


def resolution_to_json(data: ResolutionData) -> dict[str, Any]:
    def fmt(x: Fraction | None) -> str | None:
        return None if x is None else format_rational(x)

    out: dict[str, Any] = {
        "n": data.n,
        "Ln": fmt(data.Ln),
        "FXL": fmt(data.FXL),
        "u_bar": fmt(data.u_bar),
        "points": [
            {
                "label": p.label,
                "u_p": fmt(p.u_p),
                "b_p": fmt(p.b_p),
                "KM_Ep_nminus1": fmt(p.KM_Ep_nminus1),
                "Ep_n": fmt(p.Ep_n),
                "delta_u_p": fmt(p.delta_u_p),
            }
            for p in data.points
        ],
    }
    if data.KX_Lnminus1 is not None:
        out["KX_Lnminus1"] = fmt(data.KX_Lnminus1)
    return out


def _opt(value: Any) -> Fraction | None:
    return None if value is None else to_rational(value)

