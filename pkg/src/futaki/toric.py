"""Toric blow-up models used to calibrate the adiabatic formulas.

``P^n`` with ``O(1)`` is the unit simplex. Blowing up the torus-fixed point
at vertex ``v`` and twisting ``pi^*O(r)`` by ``O(-b E)`` cuts the corner of
``r * simplex`` at depth ``b``. The exceptional divisor is ``P^(n-1)`` with
normal bundle ``O(-1)``, so ``E^n = (-1)^(n-1)`` and
``K_M . E^(n-1) = (n-1) E^n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .adiabatic import CoefficientFamily, ResolutionData, SingularPointData
from .characters import PolytopeSpec
from .engine import futaki
from .errors import InvalidInput
from .exact import AsymptoticExpansion, Polynomial, interpolate, ratio_expansion


def simplex_vertex(n: int, index: int) -> tuple[int, ...]:
    """Vertex ``index`` of the unit simplex: 0 is the origin, i is ``e_i``."""
    return tuple(1 if j == index - 1 else 0 for j in range(n))


@dataclass(frozen=True)
class BlowupModel:
    """``P^n`` blown up at simplex vertices ``cuts`` with depths ``b_v``.

    ``weights`` and ``shift`` describe the action on ``(P^n, O(1))``; the
    polytope of ``L_r`` carries the linearization ``r * shift``.
    """

    n: int
    weights: tuple[int, ...]
    cuts: Mapping[int, int]
    shift: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "cuts", dict(sorted(self.cuts.items())))
        if len(self.weights) != self.n:
            raise InvalidInput(f"need {self.n} weights")
        for v, b in self.cuts.items():
            if not 0 <= v <= self.n or not isinstance(b, int) or b < 0:
                raise InvalidInput(f"bad cut {v}: {b}")

    def min_r(self) -> int:
        """Smallest r for which every cut is a proper truncation."""
        depths = sorted(self.cuts.values(), reverse=True) + [0, 0]
        return depths[0] + depths[1] + 1

    def polytope(self, r: int) -> PolytopeSpec:
        if self.cuts and r < self.min_r():
            raise InvalidInput(f"r = {r} too small for cuts {dict(self.cuts)}")
        corners = [tuple(r * x for x in simplex_vertex(self.n, i)) for i in range(self.n + 1)]
        verts: list[tuple[int, ...]] = []
        for i, v in enumerate(corners):
            b = self.cuts.get(i, 0)
            if b == 0:
                verts.append(v)
                continue
            for j, w in enumerate(corners):
                if j != i:
                    verts.append(tuple(a + b * (c - a) // r for a, c in zip(v, w)))
        return PolytopeSpec(self.n, tuple(verts), self.weights, r * self.shift)

    def base(self) -> PolytopeSpec:
        return BlowupModel(self.n, self.weights, {}, self.shift).polytope(1)

    def potential(self, vertex: int) -> Fraction:
        return Fraction(
            sum(a * x for a, x in zip(self.weights, simplex_vertex(self.n, vertex))) + self.shift
        )

    def resolution_data(self) -> ResolutionData:
        """Intersection data of the model in the form the adiabatic formulas take.

        ``delta_u_p`` is the value the ``r^0`` coefficient of ``b(r)`` forces.
        A corner cut changes the boundary weight by the cut facet minus the n
        removed facet pieces, ``-(n-2) b^n sum(alpha_local) / n!``, and
        ``sum(alpha_local) = -(n+1)(u(p) - ubar)``, giving
        ``(n-2)(n+1)(u(p) - ubar)``.
        """
        n = self.n
        base = futaki(self.base(), n)
        e_n = Fraction((-1) ** (n - 1))
        points = tuple(
            SingularPointData(
                label=f"v{v}",
                u_p=self.potential(v),
                b_p=Fraction(b),
                KM_Ep_nminus1=(n - 1) * e_n,
                Ep_n=e_n,
                delta_u_p=(n - 2) * (n + 1) * (self.potential(v) - base.F0),
            )
            for v, b in self.cuts.items()
            if b > 0
        )
        return ResolutionData(
            n=n,
            Ln=Fraction(1),
            FXL=base.F1,
            u_bar=base.F0,
            points=points,
            KX_Lnminus1=Fraction(-(n + 1)),
        )


def futaki_curve(model: BlowupModel, rs: Sequence[int]) -> dict[int, Fraction]:
    """Exact ``F(M, L_r)`` at each r."""
    return {r: futaki(model.polytope(r), model.n).F1 for r in rs}


def coefficient_polynomials(model: BlowupModel, rs: Sequence[int] | None = None) -> dict[str, Polynomial]:
    """Exact ``a(r), b(r), c(r), d(r)`` of the model by double interpolation.

    For each r the character polynomials are interpolated in k; their top
    coefficients are then interpolated in r. Two surplus values of r check
    that the result really is polynomial of degree ``<= n + 1``.
    """
    n = model.n
    if rs is None:
        start = model.min_r()
        rs = range(start, start + n + 4)
    rows = []
    for r in rs:
        res = futaki(model.polytope(r), n)
        rows.append(
            (
                r,
                res.weight_poly.coefficient(n + 1),
                res.weight_poly.coefficient(n),
                res.chi_poly.coefficient(n),
                res.chi_poly.coefficient(n - 1),
            )
        )
    names = ("a", "b", "c", "d")
    return {
        name: interpolate([(row[0], row[i + 1]) for row in rows], n + 1)
        for i, name in enumerate(names)
    }


def family_from_polynomials(polys: Mapping[str, Polynomial], n: int) -> CoefficientFamily:
    """Read the sparse family off dense polynomials, insisting on its shape."""
    shape = {"a": {n + 1, 1, 0}, "b": {n, 1, 0}, "c": {n, 0}, "d": {n - 1, 0}}
    for name, allowed in shape.items():
        extra = [i for i, c in enumerate(polys[name].coefficients) if c and i not in allowed]
        if extra:
            raise InvalidInput(f"{name}(r) has unexpected powers of r: {extra}")
    a, b, c, d = (polys[x] for x in "abcd")
    return CoefficientFamily(
        a0=a.coefficient(n + 1),
        b0=b.coefficient(n),
        c0=c.coefficient(n),
        d0=d.coefficient(n - 1),
        a_n=a.coefficient(1),
        a_n1=a.coefficient(0),
        b_n1=b.coefficient(1),
        b_n=b.coefficient(0),
        c_n=c.coefficient(0),
        d_n1=d.coefficient(0),
    )


def exact_adiabatic_expansion(model: BlowupModel, depth: int | None = None) -> AsymptoticExpansion:
    """Expansion of ``F(M, L_r)`` in r straight from the lattice-point data."""
    n = model.n
    polys = coefficient_polynomials(model)
    a, b, c, d = (polys[x] for x in "abcd")
    return ratio_expansion(
        b * c - a * d, c * c, depth=n if depth is None else depth, top=0, report=(0, 1 - n, -n)
    )
