"""Futaki invariant from exact character samples.

``w(k)/chi(k) = F0 k + F1 + O(1/k)`` and the Futaki invariant is ``F1``.
Both ``chi`` and ``w`` are polynomial in ``k`` for every spec class we
handle, so we interpolate them exactly and expand the ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .characters import CharacterSample, Spec, character, dimension
from .errors import InvalidInput
from .exact import AsymptoticExpansion, Polynomial, format_rational, interpolate, ratio_expansion


@dataclass(frozen=True)
class FutakiResult:
    F0: Fraction
    F1: Fraction
    deeper_terms: tuple[Fraction, ...]
    chi_poly: Polynomial
    weight_poly: Polynomial
    sample_range: tuple[int, int]
    expansion: AsymptoticExpansion

    def to_json(self) -> dict[str, Any]:
        return {
            "F0": format_rational(self.F0),
            "F1": format_rational(self.F1),
            "deeper_terms": [format_rational(c) for c in self.deeper_terms],
            "chi_poly": self.chi_poly.to_json(),
            "weight_poly": self.weight_poly.to_json(),
            "sample_range": list(self.sample_range),
        }


def futaki_from_samples(
    samples: Sequence[CharacterSample], n: int, depth: int | None = None
) -> FutakiResult:
    """Interpolate chi (deg <= n) and w (deg <= n+1) and expand w/chi.

    ``depth`` counts terms below ``k^0``; it defaults to ``n - 1`` so that
    the expansion carries ``n + 1`` terms in all.
    """
    if n < 1:
        raise InvalidInput("dimension n must be >= 1")
    if len(samples) < n + 3:
        raise InvalidInput(f"need at least {n + 3} samples for n = {n}, got {len(samples)}")
    ks = [s.k for s in samples]
    if len(set(ks)) != len(ks) or min(ks) < 1:
        raise InvalidInput("samples must sit at distinct k >= 1")
    depth = n - 1 if depth is None else depth

    chi = interpolate([(s.k, s.chi) for s in samples], n)
    weight = interpolate([(s.k, s.weight) for s in samples], n + 1)
    if chi.degree != n or chi.leading <= 0:
        raise InvalidInput(
            f"chi has degree {chi.degree}; the bundle is not big in dimension n = {n}"
        )
    expansion = ratio_expansion(weight, chi, depth=depth + 1, top=1, report=(1, 0))
    return FutakiResult(
        F0=expansion[1],
        F1=expansion[0],
        deeper_terms=tuple(expansion[-j] for j in range(1, depth + 1)),
        chi_poly=chi,
        weight_poly=weight,
        sample_range=(min(ks), max(ks)),
        expansion=expansion,
    )


def sample(spec: Spec, ks: Sequence[int], power: int = 1) -> list[CharacterSample]:
    """Samples of ``B^power`` at the given k, re-indexed by k."""
    if power < 1:
        raise InvalidInput("power must be >= 1")
    out = []
    for k in ks:
        s = character(spec, power * k)
        out.append(CharacterSample(k, s.chi, s.weight))
    return out


def futaki(
    spec: Spec, n: int | None = None, power: int = 1, depth: int | None = None
) -> FutakiResult:
    """Futaki invariant of the spec's polarization (or of its ``power``-th power)."""
    n = dimension(spec) if n is None else n
    return futaki_from_samples(sample(spec, range(1, n + 5), power), n, depth)
