"""Equivariant Euler characteristics and total weights.

Three variety classes are supported, each carrying a diagonal C*-action:

* projective space ``P^d`` with weight vector ``alpha`` on the coordinates,
* an invariant hypersurface ``{F = 0} ⊂ P^d`` of degree ``m`` whose defining
  polynomial has weight ``w_F``,
* the toric variety of a lattice polytope, the action given by a one
  parameter subgroup ``alpha`` of the torus.

Sign convention, fixed once for all: the monomial section ``x^I`` of
``O(k)`` has weight ``<alpha, I> + lambda * k``, where ``lambda`` is the
linearization shift. For the hypersurface, ``chi`` and ``w`` are those of the
virtual representation of the ideal-sheaf sequence, exact for every ``k >= 0``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import InvalidInput, ResourceLimit

DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class AmbientSpec:
    d: int
    weights: tuple[int, ...]
    linearization_shift: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _int_tuple(self.weights, "weights"))
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidInput(f"ambient dimension must be an integer >= 1, got {self.d!r}")
        if len(self.weights) != self.d + 1:
            raise InvalidInput(
                f"need {self.d + 1} weights for P^{self.d}, got {len(self.weights)}"
            )
        _check_int(self.linearization_shift, "linearization_shift")

    def with_shift(self, shift: int) -> AmbientSpec:
        return AmbientSpec(self.d, self.weights, shift)


@dataclass(frozen=True)
class HypersurfaceSpec:
    ambient: AmbientSpec
    degree: int
    defining_weight: int = 0
    # exponent vector of one monomial of the right degree and weight; the
    # brute-force oracle uses it as a leading monomial of F
    monomial: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.ambient, AmbientSpec):
            raise InvalidInput("hypersurface ambient must be an AmbientSpec")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise InvalidInput(f"hypersurface degree must be >= 1, got {self.degree!r}")
        _check_int(self.defining_weight, "defining_weight")
        mono = _find_monomial(self.ambient.weights, self.degree, self.defining_weight)
        if mono is None:
            raise InvalidInput(
                f"no monomial of degree {self.degree} has weight {self.defining_weight} "
                f"under weights {list(self.ambient.weights)}; no invariant F can exist"
            )
        object.__setattr__(self, "monomial", mono)

    @property
    def linearization_shift(self) -> int:
        return self.ambient.linearization_shift

    def with_shift(self, shift: int) -> HypersurfaceSpec:
        return HypersurfaceSpec(self.ambient.with_shift(shift), self.degree, self.defining_weight)


@dataclass(frozen=True)
class PolytopeSpec:
    n: int
    vertices: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    linearization_shift: int = 0
    facets: tuple[tuple[tuple[int, ...], int], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput(f"polytope dimension must be >= 1, got {self.n!r}")
        verts = tuple(sorted({_int_tuple(v, "vertex") for v in self.vertices}))
        if any(len(v) != self.n for v in verts):
            raise InvalidInput(f"every vertex must have {self.n} integer coordinates")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "weights", _int_tuple(self.weights, "weights"))
        if len(self.weights) != self.n:
            raise InvalidInput(f"need {self.n} weights, got {len(self.weights)}")
        _check_int(self.linearization_shift, "linearization_shift")
        object.__setattr__(self, "facets", _facets(verts, self.n))

    def with_shift(self, shift: int) -> PolytopeSpec:
        return PolytopeSpec(self.n, self.vertices, self.weights, shift)

    def scaled(self, m: int) -> PolytopeSpec:
        """The polytope of ``B^m``, with the linearization raised to the m-th power."""
        return PolytopeSpec(
            self.n,
            tuple(tuple(m * x for x in v) for v in self.vertices),
            self.weights,
            m * self.linearization_shift,
        )

    def contains(self, point: Sequence[int], k: int = 1) -> bool:
        return all(
            sum(a * x for a, x in zip(normal, point)) <= k * c for normal, c in self.facets
        )


Spec = Union[AmbientSpec, HypersurfaceSpec, PolytopeSpec]


@dataclass(frozen=True)
class CharacterSample:
    k: int
    chi: Fraction
    weight: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", Fraction(self.chi))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.chi.denominator != 1 or self.weight.denominator != 1:
            raise InvalidInput("character samples must be integers")


def dimension(spec: Spec) -> int:
    if isinstance(spec, AmbientSpec):
        return spec.d
    if isinstance(spec, HypersurfaceSpec):
        return spec.ambient.d - 1
    if isinstance(spec, PolytopeSpec):
        return spec.n
    raise InvalidInput(f"unknown spec type {type(spec).__name__}")


# -- closed forms -----------------------------------------------------------


def _ambient_counts(d: int, weight_sum: int, k: int) -> tuple[int, int]:
    # sum over degree-k monomials of <alpha, I> is weight_sum * C(k+d, d+1)
    if k < 0:
        return 0, 0
    return math.comb(k + d, d), weight_sum * math.comb(k + d, d + 1)


def ambient_character(spec: AmbientSpec, k: int) -> CharacterSample:
    _check_k(k)
    chi, w = _ambient_counts(spec.d, sum(spec.weights), k)
    return CharacterSample(k, chi, w + spec.linearization_shift * k * chi)


def hypersurface_character(spec: HypersurfaceSpec, k: int) -> CharacterSample:
    _check_k(k)
    amb = spec.ambient
    s = sum(amb.weights)
    chi_k, w_k = _ambient_counts(amb.d, s, k)
    chi_km, w_km = _ambient_counts(amb.d, s, k - spec.degree)
    chi = chi_k - chi_km
    w = w_k - (w_km + spec.defining_weight * chi_km)
    return CharacterSample(k, chi, w + amb.linearization_shift * k * chi)


def polytope_character(spec: PolytopeSpec, k: int) -> CharacterSample:
    _check_k(k)
    chi, w = _polytope_sums(spec, k)
    return CharacterSample(k, chi, w + spec.linearization_shift * k * chi)


def character(spec: Spec, k: int) -> CharacterSample:
    if isinstance(spec, AmbientSpec):
        return ambient_character(spec, k)
    if isinstance(spec, HypersurfaceSpec):
        return hypersurface_character(spec, k)
    if isinstance(spec, PolytopeSpec):
        return polytope_character(spec, k)
    raise InvalidInput(f"unknown spec type {type(spec).__name__}")


# -- brute-force oracle ------------------------------------------------------


def enumeration_cap() -> int:
    raw = os.environ.get("FUTAKI_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidInput(f"FUTAKI_ENUM_CAP is not an integer: {raw!r}") from exc
    if cap < 1:
        raise InvalidInput("FUTAKI_ENUM_CAP must be positive")
    return cap


def monomials(nvars: int, k: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of the degree-k monomials in ``nvars`` variables."""
    if nvars == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in monomials(nvars - 1, k - first):
            yield (first,) + rest


def brute_force_character(
    spec: AmbientSpec | HypersurfaceSpec, k: int, cap: int | None = None
) -> CharacterSample:
    """Character by explicit enumeration of a monomial basis.

    For a hypersurface the basis is the standard monomials of degree k not
    divisible by a fixed monomial ``x^J`` of degree m and weight ``w_F``: the
    monomial ideal ``(x^J)`` has the same graded equivariant character as
    ``(F)``, so this is independent of the ideal-sequence closed form.
    """
    _check_k(k)
    if not isinstance(spec, (AmbientSpec, HypersurfaceSpec)):
        raise InvalidInput("brute force supports ambient and hypersurface specs only")
    amb = spec if isinstance(spec, AmbientSpec) else spec.ambient
    cap = enumeration_cap() if cap is None else cap
    total = math.comb(k + amb.d, amb.d)
    if total > cap:
        raise ResourceLimit(f"{total} exponent vectors exceed the enumeration cap {cap}")
    divisor = spec.monomial if isinstance(spec, HypersurfaceSpec) else None
    alpha = amb.weights
    chi = w = 0
    for expo in monomials(amb.d + 1, k):
        if divisor is not None and all(e >= j for e, j in zip(expo, divisor)):
            continue
        chi += 1
        w += sum(a * e for a, e in zip(alpha, expo))
    return CharacterSample(k, chi, w + amb.linearization_shift * k * chi)


# -- polytope geometry -------------------------------------------------------


def _det(rows: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    m = [row[:] for row in rows]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for i in range(size - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, size) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[-1][-1]


def _rank(vectors: list[tuple[int, ...]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _facets(verts: tuple[tuple[int, ...], ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Primitive outward inequalities ``<a, x> <= c`` of conv(verts)."""
    base = verts[0]
    diffs = [tuple(x - y for x, y in zip(v, base)) for v in verts[1:]]
    if len(verts) < n + 1 or _rank(diffs) < n:
        raise InvalidInput("polytope is not full-dimensional")
    found: set[tuple[tuple[int, ...], int]] = set()
    for subset in itertools.combinations(verts, n):
        v0 = subset[0]
        spans = [[x - y for x, y in zip(v, v0)] for v in subset[1:]]
        normal = [
            (-1) ** i * _det([row[:i] + row[i + 1 :] for row in spans]) for i in range(n)
        ]
        if not any(normal):
            continue
        g = reduce(math.gcd, normal)
        normal = [a // g for a in normal]
        c = sum(a * x for a, x in zip(normal, v0))
        values = [sum(a * x for a, x in zip(normal, v)) for v in verts]
        if all(val <= c for val in values):
            found.add((tuple(normal), c))
        elif all(val >= c for val in values):
            found.add((tuple(-a for a in normal), -c))
    return tuple(sorted(found))


def _polytope_sums(spec: PolytopeSpec, k: int) -> tuple[int, int]:
    """Count and weight-sum of lattice points of kP.

    Scans the bounding box of the first n-1 coordinates and solves the facet
    inequalities for the interval of admissible last coordinates.
    """
    n = spec.n
    if k == 0:
        return 1, 0
    lows = [k * min(v[i] for v in spec.vertices) for i in range(n)]
    highs = [k * max(v[i] for v in spec.vertices) for i in range(n)]
    alpha = spec.weights

    extent = max(max(abs(x) for x in lows + highs), 1)
    box = math.prod(h - l + 1 for l, h in zip(lows, highs))
    dtype: Any = np.int64
    if box * extent * (max(map(abs, alpha), default=0) + 1) * n > 2**60:
        dtype = object

    if n == 1:
        prefix = np.zeros((1, 0), dtype=dtype)
    else:
        axes = [np.arange(l, h + 1, dtype=np.int64).astype(dtype) for l, h in zip(lows[:-1], highs[:-1])]
        grid = np.meshgrid(*axes, indexing="ij")
        prefix = np.stack([g.ravel() for g in grid], axis=1)

    count = prefix.shape[0]
    lo = np.full(count, lows[-1], dtype=np.int64).astype(dtype)
    hi = np.full(count, highs[-1], dtype=np.int64).astype(dtype)
    ok = np.ones(count, dtype=bool)
    for normal, c in spec.facets:
        head = np.asarray(normal[:-1], dtype=np.int64).astype(dtype)
        t = k * c - (prefix @ head if n > 1 else np.zeros(count, dtype=np.int64).astype(dtype))
        a = normal[-1]
        if a > 0:
            hi = np.minimum(hi, t // a)
        elif a < 0:
            lo = np.maximum(lo, -((-t) // a))
        else:
            ok &= t >= 0
    cnt = np.where(ok, hi - lo + 1, 0)
    cnt = np.where(cnt > 0, cnt, 0)
    sum_last = np.where(cnt > 0, (lo + hi) * cnt // 2, 0)
    chi = int(cnt.sum())
    w = int(alpha[-1]) * int(sum_last.sum())
    if n > 1:
        head_w = prefix @ np.asarray(alpha[:-1], dtype=np.int64).astype(dtype)
        w += int((cnt * head_w).sum())
    return chi, w


# -- JSON --------------------------------------------------------------------


def spec_from_json(data: Mapping[str, Any]) -> Spec:
    if not isinstance(data, Mapping):
        raise InvalidInput("spec must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "ambient":
            return AmbientSpec(
                _json_int(data["d"], "d"),
                tuple(data["weights"]),
                _json_int(data.get("linearization_shift", 0), "linearization_shift"),
            )
        if kind == "hypersurface":
            amb = data["ambient"]
            if not isinstance(amb, Mapping):
                raise InvalidInput("hypersurface 'ambient' must be an object")
            ambient = spec_from_json({"kind": "ambient", **amb})
            assert isinstance(ambient, AmbientSpec)
            return HypersurfaceSpec(
                ambient,
                _json_int(data["degree"], "degree"),
                _json_int(data.get("defining_weight", 0), "defining_weight"),
            )
        if kind == "polytope":
            return PolytopeSpec(
                _json_int(data["n"], "n"),
                tuple(tuple(v) for v in data["vertices"]),
                tuple(data["weights"]),
                _json_int(data.get("linearization_shift", 0), "linearization_shift"),
            )
    except KeyError as exc:
        raise InvalidInput(f"{kind} spec is missing field {exc.args[0]!r}") from exc
    except TypeError as exc:
        raise InvalidInput(f"malformed {kind} spec: {exc}") from exc
    raise InvalidInput(f"unknown spec kind {kind!r}; expected ambient, hypersurface or polytope")


def spec_to_json(spec: Spec) -> dict[str, Any]:
    if isinstance(spec, AmbientSpec):
        return {
            "kind": "ambient",
            "d": spec.d,
            "weights": list(spec.weights),
            "linearization_shift": spec.linearization_shift,
        }
    if isinstance(spec, HypersurfaceSpec):
        amb = spec_to_json(spec.ambient)
        del amb["kind"]
        return {
            "kind": "hypersurface",
            "ambient": amb,
            "degree": spec.degree,
            "defining_weight": spec.defining_weight,
        }
    return {
        "kind": "polytope",
        "n": spec.n,
        "vertices": [list(v) for v in spec.vertices],
        "weights": list(spec.weights),
        "linearization_shift": spec.linearization_shift,
    }


# -- helpers -----------------------------------------------------------------


def _find_monomial(weights: Sequence[int], degree: int, target: int) -> tuple[int, ...] | None:
    # reachable[s] = some exponent vector of the current degree with weight s
    reachable: dict[int, tuple[int, ...]] = {0: (0,) * len(weights)}
    for _ in range(degree):
        nxt: dict[int, tuple[int, ...]] = {}
        for s, expo in sorted(reachable.items()):
            for i, a in enumerate(weights):
                key = s + a
                if key not in nxt:
                    bumped = list(expo)
                    bumped[i] += 1
                    nxt[key] = tuple(bumped)
        reachable = nxt
    return reachable.get(target)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInput(f"k must be an integer >= 0, got {k!r}")


def _check_int(value: Any, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInput(f"{name} must be an integer, got {value!r}")


def _int_tuple(values: Any, name: str) -> tuple[int, ...]:
    try:
        out = tuple(values)
    except TypeError as exc:
        raise InvalidInput(f"{name} must be a list of integers") from exc
    for x in out:
        _check_int(x, name)
    return out


def _json_int(value: Any, name: str) -> int:
    _check_int(value, name)
    return value
