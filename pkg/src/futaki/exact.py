"""Exact rational arithmetic: univariate polynomials, interpolation and
asymptotic expansion of polynomial ratios.

Rationals are :class:`fractions.Fraction` throughout. They are always in
lowest terms with a positive denominator, which is exactly the invariant we
need, and their ``str`` is already the ``"p/q"`` wire format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DegreeOverflow, InvalidInput

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; refuse floats."""
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise InvalidInput(f"not an exact rational string: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational: {value!r}") from exc
    raise InvalidInput(f"not an exact rational: {value!r} ({type(value).__name__})")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [to_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coefficient: RationalLike = 1) -> Polynomial:
        return cls((0,) * degree + (to_rational(coefficient),))

    @classmethod
    def constant(cls, value: RationalLike) -> Polynomial:
        return cls((to_rational(value),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial | RationalLike) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Polynomial | RationalLike) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: RationalLike) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other: Polynomial | RationalLike) -> Polynomial:
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        result = Polynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def compose_scale(self, m: RationalLike) -> Polynomial:
        """Return ``k -> p(m k)``."""
        m = to_rational(m)
        return Polynomial(tuple(c * m**i for i, c in enumerate(self.coefficients)))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> Polynomial:
        return cls(tuple(to_rational(c) for c in data))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = [f"{c}*k^{i}" for i, c in enumerate(self.coefficients) if c]
        return "Polynomial(" + " + ".join(terms) + ")"


def _as_poly(value: Polynomial | RationalLike) -> Polynomial:
    return value if isinstance(value, Polynomial) else Polynomial.constant(value)


def interpolate(
    samples: Sequence[tuple[int, RationalLike]], max_degree: int
) -> Polynomial:
    """Newton divided-difference interpolation over the rationals.

    The first ``max_degree + 1`` samples determine the polynomial; every
    further sample must lie on it, otherwise :class:`DegreeOverflow` is raised.
    """
    if max_degree < 0:
        raise InvalidInput("max_degree must be >= 0")
    pts = [(to_rational(x), to_rational(y)) for x, y in samples]
    if len({x for x, _ in pts}) != len(pts):
        raise InvalidInput("duplicate abscissae in interpolation samples")
    if len(pts) < max_degree + 1:
        raise InvalidInput(
            f"need at least {max_degree + 1} samples for degree {max_degree}, got {len(pts)}"
        )
    base, extra = pts[: max_degree + 1], pts[max_degree + 1 :]

    xs = [x for x, _ in base]
    table = [y for _, y in base]
    newton = [table[0]]
    for level in range(1, len(base)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        newton.append(table[0])

    poly = Polynomial.constant(newton[-1])
    for i in range(len(newton) - 2, -1, -1):
        poly = poly * Polynomial((-xs[i], Fraction(1))) + newton[i]

    for x, y in extra:
        if poly(x) != y:
            raise DegreeOverflow(
                f"sample ({x}, {y}) is off the degree-{max_degree} interpolant "
                f"(value there {poly(x)})"
            )
    return poly


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Truncated expansion ``sum c_e x^e`` in descending exponents.

    ``terms`` holds the nonzero coefficients plus any zero coefficient the
    caller asked to have recorded. Every exponent at or above
    ``truncation_order`` is known; absent ones are zero.
    """

    terms: tuple[tuple[int, Fraction], ...]
    truncation_order: int
    top: int = field(default=0)

    def __post_init__(self) -> None:
        exps = [e for e, _ in self.terms]
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise InvalidInput("expansion exponents must be strictly decreasing")
        if exps and (exps[-1] < self.truncation_order or exps[0] > self.top):
            raise InvalidInput("expansion term outside [truncation_order, top]")

    def coefficient(self, exponent: int) -> Fraction:
        if exponent < self.truncation_order:
            raise InvalidInput(
                f"exponent {exponent} is below the truncation order {self.truncation_order}"
            )
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def __getitem__(self, exponent: int) -> Fraction:
        return self.coefficient(exponent)

    @property
    def exponents(self) -> list[int]:
        return list(range(self.top, self.truncation_order - 1, -1))

    def truncate(self, order: int) -> AsymptoticExpansion:
        if order < self.truncation_order:
            raise InvalidInput("cannot truncate below the known order")
        return AsymptoticExpansion(
            tuple((e, c) for e, c in self.terms if e >= order), order, self.top
        )

    def to_json(self) -> dict[str, object]:
        return {
            "terms": [[e, format_rational(c)] for e, c in self.terms],
            "truncation_order": self.truncation_order,
        }


def make_expansion(
    coefficients: dict[int, Fraction],
    truncation_order: int,
    top: int,
    report: Iterable[int] = (),
) -> AsymptoticExpansion:
    keep = set(report)
    terms = tuple(
        (e, Fraction(coefficients.get(e, 0)))
        for e in range(top, truncation_order - 1, -1)
        if coefficients.get(e, 0) != 0 or e in keep
    )
    return AsymptoticExpansion(terms, truncation_order, top)


def laurent_remainder(
    p: Polynomial, q: Polynomial, expansion: AsymptoticExpansion
) -> dict[int, Fraction]:
    """``p - q * sum(terms)`` as a sparse Laurent polynomial (nonzero entries)."""
    rem: dict[int, Fraction] = {i: c for i, c in enumerate(p.coefficients) if c}
    for e, c in expansion.terms:
        for j, qc in enumerate(q.coefficients):
            if qc:
                rem[e + j] = rem.get(e + j, Fraction(0)) - c * qc
    return {e: c for e, c in rem.items() if c}


def ratio_expansion(
    p: Polynomial,
    q: Polynomial,
    depth: int,
    top: int | None = None,
    report: Iterable[int] = (),
) -> AsymptoticExpansion:
    """Expand ``p(x)/q(x)`` as ``x -> oo`` in descending powers of ``x``.

    The expansion starts at ``top`` (default ``deg p - deg q``) and keeps
    ``depth + 1`` exponents. ``top`` may be set above the natural leading
    exponent so that callers can read vanishing leading terms; it may not be
    set below it.
    """
    if q.is_zero:
        raise InvalidInput("denominator polynomial is identically zero")
    if depth < 0:
        raise InvalidInput("depth must be >= 0")
    natural = p.degree - q.degree if not p.is_zero else None
    if top is None:
        top = natural if natural is not None else 0
    elif natural is not None and top < natural:
        raise InvalidInput(f"top exponent {top} below leading exponent {natural}")

    dq, lead = q.degree, q.leading
    rem: dict[int, Fraction] = {i: c for i, c in enumerate(p.coefficients) if c}
    coeffs: dict[int, Fraction] = {}
    for e in range(top, top - depth - 1, -1):
        c = rem.get(e + dq, Fraction(0)) / lead
        if c:
            coeffs[e] = c
            for j, qc in enumerate(q.coefficients):
                if qc:
                    rem[e + j] = rem.get(e + j, Fraction(0)) - c * qc
    return make_expansion(coeffs, top - depth, top, report)
