"""Built-in verification suites.

Each check returns a :class:`Check` with a machine-readable detail record.
Suites: ``oracles``, ``invariance``, ``decay``, ``calibration``, ``cubics``
and ``all``. Randomized checks use fixed seeds, so every run is identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .adiabatic import (
    ResolutionData,
    SingularPointData,
    build_coefficients,
    corollary_leading,
    default_metric_inputs,
    expansion_from_abcd,
    theorem_expansion,
)
from .characters import (
    AmbientSpec,
    HypersurfaceSpec,
    PolytopeSpec,
    Spec,
    brute_force_character,
    character,
    dimension,
)
from .cubics import (
    INCONCLUSIVE,
    UNSTABLE,
    ResolutionNumbers,
    cubic_model,
    instability_report,
    make_action,
    verify_polystable_futaki,
)
from .engine import futaki
from .exact import format_rational
from .toric import BlowupModel, exact_adiabatic_expansion, futaki_curve

SUITES = ("oracles", "invariance", "decay", "calibration", "cubics", "all")


@dataclass
class Check:
    name: str
    criterion: int
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "passed": self.passed,
            "detail": self.detail,
        }

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.criterion}: {self.name}"


def _q(x: Fraction) -> str:
    return format_rational(x)


# -- test sets ---------------------------------------------------------------

ORACLE_WEIGHTS = {
    1: [(1, -1), (3, 0), (-2, 5)],
    2: [(2, 0, 1), (1, -1, 0), (4, -3, 7)],
    3: [(1, 0, 0, 0), (1, -1, 2, -2), (5, 3, -1, 0)],
    4: [(1, 1, -2, 0, 0), (-2, -1, 0, 1, 2), (1, 2, 0, -1, 3)],
}


def oracle_specs() -> list[AmbientSpec | HypersurfaceSpec]:
    specs: list[AmbientSpec | HypersurfaceSpec] = []
    for d, weight_sets in ORACLE_WEIGHTS.items():
        for i, w in enumerate(weight_sets):
            amb = AmbientSpec(d, w, linearization_shift=i - 1)
            specs.append(amb)
            for m in sorted({1, min(3, d + 1)}):
                # weight of the first degree-m monomial x0^m
                specs.append(HypersurfaceSpec(amb, m, m * w[0]))
    specs.append(HypersurfaceSpec(AmbientSpec(4, (1, 2, 0, -1, 3)), 3, 3))
    return specs


def invariance_specs() -> list[Spec]:
    return [
        AmbientSpec(2, (2, 0, 1)),
        AmbientSpec(3, (1, -1, 3, 0)),
        HypersurfaceSpec(AmbientSpec(3, (1, 0, 0, 0)), 2, 0),
        HypersurfaceSpec(AmbientSpec(2, (1, 0, 0)), 2, 1),
        HypersurfaceSpec(AmbientSpec(4, (1, 1, -2, 0, 0)), 3, 0),
        BlowupModel(2, (1, 0), {0: 1}).polytope(3),
        PolytopeSpec(2, ((0, 0), (2, 0), (1, 1), (0, 1)), (1, 1)),
        BlowupModel(3, (1, 2, 0), {0: 1}).polytope(3),
    ]


def _label(spec: Spec) -> str:
    if isinstance(spec, AmbientSpec):
        return f"P^{spec.d} weights={list(spec.weights)}"
    if isinstance(spec, HypersurfaceSpec):
        return (
            f"deg-{spec.degree} hypersurface in P^{spec.ambient.d} "
            f"weights={list(spec.ambient.weights)} w_F={spec.defining_weight}"
        )
    return f"polytope {[list(v) for v in spec.vertices]} weights={list(spec.weights)}"


# -- criterion 1 ---------------------------------------------------------------


def check_oracles(k_max: int = 30) -> list[Check]:
    mismatches = []
    count = 0
    for spec in oracle_specs():
        for k in range(k_max + 1):
            count += 1
            if brute_force_character(spec, k) != character(spec, k):
                mismatches.append({"spec": _label(spec), "k": k})
    return [
        Check(
            "closed-form characters equal brute-force enumeration (d <= 4, k = 0..30)",
            1,
            not mismatches,
            {"comparisons": count, "mismatches": mismatches[:10]},
        )
    ]


# -- criteria 2, 3, 5 --------------------------------------------------------


def check_linearization() -> list[Check]:
    failures = []
    for spec in invariance_specs():
        base = futaki(spec.with_shift(0))
        for lam in range(-3, 4):
            res = futaki(spec.with_shift(lam))
            if res.F1 != base.F1 or res.F0 != base.F0 + lam:
                failures.append({"spec": _label(spec), "lambda": lam, "F0": _q(res.F0), "F1": _q(res.F1)})
    return [
        Check(
            "F1 unchanged and F0 shifted by lambda for lambda in -3..3",
            2,
            not failures,
            {"specs": len(invariance_specs()), "failures": failures},
        )
    ]


def check_power() -> list[Check]:
    failures = []
    values = {}
    for spec in invariance_specs():
        base = futaki(spec)
        values[_label(spec)] = _q(base.F1)
        for m in (2, 3, 5):
            if isinstance(spec, PolytopeSpec):
                res = futaki(spec.scaled(m))
            else:
                res = futaki(spec, power=m)
            if res.F1 != base.F1:
                failures.append({"spec": _label(spec), "m": m, "F1": _q(res.F1)})
    return [
        Check(
            "F1(B^m) = F1(B) for m in {2, 3, 5}",
            3,
            not failures,
            {"F1": values, "failures": failures},
        )
    ]


def check_pullback() -> list[Check]:
    rows = []
    ok = True
    for w in [(2, 0, 1), (1, -1, 0), (5, -3, 4)]:
        ambient = futaki(AmbientSpec(2, w))
        # x0^a0 x1^a1 x2^a2 <-> lattice point (a1, a2): alpha' = (w1 - w0, w2 - w0), shift w0
        model = BlowupModel(2, (w[1] - w[0], w[2] - w[0]), {0: 0}, shift=w[0])
        toric = futaki(model.polytope(1))
        same = toric.F1 == ambient.F1 and toric.F0 == ambient.F0
        ok &= same
        rows.append({"weights": list(w), "F1_toric": _q(toric.F1), "F1_ambient": _q(ambient.F1)})
    return [
        Check("uncut-simplex model of pi^*L reproduces F(P^2, O(1)) exactly", 5, ok, {"rows": rows})
    ]


# -- criterion 6 ---------------------------------------------------------------

DECAY_WEIGHTS = [(1, 0), (1, 1)]


def check_decay() -> list[Check]:
    checks = []
    for w in DECAY_WEIGHTS:
        model = BlowupModel(2, w, {0: 1})
        limit = futaki(model.base()).F1
        curve = futaki_curve(model, [4, 8, 16, 32])
        scaled = {r: r * abs(v - limit) for r, v in curve.items()}
        top = max(scaled[r] for r in (8, 16, 32))
        ok = scaled[8] > 0 and top <= Fraction(3, 2) * scaled[8]
        checks.append(
            Check(
                f"r |F1(r) - F1(oo)| bounded for the unit-cut family, weights {list(w)}",
                6,
                ok,
                {
                    "F1_limit": _q(limit),
                    "r_times_gap": {str(r): _q(v) for r, v in scaled.items()},
                    "ratio_max_to_r8": float(top / scaled[8]) if scaled[8] else None,
                    "bound": 1.5,
                },
            )
        )
    return checks


# -- criteria 7, 8 -------------------------------------------------------------

CALIBRATION_WEIGHTS = [(1, 0), (1, 2)]


def calibration_residuals(
    model: BlowupModel, rs: tuple[int, ...] = (8, 16, 32), leading: Fraction | None = None
) -> dict[int, Fraction]:
    data = model.resolution_data()
    lead = corollary_leading(data) if leading is None else leading
    curve = futaki_curve(model, rs)
    return {r: r * r * (curve[r] - (data.FXL + lead / r)) for r in rs}


def doubling_ok(scaled: dict[int, Fraction]) -> bool:
    rs = sorted(scaled)
    return all(abs(scaled[b]) <= 2 * abs(scaled[a]) for a, b in zip(rs, rs[1:]))


def check_calibration() -> list[Check]:
    checks = []
    for w in CALIBRATION_WEIGHTS:
        for b in (1, 2):
            model = BlowupModel(2, w, {0: b})
            residuals = calibration_residuals(model)
            checks.append(
                Check(
                    f"blow-up of P^2, weights {list(w)}, b = {b}: F1(r) - [F + lead/r] = O(r^-2)",
                    7,
                    doubling_ok(residuals),
                    {
                        "corollary_leading": _q(corollary_leading(model.resolution_data())),
                        "r2_residual": {str(r): _q(v) for r, v in residuals.items()},
                        "measured_bound": _q(max(abs(v) for v in residuals.values())),
                    },
                )
            )
    # the same test with the sign of the leading term flipped must fail
    flipped = {}
    for w in CALIBRATION_WEIGHTS:
        model = BlowupModel(2, w, {0: 1})
        lead = corollary_leading(model.resolution_data())
        flipped[str(list(w))] = not doubling_ok(calibration_residuals(model, leading=-lead))
    checks.append(
        Check(
            "flipping the sign of the r^-1 term breaks the O(r^-2) residual bound",
            7,
            all(flipped.values()),
            {"rejected": flipped},
        )
    )
    # exact r-expansion from lattice points against the closed forms, n = 2 and 3
    rows = []
    ok = True
    for model in [
        BlowupModel(2, (1, 0), {0: 1}),
        BlowupModel(2, (2, -1), {1: 2, 0: 1}, shift=1),
        BlowupModel(3, (1, 0, 0), {0: 1}),
        BlowupModel(3, (1, 2, -1), {0: 1, 2: 2}),
    ]:
        exact = exact_adiabatic_expansion(model)
        data = model.resolution_data()
        n = model.n
        theorem = theorem_expansion(data)
        same = exact == theorem and exact[1 - n] == corollary_leading(data)
        ok &= same
        rows.append(
            {
                "n": n,
                "weights": list(model.weights),
                "cuts": {str(k): v for k, v in model.cuts.items()},
                "exact": exact.to_json(),
                "theorem": theorem.to_json(),
            }
        )
    checks.append(
        Check("exact lattice-point r-expansion equals the closed forms through r^-n", 7, ok, {"rows": rows})
    )
    return checks


def random_resolution_data(rng: random.Random) -> ResolutionData:
    def q(lo: int = -6, hi: int = 6) -> Fraction:
        return Fraction(rng.randint(lo, hi), rng.randint(1, 4))

    n = rng.randint(2, 5)
    points = tuple(
        SingularPointData(
            label=f"p{i}",
            u_p=q(),
            b_p=Fraction(rng.randint(1, 5), rng.randint(1, 3)),
            KM_Ep_nminus1=q(),
            Ep_n=q(),
            delta_u_p=q(),
        )
        for i in range(rng.randint(1, 4))
    )
    return ResolutionData(
        n=n,
        Ln=Fraction(rng.randint(1, 9), rng.randint(1, 3)),
        FXL=q(),
        u_bar=q(),
        points=points,
        KX_Lnminus1=q(),
    )


def check_consistency(count: int = 20, seed: int = 20240) -> list[Check]:
    rng = random.Random(seed)
    bad_trunc = []
    bad_abcd = []
    for i in range(count):
        data = random_resolution_data(rng)
        n = data.n
        thm = theorem_expansion(data)
        if thm[0] != data.FXL or thm[1 - n] != corollary_leading(data):
            bad_trunc.append(i)
        fam = build_coefficients(data, default_metric_inputs(data))
        if expansion_from_abcd(fam, n) != thm:
            bad_abcd.append(i)
    return [
        Check(
            f"theorem expansion truncated at r^(1-n) equals (F(X,L), corollary) on {count} random instances",
            8,
            not bad_trunc,
            {"seed": seed, "failures": bad_trunc},
        ),
        Check(
            f"coefficient-family expansion equals the theorem through r^-n on {count} random instances",
            8,
            not bad_abcd,
            {"seed": seed, "failures": bad_abcd},
        ),
    ]


# -- criteria 4, 9 -------------------------------------------------------------


def check_polystable(seed: int = 7) -> list[Check]:
    rng = random.Random(seed)
    delta = cubic_model("F_Delta")
    alphas: list[tuple[int, int, int]] = []
    while len(alphas) < 10:
        a0, a1 = rng.randint(-9, 9), rng.randint(-9, 9)
        if (a0, a1) != (0, 0):
            alphas.append((a0, a1, -a0 - a1))
    rows = []
    ok = True
    for alpha in alphas:
        res = futaki(make_action(delta, alpha)[0], 3)
        ok &= res.F0 == 0 and res.F1 == 0
        rows.append({"model": "F_Delta", "alpha": list(alpha), "F0": _q(res.F0), "F1": _q(res.F1)})
    fab = cubic_model("F_AB", 0)
    for c in (1, 2, 3):
        res = futaki(make_action(fab, (c,))[0], 3)
        ok &= res.F0 == 0 and res.F1 == 0
        rows.append({"model": "F_AB", "c": c, "F0": _q(res.F0), "F1": _q(res.F1)})
    # the engine-level assertion path as well
    for alpha in alphas[:3]:
        verify_polystable_futaki(delta, alpha)
    return [Check("F0 = F1 = 0 for the polystable cubics (F0 = 0 is ubar = 0)", 4, ok, {"rows": rows})]


def check_verdicts(seed: int = 11, instances: int = 100) -> list[Check]:
    delta = cubic_model("F_Delta")
    bad = []
    grid = 0
    for e in [(a, b, c) for a in range(-3, 1) for b in range(-3, 1) for c in range(-3, 1)]:
        for bs in [(x, y, z) for x in (1, 2) for y in (1, 2) for z in (1, 2)]:
            grid += 1
            nums = ResolutionNumbers.of(**{f"p{j}": (bs[j], e[j]) for j in range(3)})
            vals = {bs[j] ** 2 * e[j] for j in range(3)}
            rep = instability_report(delta, nums)
            expected = UNSTABLE if len(vals) > 1 else INCONCLUSIVE
            witness_ok = True
            if rep.verdict == UNSTABLE:
                alpha = rep.witness_alpha
                assert alpha is not None
                direct = -Fraction(1, 2) * sum(alpha[j] * bs[j] ** 2 * e[j] for j in range(3))
                witness_ok = direct == rep.coefficient != 0
            if rep.verdict != expected or not witness_ok:
                bad.append({"KM_E2": list(e), "b": list(bs), "verdict": rep.verdict})
    checks = [
        Check(
            "F_Delta: UNSTABLE iff K_M.(b_j E_j)^2 not all equal (grid KM_E2 in -3..0, b in 1..2)",
            9,
            not bad,
            {"instances": grid, "failures": bad[:10]},
        )
    ]

    rng = random.Random(seed)
    fab = cubic_model("F_AB", 0)
    bad_ab = []
    for _ in range(instances):
        b0, b2, b4 = (rng.randint(1, 3) for _ in range(3))
        e0, e2, e4 = (rng.randint(-4, 1) for _ in range(3))
        e2_alt = rng.randint(-6, 3)
        b2_alt = rng.randint(1, 4)
        nums = ResolutionNumbers.of(p0=(b0, e0), p2=(b2, e2), p4=(b4, e4))
        alt = ResolutionNumbers.of(p0=(b0, e0), p2=(b2_alt, e2_alt), p4=(b4, e4))
        rep, rep_alt = instability_report(fab, nums), instability_report(fab, alt)
        v0, v4 = b0 * b0 * e0, b4 * b4 * e4
        expected = UNSTABLE if v0 != v4 else INCONCLUSIVE
        if (
            rep.verdict != rep_alt.verdict
            or rep.coefficient != rep_alt.coefficient
            or rep.verdict != expected
            or rep.coefficient != v0 - v4
        ):
            bad_ab.append({"p0": [b0, e0], "p2": [b2, e2], "p4": [b4, e4]})
    checks.append(
        Check(
            f"F_AB: p2 (A1) entry never changes the report; coefficient is v0 - v4 ({instances} random instances)",
            9,
            not bad_ab,
            {"seed": seed, "failures": bad_ab[:10]},
        )
    )
    return checks


SUITE_CHECKS: dict[str, list[Callable[[], list[Check]]]] = {
    "oracles": [check_oracles],
    "invariance": [check_linearization, check_power, check_pullback],
    "decay": [check_decay],
    "calibration": [check_calibration, check_consistency],
    "cubics": [check_polystable, check_verdicts],
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        names = [s for s in SUITES if s != "all"]
    elif name in SUITE_CHECKS:
        names = [name]
    else:
        raise KeyError(name)
    out: list[Check] = []
    for suite in names:
        for fn in SUITE_CHECKS[suite]:
            out.extend(fn())
    return out
