"""Named verification checks over the stored 4x4 trace-algebra data.

Each check recomputes one published identity by an independent route and
returns a structured result; the command line runs them by name and the
acceptance test suite asserts them.  Checks are deterministic and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import trace44
from .multsolver import verify_roundtrip
from .symfunc import mult_series_truncated, series_expand
from .trace44 import AlgebraKind


@dataclass
class VerifySettings:
    """Knobs for the verification suite; defaults match the acceptance gate."""

    oracle_degree: int = 30
    scales: tuple = (64, 128, 256, 512)
    directions: tuple = ((4, 1), (5, 2), (3, 2))
    ratio_tolerance: Fraction = Fraction(3, 20)
    monotone_from: int = 64
    growth_direction: tuple = (3, 2)
    growth_scale: int = 256


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"check": self.name, "ok": self.ok, "details": _jsonable(self.details)}


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    return str(value)


def check_roundtrip(settings=None):
    """Reconstructing the symmetric function from the stored multiplicity
    series reproduces the Hilbert series exactly, for both algebras."""
    details = {}
    ok = True
    for kind in AlgebraKind:
        rep = verify_roundtrip(
            trace44.hilbert_series(kind), trace44.multiplicity_series(kind)
        )
        details[kind.value] = rep.to_dict()
        ok = ok and rep.ok
    return CheckResult("roundtrip", ok, details)


def check_stored_vs_solved(settings=None):
    """The unknown-coefficient solver reproduces the stored closed forms,
    within the published numerator degree bounds."""
    details = {}
    ok = True
    bounds = {AlgebraKind.PURE: 12, AlgebraKind.MIXED: 9}
    for kind in AlgebraKind:
        solved = trace44.solved_details(kind)
        same = solved.series == trace44.multiplicity_series(kind)
        deg = solved.numerator_t_degree
        deg_ok = deg <= bounds[kind]
        details[kind.value] = {
            "equal": same,
            "numerator_t_degree": deg,
            "degree_bound": bounds[kind],
        }
        ok = ok and same and deg_ok
    return CheckResult("stored-vs-solved", ok, details)


def check_oracle(settings=None):
    """Brute-force Schur decomposition of the expanded Hilbert series matches
    the stored multiplicity series coefficient by coefficient; along the way
    every multiplicity is a nonnegative integer and the Hilbert expansions
    are symmetric."""
    settings = settings or VerifySettings()
    n = settings.oracle_degree
    details = {"degree": n}
    ok = True
    for kind in AlgebraKind:
        hs = series_expand(trace44.hilbert_series(kind), n)
        symmetric = hs.is_symmetric()
        oracle = mult_series_truncated(trace44.hilbert_series(kind), n)
        series = series_expand(trace44.multiplicity_series(kind), n - 1)
        mismatches = 0
        bad_values = 0
        checked = 0
        for p in range(n):
            for q in range((n - 1 - p) // 2 + 1):
                want = oracle.coeffs.get((p, q), 0)
                got = series.coeffs.get((p, q), 0)
                checked += 1
                if want != got:
                    mismatches += 1
                if not isinstance(want, int) or want < 0:
                    bad_values += 1
        details[kind.value] = {
            "symmetric": symmetric,
            "partitions_checked": checked,
            "mismatches": mismatches,
            "non_integer_or_negative": bad_values,
        }
        ok = ok and symmetric and mismatches == 0 and bad_values == 0
    return CheckResult("oracle", ok, details)


def check_prop5(settings=None):
    """The two-level elementary-fraction decomposition tops out at
    denominator weight 16, its weight-16 part matches the stored display, and
    the mixed leading part is 16 times the pure one."""
    details = {}
    ok = True
    pure_lead = trace44.leading_part(AlgebraKind.PURE)
    for kind in AlgebraKind:
        table = trace44.fraction_table(kind)
        lead = trace44.leading_part(kind)
        display = trace44.leading_part_display(kind)
        weight_ok = table.weight() == trace44.MAX_DENOMINATOR_WEIGHT
        display_ok = lead == display
        details[kind.value] = {
            "max_weight": table.weight(),
            "weight_16_fractions": len(lead.entries),
            "matches_display": display_ok,
        }
        ok = ok and weight_ok and display_ok
    ratio_ok = trace44.leading_part(AlgebraKind.MIXED) == pure_lead.scaled(
        trace44.MIXED_TO_PURE_RATIO
    )
    details["mixed_is_16_times_pure"] = ratio_ok
    ok = ok and ratio_ok
    return CheckResult("prop5", ok, details)


def check_asympt(settings=None):
    """Exact-to-asymptotic ratios along fixed directions: finite, positive,
    |ratio - 1| strictly decreasing as the scale doubles, and within the
    tolerance at the largest scale."""
    settings = settings or VerifySettings()
    details = {"scales": list(settings.scales), "tolerance": settings.ratio_tolerance}
    ok = True
    for kind in AlgebraKind:
        per_kind = {}
        for direction in settings.directions:
            rows = trace44.asymptotic_convergence_report(
                kind, direction, settings.scales
            )
            devs = []
            finite_positive = True
            for row in rows:
                if row.ratio is None or row.ratio <= 0:
                    finite_positive = False
                    break
                devs.append(abs(row.ratio - 1))
            monotone = finite_positive and all(
                devs[i + 1] < devs[i] for i in range(len(devs) - 1)
            )
            final_ok = finite_positive and devs[-1] <= settings.ratio_tolerance
            region = trace44.asymptotic_region(
                (direction[0] * settings.scales[0], direction[1] * settings.scales[0])
            )
            per_kind["x".join(map(str, direction))] = {
                "region": region,
                "deviations": [str(d) for d in devs],
                "deviations_float": [float(d) for d in devs],
                "finite_positive": finite_positive,
                "strictly_decreasing": monotone,
                "final_within_tolerance": final_ok,
            }
            ok = ok and finite_positive and monotone and final_ok
        details[kind.value] = per_kind
    return CheckResult("asympt", ok, details)


def check_growth(settings=None):
    """Doubling the scale along (3, 2) multiplies the multiplicity by about
    2^14: the base-2 log of the quotient lies within 0.2 of 14."""
    settings = settings or VerifySettings()
    s = settings.growth_scale
    direction = settings.growth_direction
    rows = trace44.asymptotic_convergence_report(
        AlgebraKind.PURE, direction, (s, 2 * s)
    )
    ratio = Fraction(rows[1].exact, rows[0].exact)
    # 13.8 <= log2(ratio) <= 14.2 exactly, via ratio^5 in [2^69, 2^71]
    ok = 2**69 <= ratio**5 <= 2**71
    import math

    return CheckResult(
        "growth",
        ok,
        {
            "direction": list(direction),
            "scale": s,
            "log2_ratio": float(math.log2(ratio)),
            "window": [13.8, 14.2],
        },
    )


CHECKS = {
    "roundtrip": check_roundtrip,
    "oracle": check_oracle,
    "prop5": check_prop5,
    "stored-vs-solved": check_stored_vs_solved,
    "asympt": check_asympt,
    "growth": check_growth,
}


def run_check(name, settings=None):
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    return CHECKS[name](settings)
