"""Exact-arithmetic certification of the arithmetic property behind the
counting-ratio induction.

A quadruplet (Delta0, ell, t, k) has the property when for every integer
delta >= Delta0:

1. 0 < t < ell < k(delta) < delta, and
2. (k(delta) - t*delta/ell) * (t/(t+1)) ** E >= ell, where
   E = (t+1)*(delta - t*delta/ell) / (k(delta) - t*delta/ell).

Item 2 involves a rational power, but writing E = p/q in lowest terms the
inequality A * r**(p/q) >= ell for positive rationals is equivalent to
A**q * r**p >= ell**q, a big-integer comparison that is decided exactly --
verdicts are proofs, not float comparisons.  The infinite quantifier is split
into a finite scan plus a symbolic tail: linear bounds on A and on the
exponent, valid for every delta past a threshold, reduce the tail to one more
exact comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .certificates import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    UNDECIDED,
    Certificate,
    fraction_comparison_step,
    int_comparison_step,
)
from .coloring import KSpec

# digit guard for the exact power trick (decimal digits of the largest operand)
MAX_TRANSCRIPT_DIGITS = 10_000_000

# k-specifications with a built-in tail argument: label -> (ell, t, threshold)
KNOWN_TAILS: dict[tuple[str, int, int], int] = {("half", 8, 1): 540}


def _params(delta0, ell, t, kspec: KSpec, **extra) -> dict:
    d = {"delta0": delta0, "ell": ell, "t": t, "k": kspec.label()}
    d.update(extra)
    return d


def _item1_steps(delta: int, ell: int, t: int, k: int) -> tuple[list[dict], Optional[str]]:
    steps = [
        int_comparison_step(f"item-1:0<t (delta={delta})", "int-lt", [(0, 1)], [(t, 1)]),
        int_comparison_step(f"item-1:t<ell (delta={delta})", "int-lt", [(t, 1)], [(ell, 1)]),
        int_comparison_step(f"item-1:ell<k (delta={delta})", "int-lt", [(ell, 1)], [(k, 1)]),
        int_comparison_step(f"item-1:k<delta (delta={delta})", "int-lt", [(k, 1)], [(delta, 1)]),
    ]
    for s in steps:
        if not s["holds"]:
            return steps, s["check"]
    return steps, None


def _item2_step(delta: int, ell: int, t: int, k: int) -> tuple[dict, bool, Fraction]:
    """The exact power comparison for one delta; returns (step, holds, A)."""
    A = Fraction(k) - Fraction(t * delta, ell)
    if A <= 0:
        step = fraction_comparison_step(f"item-2:A>0 (delta={delta})", "int-gt", A, Fraction(0))
        return step, False, A
    exponent = Fraction(t + 1) * (Fraction(delta) - Fraction(t * delta, ell)) / A
    p, q = exponent.numerator, exponent.denominator
    an, ad = A.numerator, A.denominator
    rn, rd = t, t + 1
    est_bits = max(
        q * an.bit_length() + p * rn.bit_length(),
        q * (ell.bit_length() + ad.bit_length()) + p * rd.bit_length(),
    )
    if est_bits > MAX_TRANSCRIPT_DIGITS * 3.33:
        raise ResourceWarning(f"operands beyond digit guard at delta={delta}")
    # A^q * r^p >= ell^q  <=>  an^q * rn^p >= ell^q * ad^q * rd^p
    step = int_comparison_step(
        f"item-2 (delta={delta})",
        "int-ge",
        [(an, q), (rn, p)],
        [(ell, q), (ad, q), (rd, p)],
    )
    return step, step["holds"], A


def property_p_single(delta: int, ell: int, t: int, kspec: KSpec) -> Certificate:
    """Exact verdict for one delta; never 'undecided'."""
    if delta < 1 or ell < 1 or t < 1:
        raise ValueError("delta, ell, t must be positive")
    k = kspec(delta)
    transcript, fail = _item1_steps(delta, ell, t, k)
    params = _params(delta, ell, t, kspec, mode="single")
    if fail is not None:
        return Certificate(
            claim="property-p-single",
            params=params,
            verdict=CERTIFIED_FALSE,
            method="exact-rational",
            witness={"failed_check": fail, "delta": delta},
            transcript=transcript,
        )
    try:
        step, holds, _A = _item2_step(delta, ell, t, k)
    except ResourceWarning as exc:
        return Certificate(
            claim="property-p-single",
            params=params,
            verdict=UNDECIDED,
            method="exact-rational",
            witness={"reason": "undecided-resource", "detail": str(exc)},
            transcript=transcript,
        )
    transcript.append(step)
    return Certificate(
        claim="property-p-single",
        params=params,
        verdict=CERTIFIED_TRUE if holds else CERTIFIED_FALSE,
        method="exact-rational",
        witness=None if holds else {"failed_check": step["check"], "delta": delta},
        transcript=transcript,
    )


def property_p_range(delta0: int, delta_max: int, ell: int, t: int, kspec: KSpec) -> Certificate:
    """Exact verdict for every delta in [delta0, delta_max]; the witness of a
    failure is the smallest failing delta."""
    if delta0 > delta_max:
        raise ValueError("empty range")
    transcript = []
    first_fail = None
    for delta in range(delta0, delta_max + 1):
        sub = property_p_single(delta, ell, t, kspec)
        transcript.extend(sub.transcript)
        if sub.verdict == UNDECIDED:
            return Certificate(
                claim="property-p-range",
                params=_params(delta0, ell, t, kspec, delta_max=delta_max),
                verdict=UNDECIDED,
                method="exact-rational",
                witness=sub.witness,
                transcript=transcript,
            )
        if sub.verdict == CERTIFIED_FALSE:
            first_fail = delta
            break
    return Certificate(
        claim="property-p-range",
        params=_params(delta0, ell, t, kspec, delta_max=delta_max),
        verdict=CERTIFIED_TRUE if first_fail is None else CERTIFIED_FALSE,
        method="exact-rational",
        witness=None if first_fail is None else {"first_failing_delta": first_fail},
        transcript=transcript,
    )


# ---------------------------------------------------------------------------
# tail certificates
# ---------------------------------------------------------------------------


def _rational_power_step(check: str, value: Fraction, r_num: int, r_den: int,
                         exponent: Fraction, target: Fraction) -> dict:
    """Exact comparison value * (r_num/r_den)**exponent >= target for
    positive rationals, via q-th powers."""
    p, q = exponent.numerator, exponent.denominator
    vn, vd = value.numerator, value.denominator
    tn, td = target.numerator, target.denominator
    # (vn/vd)^q (rn/rd)^p >= tn/td  <=>  vn^q rn^p td^q... careful with td:
    # cross-multiplying: vn^q * rn^p * td >= tn * vd^q * rd^p  -- but the
    # comparison must be raised as a whole: both sides positive, compare
    # (value^q * r^p) vs target^q:
    return int_comparison_step(
        check,
        "int-ge",
        [(vn, q), (r_num, p), (td, q)],
        [(tn, q), (vd, q), (r_den, p)],
    )


def tail_certificate_half(ell: int = 8, t: int = 1, threshold: int = 540) -> Certificate:
    """Symbolic certificate that the quadruplet property holds for every
    delta >= threshold with the half k-shape, k(x) = ceil((x+1)/2) + 1.

    The argument: (i) A = k(delta) - t*delta/ell >= alpha*delta + 1 with
    alpha = 1/2 - t/ell, for every delta; (ii) the exponent is then at most
    Ebar = (t+1)(1 - t/ell)/alpha; (iii) since the base t/(t+1) < 1, the
    left side is at least (alpha*threshold + 1) * (t/(t+1))**Ebar, which is
    compared exactly against the margin 8.01 (> ell) and grows linearly in
    delta (iv).  Item 1 holds past the threshold by linear bounds on k.
    A certified-false verdict means this bounding argument fails, not that
    the property itself fails beyond the threshold.
    """
    kspec = KSpec.half()
    params = _params(threshold, ell, t, kspec, mode="tail-half")
    transcript = []
    verdict = CERTIFIED_TRUE
    witness = None

    slope_l, icpt_l = kspec.linear_lower_bound()
    slope_u, icpt_u = kspec.linear_upper_bound()
    alpha = slope_l - Fraction(t, ell)
    beta = Fraction(1)

    def fail(check_name):
        nonlocal verdict, witness
        if verdict == CERTIFIED_TRUE:
            verdict = CERTIFIED_FALSE
            witness = {"failed_check": check_name}

    # (0) item 1 for all delta >= threshold
    s = int_comparison_step("tail:item1:t<ell", "int-lt", [(t, 1)], [(ell, 1)])
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])
    s = int_comparison_step(
        "tail:item1:ell<k(threshold)", "int-lt", [(ell, 1)], [(kspec(threshold), 1)]
    )
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])
    # k(delta) <= slope_u*delta + icpt_u < delta for delta >= threshold needs
    # slope_u < 1 and (1 - slope_u)*threshold > icpt_u
    s = fraction_comparison_step("tail:item1:k-slope<1", "int-lt", slope_u, Fraction(1))
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])
    s = fraction_comparison_step(
        "tail:item1:k<delta at threshold", "int-gt",
        (Fraction(1) - slope_u) * threshold, icpt_u,
    )
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])

    # (i) A >= alpha*delta + 1 for all delta: slope and intercept dominate
    s = fraction_comparison_step("tail:(i):A-slope", "int-ge", slope_l - Fraction(t, ell), alpha)
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])
    s = fraction_comparison_step("tail:(i):A-intercept", "int-ge", icpt_l, beta)
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])
    s = fraction_comparison_step("tail:(i):alpha>0", "int-gt", alpha, Fraction(0))
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])

    # (ii) exponent bound Ebar; valid since beta > 0
    ebar = Fraction(t + 1) * (1 - Fraction(t, ell)) / alpha if alpha > 0 else None
    if ebar is None:
        fail("tail:(ii):exponent-bound")
    else:
        s = fraction_comparison_step(
            "tail:(ii):exponent-bound-identity", "int-eq",
            Fraction(t + 1) * (1 - Fraction(t, ell)), ebar * alpha,
        )
        transcript.append(s)
        if not s["holds"]:
            fail(s["check"])

    # (iii) exact margin comparison at delta = threshold
    margin = Fraction(801, 100) if (ell, t) == (8, 1) else Fraction(ell)
    if ebar is not None:
        value = alpha * threshold + beta
        s = _rational_power_step(
            "tail:(iii):margin at threshold", value, t, t + 1, ebar, margin
        )
        transcript.append(s)
        if not s["holds"]:
            fail(s["check"])
    s = fraction_comparison_step("tail:(iii):margin>=ell", "int-ge", margin, Fraction(ell))
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])

    # (iv) the lower bound grows in delta
    s = fraction_comparison_step("tail:(iv):monotone", "int-gt", alpha, Fraction(0))
    transcript.append(s)
    if not s["holds"]:
        fail(s["check"])

    return Certificate(
        claim="property-p-tail-half",
        params=params,
        verdict=verdict,
        method="exact-rational",
        witness=witness,
        transcript=transcript,
    )


def certify_default_quadruplet(
    delta0: int = 524,
    ell: int = 8,
    t: int = 1,
    kspec: Optional[KSpec] = None,
    tail_threshold: int = 540,
) -> Certificate:
    """Conjunction of the exact range scan [delta0, tail_threshold - 1] and
    the symbolic tail; with the default arguments this certifies the
    (524, 8, 1, half) quadruplet.

    For k-shapes other than 'half' no tail constants are built in, so the
    result is a range-only certificate (explicitly labelled).
    """
    kspec = kspec if kspec is not None else KSpec.half()
    range_only = kspec != KSpec.half()
    rng = property_p_range(delta0, max(delta0, tail_threshold - 1), ell, t, kspec)
    parts = {"range": rng.to_json_dict()}
    verdict = rng.verdict
    witness = rng.witness
    if not range_only and verdict == CERTIFIED_TRUE:
        tail = tail_certificate_half(ell, t, tail_threshold)
        parts["tail"] = tail.to_json_dict()
        if tail.verdict != CERTIFIED_TRUE:
            verdict = tail.verdict
            witness = tail.witness
    transcript = []
    for part in parts.values():
        transcript.extend(part["transcript"])
    return Certificate(
        claim="property-p-quadruplet" + ("-range-only" if range_only else ""),
        params=_params(delta0, ell, t, kspec,
                       tail_threshold=None if range_only else tail_threshold,
                       range_only=range_only),
        verdict=verdict,
        method="exact-rational",
        witness=witness,
        transcript=transcript,
    )


def minimal_delta0(
    ell: int, t: int, kspec: KSpec, scan_limit: int
) -> tuple[Optional[int], Certificate]:
    """Smallest Delta0 <= scan_limit from which the property holds onward.

    With a known tail threshold T the scan covers [1, T] and the result is
    unconditional; otherwise the result is relative to [Delta0, scan_limit]
    and labelled range-only.
    """
    key = (kspec.label(), ell, t)
    threshold = KNOWN_TAILS.get(key)
    tail_ok = False
    if threshold is not None:
        tail_ok = tail_certificate_half(ell, t, threshold).verdict == CERTIFIED_TRUE
    top = threshold if (threshold is not None and tail_ok) else scan_limit
    last_fail = 0
    for delta in range(1, top + 1):
        if property_p_single(delta, ell, t, kspec).verdict != CERTIFIED_TRUE:
            last_fail = delta
    candidate = last_fail + 1
    found = candidate if candidate <= scan_limit and candidate <= top else None
    cert = Certificate(
        claim="minimal-delta0-scan",
        params=_params(found, ell, t, kspec, scan_limit=scan_limit,
                       tail_threshold=threshold if tail_ok else None,
                       range_only=not tail_ok),
        verdict=CERTIFIED_TRUE if found is not None else CERTIFIED_FALSE,
        method="exact-rational",
        witness={"last_failing_delta": last_fail if last_fail else None,
                 "scanned_up_to": top},
        transcript=[],
    )
    return found, cert


# ---------------------------------------------------------------------------
# convexity probe
# ---------------------------------------------------------------------------


@dataclass
class ConvexityReport:
    passed: bool
    min_second_difference: float
    min_second_derivative: float
    points: int


def convexity_probe(c, a, b, grid, tolerance: float = 1e-9, prec_bits: int = 200) -> ConvexityReport:
    """Probe convexity of z -> c*z*(1-1/b)**(a*b/z) on a positive grid.

    Primary assertion: the closed-form second derivative
    c * (1-1/b)**(ab/z) * (ab*ln(1-1/b))**2 / z**3 is positive at every grid
    point.  Corroboration: second finite differences are >= -tolerance.
    """
    c, a, b = Fraction(c), Fraction(a), Fraction(b)
    if c <= 0 or a <= 0 or b <= 1:
        raise ValueError("need c > 0, a > 0, b > 1")
    grid = [Fraction(z) for z in grid]
    if len(grid) < 3 or any(z <= 0 for z in grid) or sorted(grid) != grid:
        raise ValueError("grid must be >= 3 sorted positive points")

    with mpmath.workprec(prec_bits):
        cf = mpmath.mpf(c.numerator) / c.denominator
        af = mpmath.mpf(a.numerator) / a.denominator
        bf = mpmath.mpf(b.numerator) / b.denominator
        base = 1 - 1 / bf
        lnb = mpmath.log(base)

        def phi(zf):
            return cf * zf * mpmath.power(base, af * bf / zf)

        def second_derivative(zf):
            return cf * mpmath.power(base, af * bf / zf) * (af * bf * lnb) ** 2 / zf**3

        zs = [mpmath.mpf(z.numerator) / z.denominator for z in grid]
        values = [phi(z) for z in zs]
        d2_min = min(second_derivative(z) for z in zs)
        fd_min = None
        for i in range(1, len(zs) - 1):
            h1 = zs[i] - zs[i - 1]
            h2 = zs[i + 1] - zs[i]
            fd = (values[i + 1] - values[i]) / h2 - (values[i] - values[i - 1]) / h1
            fd_min = fd if fd_min is None else min(fd_min, fd)
        passed = d2_min > 0 and fd_min >= -mpmath.mpf(tolerance)
        return ConvexityReport(
            passed=bool(passed),
            min_second_difference=float(fd_min),
            min_second_derivative=float(d2_min),
            points=len(zs),
        )
