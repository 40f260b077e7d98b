"""Machine-checkable verdict records.

A Certificate bundles a claim, its parameters, a verdict and a transcript of
the comparisons that produced the verdict.  Transcript steps store their
operands in factored form (lists of [base, exponent] pairs, decimal strings)
so they stay compact even when the underlying comparison involves integers
with thousands of digits; ``replay_transcript`` re-executes every step from
those operands and checks that the recorded outcome reproduces.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

CERTIFIED_TRUE = "certified-true"
CERTIFIED_FALSE = "certified-false"
UNDECIDED = "undecided"

_INT_OPS = {
    "int-le": lambda a, b: a <= b,
    "int-lt": lambda a, b: a < b,
    "int-ge": lambda a, b: a >= b,
    "int-gt": lambda a, b: a > b,
    "int-eq": lambda a, b: a == b,
}


def _ensure_str_digits(n_digits: int) -> None:
    # CPython caps int<->str conversions; certificates may carry larger ints.
    if hasattr(sys, "get_int_max_str_digits"):
        if sys.get_int_max_str_digits() < n_digits:
            sys.set_int_max_str_digits(n_digits)


_ensure_str_digits(2_000_000)


@dataclass
class Certificate:
    claim: str
    params: dict
    verdict: str
    method: str
    witness: object = None
    transcript: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "verdict": self.verdict,
            "method": self.method,
            "witness": self.witness,
            "transcript": self.transcript,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "Certificate":
        return cls(
            claim=d["claim"],
            params=d["params"],
            verdict=d["verdict"],
            method=d["method"],
            witness=d.get("witness"),
            transcript=d.get("transcript", []),
        )


def _product(factors) -> int:
    acc = 1
    for base, exp in factors:
        acc *= int(base) ** int(exp)
    return acc


def int_comparison_step(check: str, op: str, lhs_factors, rhs_factors) -> dict:
    """Evaluate prod(lhs) <op> prod(rhs) over big integers and record it.

    Factors are (base, exponent) pairs of non-negative integers; they are
    stored as decimal strings so the step replays without ambiguity.
    """
    if op not in _INT_OPS:
        raise ValueError(f"unknown comparison op: {op}")
    holds = _INT_OPS[op](_product(lhs_factors), _product(rhs_factors))
    return {
        "check": check,
        "op": op,
        "lhs_factors": [[str(int(b)), str(int(e))] for b, e in lhs_factors],
        "rhs_factors": [[str(int(b)), str(int(e))] for b, e in rhs_factors],
        "holds": holds,
    }


def fraction_comparison_step(check: str, op: str, lhs, rhs) -> dict:
    """Exact rational comparison; replayed by cross-multiplication."""
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = _INT_OPS[op](lhs.numerator * rhs.denominator, rhs.numerator * lhs.denominator)
    return {
        "check": check,
        "op": op,
        "lhs_fraction": f"{lhs.numerator}/{lhs.denominator}",
        "rhs_fraction": f"{rhs.numerator}/{rhs.denominator}",
        "holds": holds,
    }


def interval_comparison_step(check: str, relation: str, interval, threshold) -> dict:
    """Record a one-sided interval comparison against a rational threshold."""
    thr = Fraction(threshold)
    return {
        "check": check,
        "op": f"interval-{relation}",
        "interval": interval.to_json_dict(),
        "threshold": f"{thr.numerator}/{thr.denominator}",
        "holds": {
            "le": interval.surely_le(thr),
            "lt": interval.surely_lt(thr),
            "ge": interval.surely_ge(thr),
            "gt": interval.surely_gt(thr),
        }[relation],
    }


def _parse_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def replay_step(step: dict) -> bool:
    """Re-execute one transcript step; True iff the recorded outcome holds."""
    op = step["op"]
    if op in _INT_OPS:
        if "lhs_factors" in step:
            lhs = _product((int(b), int(e)) for b, e in step["lhs_factors"])
            rhs = _product((int(b), int(e)) for b, e in step["rhs_factors"])
        else:
            lf, rf = _parse_frac(step["lhs_fraction"]), _parse_frac(step["rhs_fraction"])
            lhs, rhs = lf.numerator * rf.denominator, rf.numerator * lf.denominator
        return _INT_OPS[op](lhs, rhs) == step["holds"]
    if op.startswith("interval-"):
        relation = op.split("-", 1)[1]
        lo = _parse_frac(step["interval"]["lower"])
        hi = _parse_frac(step["interval"]["upper"])
        thr = _parse_frac(step["threshold"])
        got = {"le": hi <= thr, "lt": hi < thr, "ge": lo >= thr, "gt": lo > thr}[relation]
        return got == step["holds"]
    raise ValueError(f"cannot replay step op: {op}")


def replay_transcript(cert: Certificate) -> bool:
    """True iff every recorded comparison reproduces on re-execution."""
    return all(replay_step(s) for s in cert.transcript)
