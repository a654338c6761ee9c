"""Self-contained certificates for (g, d, t) and their verification.

A certificate stores its inputs, every derived quantity as an exact string,
the slope and J-flow verdicts, and the implication labels those verdicts
license.  Verification rebuilds the certificate from the inputs alone and
compares field by field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

import jsonschema

from . import family as fm
from . import jflow as jf
from .errors import NoCorrectionFound, SchemaViolation, SlopeStabError
from .exactnum import format_rational, parse_rational, rat, Rational, Surd
from .slope import check_decision, destabilizes, mu_c, mu_variety

SCHEMA_VERSION = 1

IMPLICATION_CHAIN = (
    "not slope semistable with respect to Z",
    "not K-semistable",
    "neither asymptotically Hilbert nor asymptotically Chow semistable",
    "no cscK metric in c1(L_t)",
)

JFLOW_AMPLE_LABEL = "J-flow converges and the Mabuchi functional is proper on c1(L_t)"

PROVENANCE = {
    "s_C": "s_C = g/(d-1) (Kouvidakis, (d-1)^2 <= g)",
    "L2": "L_t^2 = 2t^2 - 2g",
    "KL": "K.L_t = 2t(2g-2)",
    "LZ": "L_t.Z = 2t(d-1) - 2g",
    "KZ": "K.Z = 2(2g-2)(d-1)",
    "Z2": "Z^2 = 2(d-1)^2 - 2g",
    "mu": "mu(X,L) = -K.L/L^2",
    "mu_1": "mu_c(O_Z,L) = 3(2L.Z - c(K.Z+Z^2))/(2c(3L.Z - cZ^2)) at c = 1",
    "Q": "Q = 3g - (2g-2)(d-1) - 3(d-1)^2 = 2(g-(d-1)^2)(mu_1 - mu) at t = s_C",
    "epsilon_lo": "sup{c <= 1 : L_t - cZ certified ample}",
    "epsilon_hi": "first failure of (L_t - cZ).E >= 0 for E in {Z, Delta, f} or (L_t - cZ)^2 >= 0",
    "t_star": "t* = s_C + sqrt(s_C^2 - g)",
    "limits.mu": "-(2g-2)(d-1)/(g-(d-1)^2)",
    "limits.mu_1": "3(g-(2g-2)(d-1)-(d-1)^2)/(2(g-(d-1)^2))",
    "verdicts.slope": "sign of N(c) - mu*D(c) against sign of D(c) on (0, epsilon_lo]",
    "verdicts.jflow": "alpha = 2(K.L)L - (L^2)K ample iff t^2 + g > 2t*s_C",
}

_RAT = {"type": "string", "pattern": r"^-?[0-9]+/[0-9]+$"}
_SURD = {
    "type": "object",
    "required": ["p", "q", "r"],
    "properties": {"p": _RAT, "q": _RAT, "r": _RAT},
    "additionalProperties": False,
}
_RAT_OR_NULL = {"anyOf": [_RAT, {"type": "null"}]}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": [
        "schema_version", "inputs", "quantities", "limits",
        "verdicts", "conclusions", "provenance", "notes",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"type": "integer"},
        "inputs": {
            "type": "object",
            "required": ["g", "d", "t"],
            "additionalProperties": False,
            "properties": {"g": _RAT, "d": _RAT, "t": _RAT},
        },
        "quantities": {
            "type": "object",
            "required": [
                "s_C", "L2", "KL", "LZ", "KZ", "Z2", "mu", "mu_1", "Q",
                "epsilon_lo", "epsilon_hi", "t_star",
            ],
            "additionalProperties": False,
            "properties": {
                **{k: _RAT for k in ("s_C", "L2", "KL", "LZ", "KZ", "Z2", "mu", "Q", "epsilon_lo")},
                "mu_1": _RAT_OR_NULL,
                "epsilon_hi": {"anyOf": [_RAT, _SURD]},
                "t_star": _SURD,
            },
        },
        "limits": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["mu", "mu_1"],
                    "additionalProperties": False,
                    "properties": {"mu": _RAT, "mu_1": _RAT},
                },
            ]
        },
        "verdicts": {
            "type": "object",
            "required": ["slope", "jflow"],
            "additionalProperties": False,
            "properties": {
                "slope": {
                    "type": "object",
                    "required": ["verdict", "witness_c", "mu_at_witness"],
                    "additionalProperties": False,
                    "properties": {
                        "verdict": {"enum": ["Unstable", "NoWitnessFound"]},
                        "witness_c": _RAT_OR_NULL,
                        "mu_at_witness": _RAT_OR_NULL,
                    },
                },
                "jflow": {
                    "type": "object",
                    "required": ["ample", "alpha", "corrections", "corrected_class"],
                    "additionalProperties": False,
                    "properties": {
                        "ample": {"type": "boolean"},
                        "alpha": {"type": "object"},
                        "corrections": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["curve", "coefficient"],
                                "additionalProperties": False,
                                "properties": {"curve": {"enum": ["Z", "Delta"]}, "coefficient": _RAT},
                            },
                        },
                        "corrected_class": {"anyOf": [{"type": "null"}, {"type": "object"}]},
                    },
                },
            },
        },
        "conclusions": {"type": "array", "items": {"type": "string"}},
        "provenance": {"type": "object", "additionalProperties": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


_VALIDATOR = jsonschema.Draft202012Validator(CERTIFICATE_SCHEMA)


def _opt(x: Optional[Rational]) -> Optional[str]:
    return None if x is None else format_rational(x)


def _number(x) -> Any:
    if isinstance(x, Surd):
        return format_rational(x.p) if x.is_rational else x.to_dict()
    return format_rational(x)


def build_certificate(g: int, d: int, t) -> dict:
    """Full certificate for ``L_t`` on C x C; raises for invalid families or t <= s_C."""
    fam = fm.new_family(g, d)
    t = fm.require_ample_t(fam, rat(t))
    data = fm.surface_data(fam, t)
    interval = fm.seshadri_interval(fam, t)
    decision = destabilizes(data, interval.lo)
    if not check_decision(data, interval.lo, decision):
        raise AssertionError("slope decision failed its re-check")
    try:
        mu_1 = mu_c(data, 1)
    except ArithmeticError:
        mu_1 = None

    limits = None
    if (fam.d - 1) ** 2 < fam.g:
        lim_mu, lim_mu1 = fm.limit_slopes(fam)
        if (lim_mu, lim_mu1) != fm.limit_slopes_closed_form(fam):
            raise AssertionError("limit slopes disagree with their closed forms")
        limits = {"mu": format_rational(lim_mu), "mu_1": format_rational(lim_mu1)}

    alpha = jf.alpha_class(fam, t)
    ample = jf.alpha_ample(fam, t, alpha)
    notes = [jf.MABUCHI_NOTE]
    corrections: list[dict] = []
    corrected = None
    if not ample:
        try:
            report = jf.correction_search(fam, t, integer_only=True, alpha=alpha)
        except NoCorrectionFound as exc:
            notes.append(f"no correction divisor found: {exc}")
        else:
            corrections = [
                {"curve": c.curve, "coefficient": format_rational(c.coefficient)}
                for c in report.corrections
            ]
            corrected = report.corrected_class(fam).to_dict()
            notes.append("correction divisors are not claimed to destabilise")

    conclusions = list(IMPLICATION_CHAIN) if decision.unstable else []
    if ample:
        conclusions.append(JFLOW_AMPLE_LABEL)
    if not fam.main_eligible:
        notes.append("outside 2 <= d-1 < sqrt(g): main instability theorem does not apply")

    return {
        "schema_version": SCHEMA_VERSION,
        "inputs": {"g": format_rational(g), "d": format_rational(d), "t": format_rational(t)},
        "quantities": {
            "s_C": format_rational(fam.s_C),
            "L2": format_rational(data.L2),
            "KL": format_rational(data.KL),
            "LZ": format_rational(data.LZ),
            "KZ": format_rational(data.KZ),
            "Z2": format_rational(data.Z2),
            "mu": format_rational(mu_variety(data)),
            "mu_1": _opt(mu_1),
            "Q": format_rational(fam.Q),
            "epsilon_lo": format_rational(interval.lo),
            "epsilon_hi": _number(interval.hi),
            "t_star": jf.t_star(fam).to_dict(),
        },
        "limits": limits,
        "verdicts": {
            "slope": {
                "verdict": decision.verdict.value,
                "witness_c": _opt(decision.witness_c),
                "mu_at_witness": _opt(decision.mu_at_witness),
            },
            "jflow": {
                "ample": ample,
                "alpha": alpha.to_dict(),
                "corrections": corrections,
                "corrected_class": corrected,
            },
        },
        "conclusions": conclusions,
        "provenance": dict(PROVENANCE),
        "notes": notes,
    }


def main_certificate(fam: fm.CurveFamily) -> dict:
    """Instability certificate for an eligible family at the searched ``t0``."""
    if not fam.main_eligible:
        raise fm.HypothesisNotSatisfied(
            f"(g, d) = ({fam.g}, {fam.d}) violates 2 <= d-1 < sqrt(g)"
        )
    if not (fam.Q < 0 and fam.Q <= -fam.g - 8):
        raise AssertionError(f"Q = {fam.Q} violates Q <= -g-8 < 0")
    t0, decision, _ = fm.find_t0(fam)
    cert = build_certificate(fam.g, fam.d, t0)
    if cert["verdicts"]["slope"]["verdict"] != decision.verdict.value:
        raise AssertionError("t0 search and certificate disagree")
    check = recheck_certificate(cert)
    if not check.ok:
        raise AssertionError(f"certificate failed its re-check: {check.message}")
    return cert


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerifyResult:
    status: int  # 0 ok, 1 mismatch, 2 schema violation
    field: Optional[str] = None
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == 0


def validate_schema(cert: Any) -> tuple[int, int, Rational]:
    """Structural check; returns the parsed inputs or raises SchemaViolation."""
    try:
        _VALIDATOR.validate(cert)
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaViolation(f"{path}: {exc.message}") from None
    if cert["schema_version"] != SCHEMA_VERSION:
        raise SchemaViolation(
            f"schema_version {cert['schema_version']} is not supported (expected {SCHEMA_VERSION})"
        )
    try:
        g = parse_rational(cert["inputs"]["g"])
        d = parse_rational(cert["inputs"]["d"])
        t = parse_rational(cert["inputs"]["t"])
    except SlopeStabError as exc:
        raise SchemaViolation(f"inputs: {exc}") from None
    if g.denominator != 1 or d.denominator != 1:
        raise SchemaViolation("inputs: g and d must be integers")
    return int(g), int(d), t


def first_difference(expected: Any, actual: Any, path: str = "") -> Optional[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        for key in expected:
            sub = f"{path}.{key}" if path else key
            if key not in actual:
                return sub
            diff = first_difference(expected[key], actual[key], sub)
            if diff is not None:
                return diff
        for key in actual:
            if key not in expected:
                return f"{path}.{key}" if path else key
        return None
    if isinstance(expected, list) and isinstance(actual, list):
        for i, (e, a) in enumerate(zip(expected, actual)):
            diff = first_difference(e, a, f"{path}[{i}]")
            if diff is not None:
                return diff
        if len(expected) != len(actual):
            return f"{path}[{min(len(expected), len(actual))}]"
        return None
    if type(expected) is not type(actual) or expected != actual:
        return path or "<root>"
    return None


def verify_certificate(cert: Any) -> VerifyResult:
    """Schema check, then :func:`recheck_certificate`."""
    try:
        g, d, t = validate_schema(cert)
    except SchemaViolation as exc:
        return VerifyResult(2, None, str(exc))
    return recheck_certificate(cert, (g, d, t))


def recheck_certificate(cert: dict, inputs: Optional[tuple[int, int, Rational]] = None) -> VerifyResult:
    """Rebuild from the inputs and compare every field; assumes a well-formed certificate."""
    if inputs is None:
        inp = cert["inputs"]
        g, d, t = (parse_rational(inp[k]) for k in ("g", "d", "t"))
        g, d = int(g), int(d)
    else:
        g, d, t = inputs
    try:
        expected = build_certificate(g, d, t)
    except SlopeStabError as exc:
        return VerifyResult(1, "inputs", f"inputs do not define a certificate: {type(exc).__name__}: {exc}")
    diff = first_difference(expected, cert)
    if diff is not None:
        return VerifyResult(1, diff, f"field {diff!r} does not match its recomputation")
    return VerifyResult(0, None, "certificate verified")


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2) + "\n"
