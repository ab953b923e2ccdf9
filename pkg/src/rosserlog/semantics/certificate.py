"""Verified countermodels.

A Certificate is only ever built by :func:`certify`, which runs the frame
validator and the model checker itself; nothing is taken on trust from
the search that produced the model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..syntax import Formula
from .frames import ValidationReport, is_nontrivial, is_serial, validate_gro_frame
from .io import model_to_json
from .models import GRoModel, evaluate


class CertificateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Certificate:
    model: GRoModel
    focus: int
    formula: Formula
    logic: str
    report: ValidationReport
    refuted: bool
    nontrivial: bool | None = None
    serial: bool | None = None
    meta: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        ok = self.report.ok and self.refuted
        if self.logic == "gr":
            ok = ok and bool(self.nontrivial) and bool(self.serial)
        return ok

    @property
    def size(self) -> int:
        return len(self.model.worlds)

    def to_json(self) -> dict[str, Any]:
        out = model_to_json(self.model)
        out.update({"focus": self.focus, "formula": self.formula.text, "logic": self.logic,
                    "verified": self.verified})
        if self.meta:
            out["meta"] = self.meta
        return out


def certify(m: GRoModel, focus: int, formula: Formula, logic: str, meta: dict | None = None) -> Certificate:
    """Check m with fresh validation and evaluation; raise unless it refutes formula."""
    fresh = GRoModel(m.frame, dict(m.valuation))
    report = validate_gro_frame(fresh.frame)
    if not report.ok:
        raise CertificateError(f"countermodel frame is invalid: {report.first_failure.describe()}")
    refuted = not evaluate(fresh, focus, formula)
    nontrivial = serial = None
    if logic == "gr":
        nontrivial, serial = is_nontrivial(fresh.frame), is_serial(fresh.frame)
    cert = Certificate(fresh, focus, formula, logic, report, refuted, nontrivial, serial, dict(meta or {}))
    if not cert.verified:
        raise CertificateError(f"model does not refute {formula.text} at world {focus} for {logic}")
    return cert


def recheck(cert: Certificate) -> bool:
    """Independent re-verification of an existing certificate."""
    try:
        certify(cert.model, cert.focus, cert.formula, cert.logic)
    except CertificateError:
        return False
    return True
