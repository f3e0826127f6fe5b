"""Certificates of extremal polytopes and their independent verification.

A certificate records everything needed to re-check a terminated run:
the sense ("R", "P", or "L"), a fingerprint of the input family, the
candidate word, its averaged spectral radius, the polytope vertices (in
the coordinates of the normalized family), any cone rays, and the run's
boundary tolerance.  Verification re-derives the normalization from the
family and the word and replays every membership test from scratch; it
never trusts engine state.

Serialization is canonical: keys appear in a fixed order and every float
is rendered with 17 significant digits, so equal certificates serialize
to identical text and round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .matrices import MatrixFamily, primitive_root_word, spectral_radius, word_matrix
from .membership import (
    antinorm_membership_ext,
    cone_ray_margin,
    norm_membership_P,
    norm_membership_R,
)
from .structure import spans_check

CERT_VERSION = 1
_MODES = ("R", "P", "L")


class CertificateFormatError(ValueError):
    """Raised when certificate text is malformed or missing fields."""


@dataclass(frozen=True)
class Certificate:
    version: int
    mode: str
    family_fingerprint: str
    word: Tuple[int, ...]
    rho_per_step: float
    vertices: Tuple[np.ndarray, ...]
    cone_H: Optional[Tuple[np.ndarray, ...]]
    iterations: int
    tolerance: float


@dataclass
class VerificationReport:
    verdict: bool
    worst_slack: float
    span_ok: bool
    rho_recomputed: float
    failures: List[str] = field(default_factory=list)


def _render_float(x: float) -> str:
    if not np.isfinite(x):
        raise CertificateFormatError("cannot serialize a non-finite float")
    return format(float(x), ".17g")


def _render(obj) -> str:
    if isinstance(obj, dict):
        parts = ("%s:%s" % (json.dumps(str(k)), _render(v)) for k, v in obj.items())
        return "{" + ",".join(parts) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _render_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise CertificateFormatError("cannot serialize %r" % (type(obj),))


def family_canonical_text(family: MatrixFamily) -> str:
    """Canonical serialization of a family used for fingerprinting."""
    payload = {
        "version": 1,
        "dim": family.dim,
        "matrices": [[[float(x) for x in row] for row in M]
                     for M in family.matrices],
    }
    return _render(payload)


def family_fingerprint(family: MatrixFamily) -> str:
    return hashlib.sha256(family_canonical_text(family).encode("ascii")).hexdigest()


def serialize(cert: Certificate) -> str:
    payload = {
        "version": int(cert.version),
        "mode": cert.mode,
        "family_fingerprint": cert.family_fingerprint,
        "word": [int(i) for i in cert.word],
        "rho_per_step": float(cert.rho_per_step),
        "vertices": [[float(x) for x in v] for v in cert.vertices],
        "cone_H": (None if cert.cone_H is None
                   else [[float(x) for x in h] for h in cert.cone_H]),
        "iterations": int(cert.iterations),
        "tolerance": float(cert.tolerance),
    }
    return _render(payload)


_REQUIRED = ("version", "mode", "family_fingerprint", "word", "rho_per_step",
             "vertices", "cone_H", "iterations", "tolerance")


def deserialize(text: str) -> Certificate:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError("certificate is not valid JSON: %s" % exc)
    if not isinstance(raw, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    for key in _REQUIRED:
        if key not in raw:
            raise CertificateFormatError("certificate is missing field %r" % key)
    if raw["mode"] not in _MODES:
        raise CertificateFormatError("unknown certificate mode %r" % (raw["mode"],))
    word = tuple(int(i) for i in raw["word"])
    if not word or any(i < 1 for i in word):
        raise CertificateFormatError("certificate word must be positive indices")
    vertices = tuple(np.asarray(v, dtype=float) for v in raw["vertices"])
    if not vertices:
        raise CertificateFormatError("certificate must contain vertices")
    cone = raw["cone_H"]
    cone_H = None if cone is None else tuple(np.asarray(h, dtype=float) for h in cone)
    return Certificate(
        version=int(raw["version"]),
        mode=str(raw["mode"]),
        family_fingerprint=str(raw["family_fingerprint"]),
        word=word,
        rho_per_step=float(raw["rho_per_step"]),
        vertices=vertices,
        cone_H=cone_H,
        iterations=int(raw["iterations"]),
        tolerance=float(raw["tolerance"]),
    )


def verify(family: MatrixFamily, cert: Certificate,
           tol: Optional[float] = None) -> VerificationReport:
    """Re-check a certificate against a family from first principles.

    The default tolerance is ten times the certificate's recorded run
    tolerance.  The verdict is valid only when the recomputed candidate
    radius matches, every vertex image passes its membership test, the
    cone (if any) is invariant, and the vertices span appropriately
    (full rank for mode R, a positive entry per coordinate otherwise).
    """
    failures: List[str] = []
    report = VerificationReport(False, float("-inf"), False, float("nan"), failures)
    if cert.version != CERT_VERSION:
        failures.append("unsupported certificate version %d" % cert.version)
        return report
    if cert.mode not in _MODES:
        failures.append("unknown mode %r" % (cert.mode,))
        return report
    if family_fingerprint(family) != cert.family_fingerprint:
        failures.append("family fingerprint mismatch")
        return report
    d = family.dim
    if any(v.shape != (d,) for v in cert.vertices):
        failures.append("vertex dimension mismatch")
        return report
    if any(not 1 <= i <= family.size for i in cert.word):
        failures.append("word index out of range")
        return report
    if primitive_root_word(cert.word) != cert.word:
        failures.append("word is not primitive")

    rho = spectral_radius(word_matrix(family, cert.word))
    per_step = rho ** (1.0 / len(cert.word)) if rho > 0.0 else 0.0
    report.rho_recomputed = per_step
    if per_step <= 0.0:
        failures.append("candidate product has zero spectral radius")
        return report
    if abs(per_step - cert.rho_per_step) > 1e-9 * max(1.0, per_step):
        failures.append("recorded averaged radius disagrees with recomputation")

    tolerance = 10.0 * cert.tolerance if tol is None else float(tol)
    scaled = family.scaled(1.0 / per_step)
    points = list(cert.vertices)
    worst = float("-inf")
    for idx, v in enumerate(points):
        for j in range(1, scaled.size + 1):
            z = scaled.matrix(j) @ v
            if float(np.max(np.abs(z))) <= 1e-14 * max(1.0, float(np.max(np.abs(v)))):
                failures.append("image of vertex %d under matrix %d is zero"
                                % (idx + 1, j))
                continue
            if cert.mode == "R":
                t = norm_membership_R(z, points)
                slack = 1.0 - t
            elif cert.mode == "P":
                t = norm_membership_P(z, points)
                slack = 1.0 - t
            else:
                t = antinorm_membership_ext(z, points, cert.cone_H)
                slack = t - 1.0 if np.isfinite(t) else float("inf")
            worst = max(worst, slack)
            if slack > tolerance:
                failures.append(
                    "vertex %d, matrix %d: membership value %.12g violates the "
                    "invariance margin" % (idx + 1, j, t))
    report.worst_slack = worst

    if cert.mode == "L" and cert.cone_H:
        for j in range(1, scaled.size + 1):
            A = scaled.matrix(j)
            for hidx, h in enumerate(cert.cone_H):
                margin = cone_ray_margin(A @ h, cert.cone_H)
                if not margin > 0.0:
                    failures.append("cone ray %d not strictly invariant under "
                                    "matrix %d" % (hidx + 1, j))

    span_mode = "linear" if cert.mode == "R" else "positive"
    report.span_ok = spans_check(points, span_mode)
    if not report.span_ok:
        failures.append("vertices fail the %s span requirement" % span_mode)

    report.verdict = not failures
    return report
