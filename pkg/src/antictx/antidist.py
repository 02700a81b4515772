"""Antidistinguishability of triples, certificates, and outcome sets.

A set of states is antidistinguishable when some measurement can always
rule out one of them with certainty.  For three pure states the decision
reduces to their squared pairwise overlaps (x1, x2, x3):

    x1 + x2 + x3 < 1          (strictly), and
    (x1 + x2 + x3 - 1)^2 >= 4 * x1 * x2 * x3.

The quadratic condition is tested with a small negative slack because the
interesting families sit exactly on its boundary.  A simpler sufficient
condition is max(x1, x2, x3) <= 1/4.

The combinatorial counterpart replaces measurements by contexts: a set A
of outcomes is antidistinguishable when some context M supplies a distinct
"blocker" for each member of A (an outcome co-occurring with it in some
(partial) context), and every remaining outcome of M co-occurs with every
member of A.  The search here additionally requires all named outcomes to
be pairwise distinct where the informal definition is silent; without that
refinement a classical scenario would make singletons antidistinguishable
while still possessing definite value functions.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import (
    DimensionMismatchError,
    OverlapRangeError,
    ScenarioParseError,
    UnknownLabelError,
)
from .quantum import GramData, PureStateSet, default_tolerance, gram, load_states
from .scenario import Scenario

__all__ = [
    "TripleOverlaps",
    "AntidistVerdict",
    "AntidistCertificate",
    "CertificateReport",
    "ScenarioAntidistVerdict",
    "triple_antidistinguishable",
    "corollary_check",
    "verify_certificate",
    "scenario_antidistinguishable",
    "load_certificate",
]


def _tol(tol: float | None) -> float:
    return default_tolerance() if tol is None else float(tol)


@dataclass(frozen=True)
class TripleOverlaps:
    """Squared overlaps of a triple: x1 = |<a2|a3>|^2, x2 = |<a1|a3>|^2,
    x3 = |<a1|a2>|^2.  Entries are clamped to [0, 1] on construction."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        tol = _tol(None)
        for name, x in (("x1", self.x1), ("x2", self.x2), ("x3", self.x3)):
            if x < -tol or x > 1.0 + tol:
                raise OverlapRangeError(f"{name} = {x!r} lies outside [0, 1]")
        object.__setattr__(self, "x1", min(1.0, max(0.0, self.x1)))
        object.__setattr__(self, "x2", min(1.0, max(0.0, self.x2)))
        object.__setattr__(self, "x3", min(1.0, max(0.0, self.x3)))

    @staticmethod
    def from_gram(g: GramData, a: str, b: str, c: str) -> "TripleOverlaps":
        return TripleOverlaps(g.overlap(b, c), g.overlap(a, c), g.overlap(a, b))

    @staticmethod
    def from_states(states: PureStateSet, a: str, b: str, c: str) -> "TripleOverlaps":
        return TripleOverlaps.from_gram(gram(states.subset([a, b, c])), a, b, c)


@dataclass(frozen=True)
class AntidistVerdict:
    antidistinguishable: bool
    via: str  # "overlap-criterion" | "combinatorial" | "certificate"
    margin_strict: float  # 1 - x1 - x2 - x3
    margin_quadratic: float  # (x1 + x2 + x3 - 1)^2 - 4 x1 x2 x3
    boundary: bool  # quadratic condition holds with equality within tolerance


def triple_antidistinguishable(x: TripleOverlaps, tol: float | None = None) -> AntidistVerdict:
    """Decide antidistinguishability of three pure states from overlaps.

    The sum condition is strict (margin > tol); the quadratic condition is
    accepted down to -tol so boundary families count as antidistinguishable.
    """
    tol = _tol(tol)
    total = x.x1 + x.x2 + x.x3
    margin_strict = 1.0 - total
    margin_quadratic = (total - 1.0) ** 2 - 4.0 * x.x1 * x.x2 * x.x3
    return AntidistVerdict(
        antidistinguishable=margin_strict > tol and margin_quadratic >= -tol,
        via="overlap-criterion",
        margin_strict=margin_strict,
        margin_quadratic=margin_quadratic,
        boundary=abs(margin_quadratic) <= tol,
    )


def corollary_check(x: TripleOverlaps, tol: float | None = None) -> bool:
    """Sufficient condition only: every squared overlap at most 1/4."""
    tol = _tol(tol)
    return max(x.x1, x.x2, x.x3) <= 0.25 + tol


@dataclass(frozen=True)
class AntidistCertificate:
    """An explicit antidistinguishing basis for a list of target states.

    basis vector j (for j < n) must be orthogonal to target j; basis
    vectors beyond n must be orthogonal to every target.
    """

    targets: tuple[str, ...]
    basis: PureStateSet


@dataclass(frozen=True)
class CertificateReport:
    valid: bool
    residual_orthonormality: float
    residual_matched: float  # max |<basis_j|target_j>| over j < n
    residual_extra: float  # max |<basis_k|target_j>| over k >= n

    def max_residual(self) -> float:
        return max(self.residual_orthonormality, self.residual_matched, self.residual_extra)


def verify_certificate(
    targets: PureStateSet, cert: AntidistCertificate, tol: float | None = None
) -> CertificateReport:
    """Check an explicit certificate against its defining equations."""
    tol = _tol(tol)
    n = len(cert.targets)
    d = cert.basis.dimension
    if targets.dimension != d:
        raise DimensionMismatchError("targets and basis live in different dimensions")
    if n > d:
        raise DimensionMismatchError(f"{n} targets cannot be antidistinguished by {d} basis vectors")
    if len(cert.basis) != d:
        raise DimensionMismatchError(f"basis must have exactly {d} vectors")
    target_vecs = [targets.vector(a) for a in cert.targets]
    b = cert.basis.vectors
    identity = np.eye(d)
    residual_orth = float(np.abs(b @ b.conj().T - identity).max())
    residual_matched = max(
        abs(np.vdot(b[j], target_vecs[j])) for j in range(n)
    )
    residual_extra = 0.0
    for k in range(n, d):
        for j in range(n):
            residual_extra = max(residual_extra, abs(np.vdot(b[k], target_vecs[j])))
    valid = residual_orth <= tol and residual_matched <= tol and residual_extra <= tol
    return CertificateReport(valid, residual_orth, float(residual_matched), float(residual_extra))


@dataclass(frozen=True)
class ScenarioAntidistVerdict:
    antidistinguishable: bool
    context: tuple[str, ...] | None = None  # the witnessing context M, sorted
    blockers: tuple[tuple[str, str], ...] = ()  # (a_j, a_j_perp) pairs
    pair_contexts: tuple[tuple[str, str, tuple[str, ...]], ...] = ()  # (a, b, set containing both)
    via: str = "combinatorial"


def scenario_antidistinguishable(s: Scenario, members: Iterable[str]) -> ScenarioAntidistVerdict:
    """Exhaustive search for a combinatorial antidistinguishability witness.

    Scans contexts in canonical order and, within each, injective
    assignments of blockers in lexicographic order, so the first witness is
    deterministic.
    """
    targets = tuple(sorted(set(members)))
    if not targets:
        raise UnknownLabelError("the outcome set to test must be nonempty")
    unknown = sorted(set(targets) - set(s.outcomes))
    if unknown:
        raise UnknownLabelError(f"unknown outcome labels: {unknown}")

    all_sets = [tuple(sorted(t)) for t in s.all_sets()]
    all_sets.sort()

    def co_context(a: str, b: str) -> tuple[str, ...] | None:
        for t in all_sets:
            if a in t and b in t:
                return t
        return None

    n = len(targets)
    for context in sorted(tuple(sorted(m)) for m in s.contexts):
        if len(context) < n:
            continue
        for blockers in itertools.permutations(context, n):
            assignment = []
            ok = True
            for a, perp in zip(targets, blockers):
                if a == perp:
                    ok = False
                    break
                witness = co_context(a, perp)
                if witness is None:
                    ok = False
                    break
                assignment.append((a, perp, witness))
            if not ok:
                continue
            leftover = [c for c in context if c not in set(blockers)]
            pair_contexts = [(a, perp, witness) for a, perp, witness in assignment]
            for c in leftover:
                for a in targets:
                    if c == a:
                        ok = False
                        break
                    witness = co_context(c, a)
                    if witness is None:
                        ok = False
                        break
                    pair_contexts.append((a, c, witness))
                if not ok:
                    break
            if ok:
                return ScenarioAntidistVerdict(
                    antidistinguishable=True,
                    context=context,
                    blockers=tuple((a, perp) for a, perp, _ in assignment),
                    pair_contexts=tuple(pair_contexts),
                )
    return ScenarioAntidistVerdict(antidistinguishable=False)


def load_certificate(source: bytes | str | IO) -> tuple[PureStateSet, AntidistCertificate]:
    """Certificate JSON: the vector-set schema plus a "targets" label list.

    States named in "targets" (in order) are the targets; the remaining
    states, in file order, form the basis.  Returns (targets, certificate).
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "targets" not in doc:
        raise ScenarioParseError("certificate document needs a 'targets' key")
    target_labels = doc.pop("targets")
    if not isinstance(target_labels, list) or not all(isinstance(x, str) for x in target_labels):
        raise ScenarioParseError("'targets' must be a list of labels")
    states = load_states(json.dumps(doc))
    target_set = set(target_labels)
    unknown = target_set - set(states.labels)
    if unknown:
        raise ScenarioParseError(f"targets not present in states: {sorted(unknown)}")
    basis_labels = [a for a in states.labels if a not in target_set]
    targets = states.subset(target_labels)
    basis = states.subset(basis_labels)
    return targets, AntidistCertificate(tuple(target_labels), basis)
