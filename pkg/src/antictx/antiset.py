"""Pairwise antisets and the noncontextuality inequalities they generate.

A *strong* pairwise antiset is a set W of states such that every pair from
W together with every element of a fixed orthonormal basis (the principal
context) is antidistinguishable; a *weak* antiset fixes a single principal
outcome instead.  Verified antisets yield the inequality

    sum_{a in W} omega(a) <= 1

for noncontextual states: state-independent in the strong case, and
conditional on omega(principal) = 1 in the weak case.  Triples are always
checked through the overlap criterion on Gram data; no antidistinguishing
measurement is ever constructed.

Inequalities can be combined: added together, extended by a context
normalization (which raises the bound by exactly 1 for every state), or
extended by an outcome that a side constraint already pins to 1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Sequence

from ._cliques import maximal_cliques
from .antidist import AntidistVerdict, TripleOverlaps, triple_antidistinguishable
from .errors import (
    ConstraintMismatchError,
    FailedTripleError,
    MissingLabelError,
    NotABasisError,
    ScenarioParseError,
)
from .quantum import DensityOperator, PureStateSet, default_tolerance, gram, quantum_value
from .ratlp import format_rational, parse_rational

__all__ = [
    "PairwiseAntiset",
    "NoncontextualityInequality",
    "EvaluationReport",
    "verify_strong_antiset",
    "verify_weak_antiset",
    "find_strong_antisets",
    "inequality_from_antiset",
    "add_inequality",
    "add_context_normalization",
    "add_constrained_outcome",
    "evaluate_inequality",
    "inequality_to_json",
    "load_inequality",
]

TripleLogEntry = tuple[str, str, str, AntidistVerdict]


def _tol(tol: float | None) -> float:
    return default_tolerance() if tol is None else float(tol)


@dataclass(frozen=True)
class PairwiseAntiset:
    kind: str  # "strong" | "weak"
    members: tuple[str, ...]
    principal: tuple[str, ...] | str
    triple_log: tuple[TripleLogEntry, ...]


@dataclass(frozen=True)
class NoncontextualityInequality:
    """Coefficients, exact classical bound, and optional side constraints."""

    coefficients: tuple[tuple[str, Fraction], ...]  # sorted by label
    bound: Fraction
    kind: str  # "state-independent" | "state-dependent"
    side_constraints: tuple[tuple[str, Fraction], ...]
    provenance: str

    def coefficient_map(self) -> dict[str, Fraction]:
        return dict(self.coefficients)


def _check_basis(states: PureStateSet, principal: Sequence[str], tol: float) -> None:
    if len(principal) != states.dimension:
        raise NotABasisError(
            f"principal context has {len(principal)} members, expected dimension {states.dimension}"
        )
    g = gram(states.subset(principal))
    for i in range(len(principal)):
        for j in range(i + 1, len(principal)):
            if g.overlaps[i, j] > tol:
                raise NotABasisError(
                    f"principal members {principal[i]!r} and {principal[j]!r} are not orthogonal "
                    f"(|<.|.>|^2 = {g.overlaps[i, j]!r})"
                )


def _checked_triples(
    g, triples: Iterable[tuple[str, str, str]], tol: float
) -> tuple[TripleLogEntry, ...]:
    log = []
    for a, b, c in triples:
        verdict = triple_antidistinguishable(TripleOverlaps.from_gram(g, a, b, c), tol)
        if not verdict.antidistinguishable:
            raise FailedTripleError((a, b, c), verdict)
        log.append((a, b, c, verdict))
    return tuple(log)


def verify_strong_antiset(
    states: PureStateSet,
    members: Iterable[str],
    principal: Sequence[str],
    tol: float | None = None,
) -> PairwiseAntiset:
    """Check every (pair from W) x (principal basis element) triple.

    Fails fast with FailedTripleError on the first triple (in lexicographic
    order) that is not antidistinguishable.
    """
    tol = _tol(tol)
    w = tuple(sorted(set(members)))
    principal = tuple(principal)
    if len(w) < 2:
        raise ValueError("an antiset needs at least two members")
    overlap = set(w) & set(principal)
    if overlap:
        raise ValueError(f"members and principal context overlap: {sorted(overlap)}")
    _check_basis(states, principal, tol)
    g = gram(states.subset(w + principal))
    triples = sorted(
        (a, b, c) for a, b in itertools.combinations(w, 2) for c in principal
    )
    log = _checked_triples(g, triples, tol)
    return PairwiseAntiset("strong", w, principal, log)


def verify_weak_antiset(
    states: PureStateSet,
    members: Iterable[str],
    principal: str,
    tol: float | None = None,
) -> PairwiseAntiset:
    """Check every pair from W against the single principal outcome."""
    tol = _tol(tol)
    w = tuple(sorted(set(members)))
    if len(w) < 2:
        raise ValueError("an antiset needs at least two members")
    if principal in w:
        raise ValueError(f"principal outcome {principal!r} must not be a member of W")
    states.index(principal)  # raises UnknownLabelError if absent
    g = gram(states.subset(w + (principal,)))
    triples = sorted((a, b, principal) for a, b in itertools.combinations(w, 2))
    log = _checked_triples(g, triples, tol)
    return PairwiseAntiset("weak", w, principal, log)


def find_strong_antisets(
    states: PureStateSet,
    candidate_pool: Iterable[str],
    principal: Sequence[str],
    tol: float | None = None,
) -> list[PairwiseAntiset]:
    """Maximal strong antisets within a candidate pool.

    Builds the pairwise-compatibility graph (an edge when all basis triples
    pass) and returns its maximal cliques of size >= 2 in canonical order.
    """
    tol = _tol(tol)
    pool = tuple(sorted(set(candidate_pool)))
    principal = tuple(principal)
    overlap = set(pool) & set(principal)
    if overlap:
        raise ValueError(f"pool and principal context overlap: {sorted(overlap)}")
    _check_basis(states, principal, tol)
    g = gram(states.subset(pool + principal))

    def compatible(a: str, b: str) -> bool:
        return all(
            triple_antidistinguishable(TripleOverlaps.from_gram(g, a, b, c), tol).antidistinguishable
            for c in principal
        )

    n = len(pool)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if compatible(pool[i], pool[j]):
                adjacency[i].add(j)
                adjacency[j].add(i)
    antisets = []
    for clique in maximal_cliques(n, adjacency):
        if len(clique) < 2:
            continue
        members = [pool[i] for i in clique]
        antisets.append(verify_strong_antiset(states, members, principal, tol))
    return antisets


def inequality_from_antiset(aset: PairwiseAntiset) -> NoncontextualityInequality:
    """The antiset inequality: unit coefficients on W, bound 1."""
    coefficients = tuple((a, Fraction(1)) for a in aset.members)
    if aset.kind == "strong":
        principal = ",".join(aset.principal)
        return NoncontextualityInequality(
            coefficients=coefficients,
            bound=Fraction(1),
            kind="state-independent",
            side_constraints=(),
            provenance=(
                f"strong pairwise antiset of {len(aset.members)} outcomes over principal "
                f"context {{{principal}}}; {len(aset.triple_log)} antidistinguishable triples"
            ),
        )
    return NoncontextualityInequality(
        coefficients=coefficients,
        bound=Fraction(1),
        kind="state-dependent",
        side_constraints=((aset.principal, Fraction(1)),),
        provenance=(
            f"weak pairwise antiset of {len(aset.members)} outcomes with principal "
            f"outcome {aset.principal}; {len(aset.triple_log)} antidistinguishable triples"
        ),
    )


def _merge_side_constraints(
    left: tuple[tuple[str, Fraction], ...], right: tuple[tuple[str, Fraction], ...]
) -> tuple[tuple[str, Fraction], ...]:
    merged = dict(left)
    for label, value in right:
        if label in merged and merged[label] != value:
            raise ConstraintMismatchError(
                f"conflicting side constraints on {label!r}: {merged[label]} vs {value}"
            )
        merged[label] = value
    return tuple(sorted(merged.items()))


def _with_kind(
    coefficients: dict[str, Fraction],
    bound: Fraction,
    side_constraints: tuple[tuple[str, Fraction], ...],
    provenance: str,
) -> NoncontextualityInequality:
    return NoncontextualityInequality(
        coefficients=tuple(sorted(coefficients.items())),
        bound=bound,
        kind="state-dependent" if side_constraints else "state-independent",
        side_constraints=side_constraints,
        provenance=provenance,
    )


def add_inequality(
    left: NoncontextualityInequality, right: NoncontextualityInequality
) -> NoncontextualityInequality:
    """Coefficient-wise sum; bounds add."""
    coefficients = dict(left.coefficients)
    for label, c in right.coefficients:
        coefficients[label] = coefficients.get(label, Fraction(0)) + c
    return _with_kind(
        coefficients,
        left.bound + right.bound,
        _merge_side_constraints(left.side_constraints, right.side_constraints),
        f"sum of [{left.provenance}] and [{right.provenance}]",
    )


def add_context_normalization(
    ineq: NoncontextualityInequality, context: Iterable[str]
) -> NoncontextualityInequality:
    """Add +1 on every outcome of a context and +1 to the bound.

    Valid for every state because context probabilities sum to exactly 1.
    """
    members = tuple(sorted(set(context)))
    if not members:
        raise ConstraintMismatchError("context normalization needs a nonempty context")
    coefficients = dict(ineq.coefficients)
    for label in members:
        coefficients[label] = coefficients.get(label, Fraction(0)) + 1
    return _with_kind(
        coefficients,
        ineq.bound + 1,
        ineq.side_constraints,
        f"{ineq.provenance}; plus normalization of context {{{','.join(members)}}}",
    )


def add_constrained_outcome(
    ineq: NoncontextualityInequality, label: str
) -> NoncontextualityInequality:
    """Add +1 on an outcome already pinned to 1 by a side constraint."""
    pinned = dict(ineq.side_constraints)
    if pinned.get(label) != 1:
        raise ConstraintMismatchError(
            f"outcome {label!r} has no side constraint pinning it to 1"
        )
    coefficients = dict(ineq.coefficients)
    coefficients[label] = coefficients.get(label, Fraction(0)) + 1
    return _with_kind(
        coefficients,
        ineq.bound + 1,
        ineq.side_constraints,
        f"{ineq.provenance}; plus constrained outcome {label}",
    )


@dataclass(frozen=True)
class EvaluationReport:
    lhs: float
    bound: Fraction
    violated: bool
    margin: float  # lhs - bound
    side_constraints_satisfied: bool


def evaluate_inequality(
    ineq: NoncontextualityInequality,
    states: PureStateSet,
    rho: DensityOperator,
    tol: float | None = None,
) -> EvaluationReport:
    """Evaluate the quantum left-hand side against the classical bound.

    `violated` requires both lhs > bound + tol and every side constraint
    holding within tolerance.
    """
    tol = _tol(tol)
    missing = sorted(
        {label for label, _ in ineq.coefficients} - set(states.labels)
    )
    if missing:
        raise MissingLabelError(f"inequality labels missing from the state set: {missing}")
    lhs = quantum_value(states, {a: float(c) for a, c in ineq.coefficients}, rho)
    constraints_ok = True
    for label, value in ineq.side_constraints:
        actual = quantum_value(states, {label: 1.0}, rho)
        if abs(actual - float(value)) > tol:
            constraints_ok = False
    bound = ineq.bound
    return EvaluationReport(
        lhs=lhs,
        bound=bound,
        violated=lhs > float(bound) + tol and constraints_ok,
        margin=lhs - float(bound),
        side_constraints_satisfied=constraints_ok,
    )


def inequality_to_json(ineq: NoncontextualityInequality) -> bytes:
    doc = {
        "coefficients": {a: format_rational(c) for a, c in ineq.coefficients},
        "bound": format_rational(ineq.bound),
        "kind": ineq.kind,
        "side_constraints": [
            {"label": a, "value": format_rational(v)} for a, v in ineq.side_constraints
        ],
        "provenance": ineq.provenance,
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_inequality(source: bytes | str | IO) -> NoncontextualityInequality:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioParseError(f"not valid JSON: {exc}") from exc
    expected = {"coefficients", "bound", "kind", "side_constraints", "provenance"}
    if not isinstance(doc, dict) or set(doc) - expected:
        raise ScenarioParseError(f"inequality document keys must be within {sorted(expected)}")
    try:
        coefficients = tuple(
            sorted((a, parse_rational(c)) for a, c in doc["coefficients"].items())
        )
        side = tuple(
            (entry["label"], parse_rational(entry["value"]))
            for entry in doc.get("side_constraints", [])
        )
        return NoncontextualityInequality(
            coefficients=coefficients,
            bound=parse_rational(doc["bound"]),
            kind=doc.get("kind", "state-dependent" if side else "state-independent"),
            side_constraints=side,
            provenance=doc.get("provenance", ""),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
        raise ScenarioParseError(f"malformed inequality document: {exc}") from exc
