"""Value functions: enumeration, classical bounds, and polytope membership.

A value function assigns 0/1 to every outcome with exactly one 1 per
context and at most one 1 per partial context.  The convex hull of all
value functions is the noncontextual polytope; its linear maxima are the
classical bounds of noncontextuality inequalities.

Enumeration is a backtracking search over outcomes in canonical order with
constraint propagation: once a context has all but one member forced to 0
the last member is forced to 1, and a 1 anywhere in a (partial) context
forces 0 on the rest.  Results come back in lexicographic order of the 0/1
vectors.  Everything downstream of the enumerator is exact rational
arithmetic; there is no tolerance anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import ratlp
from .errors import (
    EmptyPolytopeError,
    NotAStateError,
    ResourceLimitError,
    ScenarioParseError,
    UnknownLabelError,
)
from .ratlp import parse_rational
from .scenario import Scenario, canonical_outcomes

__all__ = [
    "ValueFunction",
    "ClassicalBoundResult",
    "NoncontextualDecomposition",
    "MembershipVerdict",
    "DEFAULT_NODE_BUDGET",
    "enumerate_value_functions",
    "definite_intersection",
    "classical_bound",
    "is_noncontextual_state",
    "brute_force_antiset_bound",
    "parse_state_json",
]

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class ValueFunction:
    """A total 0/1 assignment, stored over the canonical outcome order."""

    labels: tuple[str, ...]
    values: tuple[int, ...]

    def __getitem__(self, label: str) -> int:
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise UnknownLabelError(f"unknown outcome {label!r}") from None

    @property
    def assignment(self) -> dict[str, int]:
        return dict(zip(self.labels, self.values))

    def support(self) -> tuple[str, ...]:
        return tuple(a for a, v in zip(self.labels, self.values) if v == 1)


@dataclass(frozen=True)
class ClassicalBoundResult:
    bound: Fraction
    maximizer: ValueFunction
    value_function_count: int


@dataclass(frozen=True)
class NoncontextualDecomposition:
    """Convex weights over value functions reproducing a state exactly."""

    weights: tuple[tuple[ValueFunction, Fraction], ...]

    def induced_state(self) -> dict[str, Fraction]:
        if not self.weights:
            return {}
        labels = self.weights[0][0].labels
        state = {a: Fraction(0) for a in labels}
        for vf, p in self.weights:
            for a, v in zip(vf.labels, vf.values):
                if v:
                    state[a] += p
        return state


@dataclass(frozen=True)
class MembershipVerdict:
    status: str  # "member" | "not-member" | "empty-polytope"
    decomposition: NoncontextualDecomposition | None = None

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def _indexed_sets(s: Scenario, labels: tuple[str, ...]):
    index = {a: i for i, a in enumerate(labels)}
    stray = sorted({a for m in s.all_sets() for a in m} - set(labels))
    if stray:
        raise UnknownLabelError(f"scenario sets mention unknown outcomes: {stray}")
    sets = []
    for members in s.contexts:
        sets.append((True, tuple(sorted(index[a] for a in members))))
    for members in s.partial_contexts:
        sets.append((False, tuple(sorted(index[a] for a in members))))
    membership: list[list[int]] = [[] for _ in labels]
    for si, (_, members) in enumerate(sets):
        for i in members:
            membership[i].append(si)
    return sets, membership


def enumerate_value_functions(
    s: Scenario, *, node_budget: int | None = None
) -> list[ValueFunction]:
    """All value functions, ordered lexicographically by their 0/1 vectors.

    Raises ResourceLimitError when the search visits more nodes than the
    budget allows (default 10^8).
    """
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    labels = canonical_outcomes(s)
    n = len(labels)
    sets, membership = _indexed_sets(s, labels)
    is_context = [kind for kind, _ in sets]
    members_of = [members for _, members in sets]

    values = [-1] * n
    ones = [0] * len(sets)
    unassigned = [len(m) for m in members_of]
    trail: list[int] = []
    solutions: list[tuple[int, ...]] = []
    nodes = 0

    def propagate(i: int, val: int) -> bool:
        pending = [(i, val)]
        while pending:
            i, val = pending.pop()
            if values[i] != -1:
                if values[i] != val:
                    return False
                continue
            values[i] = val
            trail.append(i)
            # update every counter before conflict checks so that undo()
            # stays consistent even when we bail out mid-propagation
            for si in membership[i]:
                ones[si] += val
                unassigned[si] -= 1
            for si in membership[i]:
                if ones[si] > 1:
                    return False
                members = members_of[si]
                if ones[si] == 1:
                    for j in members:
                        if values[j] == -1:
                            pending.append((j, 0))
                elif is_context[si]:
                    if unassigned[si] == 0:
                        return False
                    if unassigned[si] == 1:
                        forced = next(j for j in members if values[j] == -1)
                        pending.append((forced, 1))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            i = trail.pop()
            for si in membership[i]:
                ones[si] -= values[i]
                unassigned[si] += 1
            values[i] = -1

    def dfs(start: int) -> None:
        nonlocal nodes
        i = start
        while i < n and values[i] != -1:
            i += 1
        if i == n:
            solutions.append(tuple(values))
            return
        for val in (0, 1):
            nodes += 1
            if nodes > budget:
                raise ResourceLimitError(
                    f"value-function search exceeded {budget} nodes"
                )
            mark = len(trail)
            if propagate(i, val):
                dfs(i + 1)
            undo(mark)

    dfs(0)
    solutions.sort()
    return [ValueFunction(labels, vec) for vec in solutions]


def _check_labels(s: Scenario, labels: Iterable[str]) -> None:
    unknown = sorted(set(labels) - set(s.outcomes))
    if unknown:
        raise UnknownLabelError(f"unknown outcome labels: {unknown}")


def definite_intersection(
    s: Scenario, definite: Iterable[str], *, node_budget: int | None = None
) -> list[ValueFunction]:
    """Value functions assigning 1 to every label in `definite`."""
    wanted = set(definite)
    _check_labels(s, wanted)
    return [
        vf
        for vf in enumerate_value_functions(s, node_budget=node_budget)
        if all(vf[a] == 1 for a in wanted)
    ]


def classical_bound(
    s: Scenario, coeffs: Mapping[str, object], *, node_budget: int | None = None
) -> ClassicalBoundResult:
    """Exact maximum of sum(c_a * v(a)) over all value functions.

    Labels missing from `coeffs` count as coefficient 0.  Ties are broken
    by enumeration order.  Raises EmptyPolytopeError when the scenario has
    no value functions at all.
    """
    _check_labels(s, coeffs.keys())
    vfs = enumerate_value_functions(s, node_budget=node_budget)
    if not vfs:
        raise EmptyPolytopeError("scenario has no value functions; bound undefined")
    weights = {a: parse_rational(c) for a, c in coeffs.items()}
    best = None
    best_vf = None
    for vf in vfs:
        total = sum(
            (weights.get(a, Fraction(0)) for a, v in zip(vf.labels, vf.values) if v),
            Fraction(0),
        )
        if best is None or total > best:
            best = total
            best_vf = vf
    return ClassicalBoundResult(best, best_vf, len(vfs))


def _check_state(s: Scenario, state: Mapping[str, Fraction]) -> dict[str, Fraction]:
    _check_labels(s, state.keys())
    full = {a: Fraction(0) for a in s.outcomes}
    for a, value in state.items():
        full[a] = parse_rational(value)
    for a, value in full.items():
        if not 0 <= value <= 1:
            raise NotAStateError(f"omega({a}) = {value} lies outside [0, 1]")
    for members in s.contexts:
        total = sum((full[a] for a in members), Fraction(0))
        if total != 1:
            raise NotAStateError(
                f"context {sorted(members)} sums to {total}, expected exactly 1"
            )
    for members in s.partial_contexts:
        total = sum((full[a] for a in members), Fraction(0))
        if total > 1:
            raise NotAStateError(
                f"partial context {sorted(members)} sums to {total} > 1"
            )
    return full


def is_noncontextual_state(
    s: Scenario, state: Mapping[str, object], *, node_budget: int | None = None
) -> MembershipVerdict:
    """Exact membership test for the noncontextual polytope.

    Feasibility of omega = sum_v p_v v with p a probability vector is
    decided by the rational LP solver over the full enumeration of value
    functions; a witness decomposition is returned when one exists.
    Raises NotAStateError when the input is not a state at all.
    """
    full = _check_state(s, state)
    vfs = enumerate_value_functions(s, node_budget=node_budget)
    if not vfs:
        return MembershipVerdict("empty-polytope")
    labels = canonical_outcomes(s)
    variables = [f"p{k}" for k in range(len(vfs))]
    rows = []
    for i, a in enumerate(labels):
        coeffs = tuple(Fraction(vf.values[i]) for vf in vfs)
        rows.append((coeffs, ratlp.EQ, full[a]))
    rows.append((tuple([Fraction(1)] * len(vfs)), ratlp.EQ, Fraction(1)))
    lp = ratlp.LinearProgram.build(variables, rows=rows)
    result = ratlp.solve(lp)
    if result.status != "optimal":
        return MembershipVerdict("not-member")
    weights = tuple(
        (vf, p) for vf, p in zip(vfs, result.point) if p != 0
    )
    decomposition = NoncontextualDecomposition(weights)
    if decomposition.induced_state() != full:
        raise RuntimeError("decomposition failed to reproduce the state")
    return MembershipVerdict("member", decomposition)


def brute_force_antiset_bound(
    s: Scenario, members: Iterable[str], *, node_budget: int | None = None
) -> Fraction:
    """Max number of `members` outcomes any single value function sets to 1.

    This is the independent enumeration oracle for the antiset bound: for
    scenarios that embed all the antidistinguishing contexts the result is
    at most 1, but on bare scenarios it can be larger.
    """
    wanted = set(members)
    _check_labels(s, wanted)
    vfs = enumerate_value_functions(s, node_budget=node_budget)
    if not vfs:
        raise EmptyPolytopeError("scenario has no value functions; bound undefined")
    return Fraction(
        max(sum(v for a, v in zip(vf.labels, vf.values) if a in wanted) for vf in vfs)
    )


def parse_state_json(doc) -> dict[str, Fraction]:
    """Parse {"state": {label: "p/q" | number}} into exact rationals."""
    if not isinstance(doc, dict) or set(doc) != {"state"} or not isinstance(doc["state"], dict):
        raise ScenarioParseError('state document must be {"state": {label: value}}')
    out = {}
    for label, value in doc["state"].items():
        try:
            out[label] = parse_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioParseError(f"bad rational for {label!r}: {value!r}") from exc
    return out
