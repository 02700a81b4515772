"""Complex linear algebra over labeled pure states.

This is the floating-point layer of the package: squared overlaps, frame
operators, quantum values of coefficient functionals, and the construction
of contextuality scenarios from the orthogonality graph of a vector set.
The abstract layer (scenarios, value functions, bounds) stays exact; the
boundary between the two is the orthogonality decision, which is guarded
by a tolerance band so that a near-miss overlap raises instead of silently
misclassifying.

The global default tolerance is 1e-9 and can be changed with
`set_default_tolerance`; every construction in the source material has
overlaps that are exactly 0 or at least 1/9, so the default separates
cleanly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from ._cliques import maximal_cliques
from .errors import (
    DimensionMismatchError,
    DuplicateRayError,
    ScenarioParseError,
    ToleranceAmbiguityError,
    UnknownLabelError,
)
from .scenario import Scenario, make_scenario

__all__ = [
    "PureStateSet",
    "DensityOperator",
    "GramData",
    "default_tolerance",
    "set_default_tolerance",
    "gram",
    "frame_operator",
    "quantum_value",
    "scenario_from_states",
    "load_states",
    "save_states",
]

_DEFAULT_TOLERANCE = 1e-9


def default_tolerance() -> float:
    return _DEFAULT_TOLERANCE


def set_default_tolerance(value: float) -> None:
    """Set the package-wide tolerance for norm/orthogonality/frame checks."""
    global _DEFAULT_TOLERANCE
    if value <= 0:
        raise ValueError("tolerance must be positive")
    _DEFAULT_TOLERANCE = float(value)


def _tol(tol: float | None) -> float:
    return _DEFAULT_TOLERANCE if tol is None else float(tol)


@dataclass(frozen=True, eq=False)
class PureStateSet:
    """Labeled unit vectors in C^d."""

    dimension: int
    labels: tuple[str, ...]
    vectors: np.ndarray  # shape (n, d), complex

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("state labels must be unique")
        if self.vectors.shape != (len(self.labels), self.dimension):
            raise DimensionMismatchError(
                f"expected vectors of shape {(len(self.labels), self.dimension)}, "
                f"got {self.vectors.shape}"
            )
        norms = np.linalg.norm(self.vectors, axis=1)
        bad = np.abs(norms - 1.0) > _tol(None)
        if bad.any():
            label = self.labels[int(np.argmax(bad))]
            raise ValueError(f"state {label!r} is not unit-norm (|v| = {norms[bad][0]!r})")

    @staticmethod
    def from_pairs(dimension: int, pairs: Iterable[tuple[str, Sequence[complex]]]) -> "PureStateSet":
        labels, rows = [], []
        for label, vec in pairs:
            labels.append(label)
            rows.append(np.asarray(vec, dtype=complex))
        vectors = np.array(rows, dtype=complex) if rows else np.zeros((0, dimension), dtype=complex)
        return PureStateSet(dimension, tuple(labels), vectors)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(f"unknown state label {label!r}") from None

    def vector(self, label: str) -> np.ndarray:
        return self.vectors[self.index(label)]

    def subset(self, labels: Iterable[str]) -> "PureStateSet":
        idx = [self.index(a) for a in labels]
        return PureStateSet(self.dimension, tuple(self.labels[i] for i in idx), self.vectors[idx])

    def union(self, other: "PureStateSet") -> "PureStateSet":
        if other.dimension != self.dimension:
            raise DimensionMismatchError("cannot merge state sets of different dimension")
        return PureStateSet(
            self.dimension,
            self.labels + other.labels,
            np.vstack([self.vectors, other.vectors]),
        )


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix (within tolerance)."""

    dimension: int
    matrix: np.ndarray

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.dimension, self.dimension):
            raise DimensionMismatchError(f"density matrix must be {self.dimension}x{self.dimension}")
        tol = _tol(None)
        if np.abs(m - m.conj().T).max() > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > tol or abs(np.trace(m).imag) > tol:
            raise ValueError(f"density matrix has trace {np.trace(m)}, expected 1")
        if np.linalg.eigvalsh(m).min() < -tol:
            raise ValueError("density matrix has a negative eigenvalue")

    @staticmethod
    def maximally_mixed(dimension: int) -> "DensityOperator":
        return DensityOperator(dimension, np.eye(dimension, dtype=complex) / dimension)

    @staticmethod
    def from_pure(vector: Sequence[complex]) -> "DensityOperator":
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
        return DensityOperator(len(v), np.outer(v, v.conj()))

    @staticmethod
    def random(dimension: int, rng: np.random.Generator) -> "DensityOperator":
        g = rng.normal(size=(dimension, dimension)) + 1j * rng.normal(size=(dimension, dimension))
        m = g @ g.conj().T
        return DensityOperator(dimension, m / np.trace(m).real)


@dataclass(frozen=True, eq=False)
class GramData:
    """Symmetric matrix of squared overlaps |<a|b>|^2."""

    labels: tuple[str, ...]
    overlaps: np.ndarray

    def overlap(self, a: str, b: str) -> float:
        i, j = self.labels.index(a), self.labels.index(b)
        return float(self.overlaps[i, j])


def gram(states: PureStateSet) -> GramData:
    """Squared overlaps, computed once per unordered pair."""
    n = len(states)
    overlaps = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            value = abs(np.vdot(states.vectors[i], states.vectors[j])) ** 2
            overlaps[i, j] = overlaps[j, i] = value
    return GramData(states.labels, overlaps)


def frame_operator(
    states: PureStateSet, tol: float | None = None
) -> tuple[np.ndarray, float | None]:
    """Sum of projectors onto the states, plus a proportionality verdict.

    Returns (F, lam) with lam = trace(F)/d when F is lam*I within
    tolerance entry-wise, else (F, None).
    """
    tol = _tol(tol)
    # vectors are rows, so sum_a |a><a| has entries sum_a v_a[i] conj(v_a[j])
    f = states.vectors.T @ states.vectors.conj()
    lam = np.trace(f).real / states.dimension
    if np.abs(f - lam * np.eye(states.dimension)).max() <= tol:
        return f, float(lam)
    return f, None


def quantum_value(
    states: PureStateSet, coeffs: dict[str, object], rho: DensityOperator
) -> float:
    """sum_a c_a <a|rho|a> for the rank-1 projectors onto the named states."""
    if rho.dimension != states.dimension:
        raise DimensionMismatchError(
            f"density operator dimension {rho.dimension} != state dimension {states.dimension}"
        )
    total = 0.0
    for label, c in coeffs.items():
        v = states.vector(label)
        total += float(c) * float(np.real(np.vdot(v, rho.matrix @ v)))
    return total


def scenario_from_states(states: PureStateSet, tol: float | None = None) -> Scenario:
    """The contextuality scenario generated by a set of rays.

    Orthogonality (squared overlap <= tol) defines a graph; maximal cliques
    of size d become contexts and smaller maximal cliques (of at least two
    vertices) become partial contexts.  Isolated vertices contribute no
    set.  Raises DuplicateRayError when two states coincide up to phase and
    ToleranceAmbiguityError when any overlap falls in (tol, 10*tol), where
    the orthogonality cut would be unsafe.
    """
    tol = _tol(tol)
    if states.dimension < 2:
        raise ValueError("scenario generation needs dimension >= 2")
    g = gram(states)
    n = len(states)
    for i in range(n):
        for j in range(i + 1, n):
            o = g.overlaps[i, j]
            if o >= 1.0 - tol:
                raise DuplicateRayError(
                    f"states {states.labels[i]!r} and {states.labels[j]!r} are the same ray"
                )
            if tol < o < 10.0 * tol:
                raise ToleranceAmbiguityError(
                    f"overlap |<{states.labels[i]}|{states.labels[j]}>|^2 = {o!r} "
                    f"falls in the guard band ({tol!r}, {10.0 * tol!r})"
                )
    adjacency = [
        {j for j in range(n) if j != i and g.overlaps[i, j] <= tol} for i in range(n)
    ]
    contexts = []
    partial_contexts = []
    for clique in maximal_cliques(n, adjacency):
        if len(clique) > states.dimension:
            raise RuntimeError(
                f"orthogonality graph has a clique of {len(clique)} > d mutually "
                "orthogonal states; tolerance settings are inconsistent"
            )
        members = [states.labels[i] for i in clique]
        if len(clique) == states.dimension:
            contexts.append(members)
        elif len(clique) >= 2:
            partial_contexts.append(members)
    return make_scenario(states.labels, contexts, partial_contexts)


_STATES_KEYS = {"dimension", "states"}


def load_states(source: bytes | str | IO) -> PureStateSet:
    """Parse the vector-set JSON document.

    Schema: {"dimension": d, "states": [{"label": str,
    "components": [[re, im], ...]}, ...]}.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) - _STATES_KEYS:
        raise ScenarioParseError("vector-set document must have keys 'dimension' and 'states'")
    dimension = doc.get("dimension")
    if not isinstance(dimension, int) or dimension < 1:
        raise ScenarioParseError("'dimension' must be a positive integer")
    entries = doc.get("states")
    if not isinstance(entries, list):
        raise ScenarioParseError("'states' must be a list")
    pairs = []
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"label", "components"}:
            raise ScenarioParseError("each state needs exactly 'label' and 'components'")
        comps = entry["components"]
        if len(comps) != dimension or not all(
            isinstance(c, list) and len(c) == 2 for c in comps
        ):
            raise ScenarioParseError(
                f"state {entry.get('label')!r} needs {dimension} [re, im] component pairs"
            )
        pairs.append((entry["label"], [complex(re, im) for re, im in comps]))
    return PureStateSet.from_pairs(dimension, pairs)


def save_states(states: PureStateSet) -> bytes:
    doc = {
        "dimension": states.dimension,
        "states": [
            {
                "label": label,
                "components": [[float(c.real), float(c.imag)] for c in vec],
            }
            for label, vec in zip(states.labels, states.vectors)
        ],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
