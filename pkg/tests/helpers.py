"""Independent oracles and random-instance generators for the test suite.

These deliberately avoid the library's own algorithms: value functions are
checked by filtering all 2^n assignments, and LP feasibility by
Fourier-Motzkin elimination.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

from antictx.scenario import Scenario, make_scenario, validate_scenario


def naive_value_functions(s: Scenario) -> list[tuple[int, ...]]:
    """Filter all 2^n assignments against the two defining clauses."""
    labels = sorted(s.outcomes)
    index = {a: i for i, a in enumerate(labels)}
    out = []
    for bits in itertools.product((0, 1), repeat=len(labels)):
        if all(sum(bits[index[a]] for a in m) == 1 for m in s.contexts) and all(
            sum(bits[index[a]] for a in n) <= 1 for n in s.partial_contexts
        ):
            out.append(bits)
    return out


def _antichain(sets: list[frozenset]) -> list[frozenset]:
    kept: list[frozenset] = []
    for candidate in sets:
        if any(candidate <= other or other <= candidate for other in kept):
            continue
        kept.append(candidate)
    return kept


def random_scenario(rng: random.Random, max_outcomes: int = 10) -> Scenario:
    """A random valid scenario with at most `max_outcomes` outcomes."""
    while True:
        n = rng.randint(2, max_outcomes)
        labels = [f"o{i:02d}" for i in range(n)]
        sets = []
        for _ in range(rng.randint(1, 5)):
            size = rng.randint(1, min(4, n))
            sets.append(frozenset(rng.sample(labels, size)))
        m_count = rng.randint(0, len(sets))
        contexts = _antichain(sets[:m_count])
        partials = [x for x in _antichain(sets[m_count:]) if x not in set(contexts)]
        s = make_scenario(labels, contexts, partials)
        if validate_scenario(s).valid:
            return s


# ------------------------------------------------------ Fourier-Motzkin

Row = tuple[tuple[Fraction, ...], Fraction]  # coeffs . x <= rhs


def _normalize(coeffs: tuple[Fraction, ...], rhs: Fraction) -> Row:
    denom_lcm = 1
    for value in (*coeffs, rhs):
        denom_lcm = denom_lcm * value.denominator // gcd(denom_lcm, value.denominator)
    ints = [int(value * denom_lcm) for value in (*coeffs, rhs)]
    g = 0
    for value in ints:
        g = gcd(g, abs(value))
    g = g or 1
    return tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g)


def _reduce(rows) -> dict[tuple[Fraction, ...], Fraction] | None:
    """Dedup (keep tightest rhs), drop rows implied by x >= 0 or by another
    row, spot contradictions.  Returns None when a row is unsatisfiable."""
    out: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        if all(c <= 0 for c in coeffs) and rhs >= 0:
            continue  # lhs <= 0 <= rhs for nonnegative x
        if all(c >= 0 for c in coeffs) and rhs < 0:
            return None  # lhs >= 0 > rhs for nonnegative x
        if coeffs not in out or rhs < out[coeffs]:
            out[coeffs] = rhs
    # a row is implied by any row with componentwise-larger coefficients and
    # a smaller rhs (over nonnegative x)
    items = list(out.items())
    kept = {}
    for i, (ci, bi) in enumerate(items):
        dominated = any(
            j != i and bj <= bi and all(x <= y for x, y in zip(ci, cj))
            for j, (cj, bj) in enumerate(items)
        )
        if not dominated:
            kept[ci] = bi
    return kept


def fm_feasible(nvars: int, rows) -> bool:
    """Feasibility of {x >= 0 : rows} decided by variable elimination.

    Nonnegativity is handled implicitly: eliminating a variable combines
    its upper-bound rows with both its lower-bound rows and the implicit
    bound x >= 0.
    """
    initial = []
    for coeffs, rel, rhs in rows:
        if rel in ("<=", "="):
            initial.append(_normalize(tuple(coeffs), rhs))
        if rel in (">=", "="):
            initial.append(_normalize(tuple(-c for c in coeffs), -rhs))
    current = _reduce(initial)
    if current is None:
        return False

    remaining = set(range(nvars))
    while remaining:

        def cost(v: int) -> int:
            pos = sum(1 for coeffs in current if coeffs[v] > 0)
            neg = 1 + sum(1 for coeffs in current if coeffs[v] < 0)
            return pos * neg

        var = min(remaining, key=cost)
        remaining.discard(var)
        pos = [(c, b) for c, b in current.items() if c[var] > 0]
        neg = [(c, b) for c, b in current.items() if c[var] < 0]
        new = [(c, b) for c, b in current.items() if c[var] == 0]
        zero = Fraction(0)
        neg.append((tuple(-Fraction(int(i == var)) for i in range(nvars)), zero))
        for pc, pb in pos:
            for nc, nb in neg:
                f_pos, f_neg = -nc[var], pc[var]
                coeffs = tuple(f_pos * a + f_neg * b for a, b in zip(pc, nc))
                new.append(_normalize(coeffs, f_pos * pb + f_neg * nb))
        current = _reduce(new)
        if current is None:
            return False
    return True
