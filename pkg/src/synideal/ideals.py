"""Classification of regular languages into ideal / closed subclasses, and
upper bounds on syntactic complexity driven by special quotients.

A non-empty language is a right / left / two-sided ideal when it equals
L.Sigma* / Sigma*.L / Sigma*.L.Sigma*; all-sided when it absorbs shuffled
letters.  On the minimal DFA these become finite checks:

* right:     exactly one final state, and it is an all-accepting sink;
* left:      the initial state's language is contained in each letter
             successor's language;
* all-sided: every state's language is contained in each of its letter
             successors' languages.

Complements of ideals are the prefix- / suffix- / factor-closed languages,
so the same automaton answers both questions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict

from .dfa import (
    Dfa,
    StatePreorder,
    minimize,
    preorder,
    syntactic_complexity,
)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    is_right_ideal: bool
    is_left_ideal: bool
    is_two_sided_ideal: bool
    is_all_sided_ideal: bool
    complement_prefix_closed: bool
    complement_suffix_closed: bool
    complement_factor_closed: bool
    has_empty: bool
    has_sigma_star: bool
    has_eps: bool
    has_sigma_plus: bool
    ur_depth: int | None
    sigma: int
    applicable_bounds: tuple[tuple[str, int], ...]

    def to_json_dict(self) -> dict:
        data = asdict(self)
        data["applicable_bounds"] = [list(pair) for pair in self.applicable_bounds]
        return data

    def to_text(self) -> str:
        lines = []
        for key, value in self.to_json_dict().items():
            if key == "applicable_bounds":
                value = "; ".join(f"{name}={bound}" for name, bound in value)
            lines.append(f"{key} {value}")
        return "\n".join(lines) + "\n"


def classify(d: Dfa) -> ClassificationReport:
    """Classify the language of ``d`` (minimizing first)."""
    m = minimize(d)
    return classify_minimal(m, sigma=syntactic_complexity(m))


_UNSET = object()


def classify_minimal(
    m: Dfa,
    sigma: int,
    po: StatePreorder | None = None,
    ur: "int | None" = _UNSET,  # type: ignore[assignment]
) -> ClassificationReport:
    """Classification of an already-minimal DFA; ``po`` and ``ur`` may be
    passed in when the caller has them precomputed (enumeration hot path)."""
    n = m.n
    if po is None:
        po = preorder(m)
    leq = po.leq
    non_empty = bool(m.finals)

    right = non_empty and _final_sink(m) is not None
    left = non_empty and all(leq[m.initial][g.image[m.initial]] for g in m.delta)
    all_sided = non_empty and all(
        leq[q][g.image[q]] for q in range(n) for g in m.delta
    )
    two_sided = right and left

    alive = _coreachable(m, m.finals)
    universal = _coreachable(m, frozenset(range(n)) - m.finals)
    dead = [not alive[q] for q in range(n)]
    # universal[q] currently means "can reach a non-final state"; invert.
    universal = [not universal[q] for q in range(n)]

    has_empty = any(dead)
    has_sigma_star = any(universal)
    has_eps = any(
        q in m.finals and all(dead[g.image[q]] for g in m.delta) for q in range(n)
    )
    has_sigma_plus = any(
        q not in m.finals and all(universal[g.image[q]] for g in m.delta)
        for q in range(n)
    )

    ur_depth = _unique_reachability_depth(m) if ur is _UNSET else ur

    flags = {
        "empty": has_empty,
        "sigma_star": has_sigma_star,
        "eps": has_eps,
        "sigma_plus": has_sigma_plus,
    }
    bounds = applicable_bounds(n, flags, ur_depth)

    prefix_closed = _complement_prefix_closed(m)
    suffix_closed = all(leq[m.initial][q] for q in range(n))
    return ClassificationReport(
        n=n,
        is_right_ideal=right,
        is_left_ideal=left,
        is_two_sided_ideal=two_sided,
        is_all_sided_ideal=all_sided,
        complement_prefix_closed=prefix_closed,
        complement_suffix_closed=suffix_closed,
        complement_factor_closed=prefix_closed and suffix_closed,
        has_empty=has_empty,
        has_sigma_star=has_sigma_star,
        has_eps=has_eps,
        has_sigma_plus=has_sigma_plus,
        ur_depth=ur_depth,
        sigma=sigma,
        applicable_bounds=bounds,
    )


def _final_sink(m: Dfa) -> int | None:
    """The unique final state if it is an all-accepting sink, else None."""
    if len(m.finals) != 1:
        return None
    (f,) = m.finals
    if all(g.image[f] == f for g in m.delta):
        return f
    return None


def _coreachable(m: Dfa, targets: frozenset[int]) -> list[bool]:
    """States from which some state in ``targets`` is reachable."""
    n = m.n
    flag = [q in targets for q in range(n)]
    stack = [q for q in range(n) if flag[q]]
    pre: list[list[int]] = [[] for _ in range(n)]
    for g in m.delta:
        for p in range(n):
            pre[g.image[p]].append(p)
    while stack:
        q = stack.pop()
        for p in pre[q]:
            if not flag[p]:
                flag[p] = True
                stack.append(p)
    return flag


def _complement_prefix_closed(m: Dfa) -> bool:
    """Whether the complement language is prefix-closed.

    In the complement automaton, prefix-closed means no accepting state is
    reachable from a reachable non-accepting one; equivalently every state of
    ``m`` that can reach a non-final state is itself non-final.
    """
    can_reach_nonfinal = _coreachable(m, frozenset(range(m.n)) - m.finals)
    return all(q not in m.finals for q in range(m.n) if can_reach_nonfinal[q])


def _unique_reachability_depth(m: Dfa) -> int | None:
    """Length of the longest word whose quotient is uniquely reachable.

    State q is uniquely reachable by wa iff its only incoming transition is
    (p, a) with p uniquely reachable by w; the initial state is uniquely
    reachable by the empty word iff nothing (including itself) maps into it.
    Returns None when the language itself is not uniquely reachable.
    """
    n = m.n
    incoming: list[set[tuple[int, int]]] = [set() for _ in range(n)]
    for ai, g in enumerate(m.delta):
        for p in range(n):
            incoming[g.image[p]].add((p, ai))
    if incoming[m.initial]:
        return None
    depth = {m.initial: 0}
    queue = [m.initial]
    for p in queue:
        for ai, g in enumerate(m.delta):
            q = g.image[p]
            if q in depth:
                continue
            if incoming[q] == {(p, ai)}:
                depth[q] = depth[p] + 1
                queue.append(q)
    return max(depth.values())


# ---------------------------------------------------------------------------
# the special-quotient bound table

#: Rows of the bound table: which special quotients must be present, and how
#: many states have forced images under every transformation (the empty and
#: all-accepting quotients are fixed; the {eps} and Sigma+ quotients map onto
#: them).
SPECIAL_ROWS: tuple[tuple[tuple[str, ...], int], ...] = (
    (("empty",), 1),
    (("sigma_star",), 1),
    (("empty", "eps"), 2),
    (("sigma_star", "sigma_plus"), 2),
    (("empty", "sigma_star"), 2),
    (("empty", "sigma_star", "sigma_plus"), 3),
    (("empty", "sigma_star", "eps"), 3),
    (("empty", "sigma_star", "eps", "sigma_plus"), 4),
)


def applicable_bounds(
    n: int, flags: dict[str, bool], ur_depth: int | None
) -> tuple[tuple[str, int], ...]:
    """Named upper bounds on sigma whose conditions hold for these flags.

    Only bounds with a counting argument behind them are included; see
    ``letter_ur_cells`` for the unproven table column that is checked
    empirically instead.
    """
    bounds: list[tuple[str, int]] = [("generic", n**n)]
    for conditions, k in SPECIAL_ROWS:
        if all(flags[c] for c in conditions):
            name = "+".join(conditions)
            bounds.append((name, n ** (n - k)))
            if ur_depth is not None:
                bounds.append((name + ",ur", (n - 1) ** (n - k)))
    if ur_depth is not None:
        bounds.append(("ur", (n - 1) ** n))
        chain = min(d + (n - 1 - d) ** n for d in range(ur_depth + 1))
        bounds.append((f"ur_chain[{ur_depth}]", chain))
    return tuple(bounds)


def special_quotient_bound(report: ClassificationReport) -> int:
    """The tightest applicable upper bound on sigma (falls back to n^n)."""
    return min(value for _, value in report.applicable_bounds)


def letter_ur_cells(report: ClassificationReport) -> tuple[tuple[str, int], ...]:
    """The table column conditioned on a letter quotient being uniquely
    reachable, as stated: 1 + (n-2-k)^(n-k) per row.

    These cells are carried as data only.  They are not folded into
    ``special_quotient_bound`` because small-n sweeps exhibit languages that
    exceed them (see the enumeration harness, which records every
    exceedance); treat them as claims under empirical scrutiny.
    """
    if report.ur_depth is None or report.ur_depth < 1:
        return ()
    n = report.n
    flags = {
        "empty": report.has_empty,
        "sigma_star": report.has_sigma_star,
        "eps": report.has_eps,
        "sigma_plus": report.has_sigma_plus,
    }
    cells = []
    for conditions, k in SPECIAL_ROWS:
        if all(flags[c] for c in conditions):
            name = "+".join(conditions) + ",letter_ur"
            cells.append((name, 1 + (n - 2 - k) ** (n - k)))
    return tuple(cells)


def report_to_json(report: ClassificationReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
