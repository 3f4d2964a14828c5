"""Complete deterministic finite automata over ordered alphabets.

States are 0..n-1, the per-letter transition function is a Transformation,
and every operation treats the automaton as immutable.  Partial transition
tables are a parse error, never silently completed: the transformation view
of the transition semigroup requires totality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .semigroup import (
    CapExceeded,
    ClosureOverflow,
    TransformationSemigroup,
    closure,
)
from .transform import Transformation


class DfaParseError(ValueError):
    """Malformed DFA text or JSON."""


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: one Transformation per letter, in alphabet order."""

    alphabet: tuple[str, ...]
    delta: tuple[Transformation, ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if not self.alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letter in alphabet")
        if len(self.delta) != len(self.alphabet):
            raise ValueError("one transformation per letter required")
        n = self.delta[0].n
        for g in self.delta:
            if g.n != n:
                raise ValueError("transition sizes disagree")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < n:
                raise ValueError(f"final state {q} out of range")

    @property
    def n(self) -> int:
        return self.delta[0].n

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def step(self, q: int, letter: str) -> int:
        return self.delta[self.letter_index[letter]].image[q]

    def run(self, word: Iterable[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = self.step(q, a)
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.finals

    def complement(self) -> "Dfa":
        return Dfa(
            alphabet=self.alphabet,
            delta=self.delta,
            initial=self.initial,
            finals=frozenset(range(self.n)) - self.finals,
        )


@dataclass(frozen=True)
class StatePreorder:
    """The relation leq[p][q] iff the language of p is contained in that of q.

    Reflexive and transitive by construction; on a minimal DFA it is also
    antisymmetric, since distinct states have distinct languages.
    """

    n: int
    leq: tuple[tuple[bool, ...], ...]

    def strictly_less(self, p: int, q: int) -> bool:
        return p != q and self.leq[p][q] and not self.leq[q][p]


# ---------------------------------------------------------------------------
# text / JSON / DOT formats


def parse_dfa(text: str) -> Dfa:
    """Parse the line-oriented text format (see ``to_text``)."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise DfaParseError("empty DFA description")

    def expect(index: int, keyword: str) -> tuple[int, list[str]]:
        if index >= len(rows):
            raise DfaParseError(f"missing '{keyword}' line")
        lineno, tokens = rows[index]
        if tokens[0] != keyword:
            raise DfaParseError(f"line {lineno}: expected '{keyword}', got '{tokens[0]}'")
        return lineno, tokens[1:]

    lineno, args = expect(0, "states")
    if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
        raise DfaParseError(f"line {lineno}: 'states' needs one positive integer")
    n = int(args[0])

    lineno, letters = expect(1, "alphabet")
    if not letters:
        raise DfaParseError(f"line {lineno}: alphabet must be non-empty")
    if len(set(letters)) != len(letters):
        raise DfaParseError(f"line {lineno}: duplicate letter in alphabet")

    lineno, args = expect(2, "initial")
    initial = _parse_state(args, 1, n, lineno)[0]

    lineno, args = expect(3, "final")
    finals = frozenset(_parse_state(args, None, n, lineno))

    delta: dict[str, Transformation] = {}
    for lineno, tokens in rows[4:]:
        if tokens[0] != "trans":
            raise DfaParseError(f"line {lineno}: expected 'trans', got '{tokens[0]}'")
        if len(tokens) < 2:
            raise DfaParseError(f"line {lineno}: 'trans' needs a letter")
        letter = tokens[1]
        if letter not in letters:
            raise DfaParseError(f"line {lineno}: letter '{letter}' not in alphabet")
        if letter in delta:
            raise DfaParseError(f"line {lineno}: duplicate transitions for '{letter}'")
        images = _parse_state(tokens[2:], n, n, lineno)
        delta[letter] = Transformation(tuple(images))
    missing = [a for a in letters if a not in delta]
    if missing:
        raise DfaParseError(f"missing transition row for letter '{missing[0]}'")
    return Dfa(
        alphabet=tuple(letters),
        delta=tuple(delta[a] for a in letters),
        initial=initial,
        finals=finals,
    )


def _parse_state(tokens: Sequence[str], count: int | None, n: int, lineno: int) -> list[int]:
    if count is not None and len(tokens) != count:
        raise DfaParseError(f"line {lineno}: expected {count} state(s), got {len(tokens)}")
    out = []
    for tok in tokens:
        if not tok.isdigit():
            raise DfaParseError(f"line {lineno}: bad state index '{tok}'")
        q = int(tok)
        if q >= n:
            raise DfaParseError(f"line {lineno}: state {q} out of range [0, {n})")
        out.append(q)
    return out


def to_text(d: Dfa) -> str:
    lines = [
        f"states {d.n}",
        "alphabet " + " ".join(d.alphabet),
        f"initial {d.initial}",
        ("final " + " ".join(str(q) for q in sorted(d.finals))).rstrip(),
    ]
    for a, g in zip(d.alphabet, d.delta):
        lines.append(f"trans {a} " + " ".join(str(q) for q in g.image))
    return "\n".join(lines) + "\n"


def to_json_dict(d: Dfa) -> dict:
    return {
        "states": d.n,
        "alphabet": list(d.alphabet),
        "initial": d.initial,
        "final": sorted(d.finals),
        "trans": {a: list(g.image) for a, g in zip(d.alphabet, d.delta)},
    }


def from_json_dict(data: dict) -> Dfa:
    try:
        n = data["states"]
        letters = list(data["alphabet"])
        trans = data["trans"]
        delta = []
        for a in letters:
            images = trans[a]
            if len(images) != n:
                raise DfaParseError(f"letter '{a}': expected {n} images")
            delta.append(Transformation(tuple(images)))
        return Dfa(
            alphabet=tuple(letters),
            delta=tuple(delta),
            initial=data["initial"],
            finals=frozenset(data["final"]),
        )
    except DfaParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DfaParseError(f"bad DFA JSON: {exc}") from exc


def parse_dfa_json(text: str) -> Dfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DfaParseError(f"bad JSON: {exc}") from exc
    return from_json_dict(data)


def to_dot(d: Dfa) -> str:
    """Graphviz rendering: doublecircle finals, comma-joined edge labels."""
    lines = [
        "digraph dfa {",
        "  rankdir=LR;",
        '  __start [shape=none, label=""];',
    ]
    for q in range(d.n):
        shape = "doublecircle" if q in d.finals else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __start -> {d.initial};")
    for p in range(d.n):
        targets: dict[int, list[str]] = {}
        for a, g in zip(d.alphabet, d.delta):
            targets.setdefault(g.image[p], []).append(a)
        for q in sorted(targets):
            label = ",".join(targets[q])
            lines.append(f'  {p} -> {q} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reachability, minimization


def reachable_states(d: Dfa) -> list[int]:
    """States reachable from the initial state, in breadth-first order
    (letters explored in alphabet order)."""
    order = [d.initial]
    seen = {d.initial}
    for q in order:
        for g in d.delta:
            r = g.image[q]
            if r not in seen:
                seen.add(r)
                order.append(r)
    return order


def _partition(d: Dfa, states: Sequence[int]) -> dict[int, int]:
    """Moore refinement over the given states; returns state -> block id."""
    block = {q: (1 if q in d.finals else 0) for q in states}
    blocks = 2 if any(block.values()) and not all(block[q] for q in states) else 1
    while True:
        signatures: dict[tuple, int] = {}
        new_block = {}
        for q in states:
            sig = (block[q],) + tuple(block[g.image[q]] for g in d.delta)
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[q] = signatures[sig]
        if len(signatures) == blocks:
            return new_block
        block, blocks = new_block, len(signatures)


def minimize(d: Dfa) -> Dfa:
    """The canonical minimal DFA for the same language.

    Unreachable states are dropped, equivalent states merged, and the result
    renumbered breadth-first from the initial state with letters explored in
    alphabet order, so equal languages yield identical automata.
    """
    reach = reachable_states(d)
    block = _partition(d, reach)
    # Representative per block, then canonical BFS numbering over blocks.
    rep: dict[int, int] = {}
    for q in reach:
        rep.setdefault(block[q], q)
    number: dict[int, int] = {block[d.initial]: 0}
    order = [block[d.initial]]
    for b in order:
        q = rep[b]
        for g in d.delta:
            nb = block[g.image[q]]
            if nb not in number:
                number[nb] = len(number)
                order.append(nb)
    m = len(order)
    delta = []
    for g in d.delta:
        img = [0] * m
        for b in order:
            img[number[b]] = number[block[g.image[rep[b]]]]
        delta.append(Transformation(tuple(img)))
    finals = frozenset(number[block[q]] for q in reach if q in d.finals)
    return Dfa(alphabet=d.alphabet, delta=tuple(delta), initial=0, finals=finals)


def is_minimal(d: Dfa) -> bool:
    reach = reachable_states(d)
    if len(reach) != d.n:
        return False
    block = _partition(d, reach)
    return len(set(block.values())) == d.n


# ---------------------------------------------------------------------------
# the state preorder


def language_containment(d: Dfa, p: int, q: int) -> bool:
    """Whether the language of p is contained in the language of q.

    Containment fails exactly when some word sends p to a final state and q
    to a non-final one; breadth-first search over state pairs finds such a
    word if one exists.
    """
    n = d.n
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError("state out of range")
    finals = d.finals
    pair = (p, q)
    seen = {pair}
    queue = [pair]
    for x, y in queue:
        if x in finals and y not in finals:
            return False
        for g in d.delta:
            nxt = (g.image[x], g.image[y])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def preorder(d: Dfa) -> StatePreorder:
    """The full containment relation, by backward propagation of bad pairs.

    A pair (p, q) is bad (p not <= q) iff p is final and q is not, or some
    letter leads to a bad pair; the worklist closes the bad set, and leq is
    its complement.  Agrees pointwise with ``language_containment``.
    """
    n = d.n
    finals = d.finals
    bad = [[False] * n for _ in range(n)]
    stack = []
    for x in range(n):
        for y in range(n):
            if x in finals and y not in finals:
                bad[x][y] = True
                stack.append((x, y))
    pre: list[list[list[int]]] = []
    for g in d.delta:
        rows: list[list[int]] = [[] for _ in range(n)]
        for p in range(n):
            rows[g.image[p]].append(p)
        pre.append(rows)
    while stack:
        x, y = stack.pop()
        for rows in pre:
            for p in rows[x]:
                row = bad[p]
                for q in rows[y]:
                    if not row[q]:
                        row[q] = True
                        stack.append((p, q))
    leq = tuple(tuple(not bad[p][q] for q in range(n)) for p in range(n))
    return StatePreorder(n=n, leq=leq)


def max_chain_length(po: StatePreorder) -> int:
    """Number of states in the longest chain from state 0 strictly ordered
    by containment."""
    n = po.n
    longest: dict[int, int] = {}

    def walk(p: int) -> int:
        if p not in longest:
            longest[p] = 1 + max(
                (walk(q) for q in range(n) if po.strictly_less(p, q)), default=0
            )
        return longest[p]

    return walk(0)


# ---------------------------------------------------------------------------
# semigroups of a DFA


def transition_semigroup(
    d: Dfa, cap: int | None = None
) -> TransformationSemigroup | ClosureOverflow:
    """Closure of the letter transformations (the maps of non-empty words)."""
    result = closure(list(d.delta), cap=cap)
    if isinstance(result, TransformationSemigroup):
        return TransformationSemigroup(
            n=result.n,
            images=result.images,
            generators=result.generators,
            generator_labels=tuple(d.alphabet),
        )
    return result


def syntactic_complexity(d: Dfa, cap: int | None = None) -> int:
    """Size of the transition semigroup of the minimal DFA."""
    result = transition_semigroup(minimize(d), cap=cap)
    if isinstance(result, ClosureOverflow):
        raise CapExceeded(f"transition semigroup exceeded cap {result.cap}")
    return result.size


def same_language(d1: Dfa, d2: Dfa) -> bool:
    """Language equality via product reachability (alphabets must match)."""
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabets differ")
    pair = (d1.initial, d2.initial)
    seen = {pair}
    queue = [pair]
    for x, y in queue:
        if (x in d1.finals) != (y in d2.finals):
            return False
        for g1, g2 in zip(d1.delta, d2.delta):
            nxt = (g1.image[x], g2.image[y])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True
