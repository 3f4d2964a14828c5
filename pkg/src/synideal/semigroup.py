"""Semigroups of transformations, generated by closure under composition.

The closure engine is the performance core of the package: elements are kept
as packed byte strings and right-multiplication by a generator is a single
``bytes.translate`` call, so desk-scale closures (~10^5 elements) stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .transform import Transformation

DEFAULT_CAP = 2_000_000

#: Largest semigroup minimal_generator_count will search without an override.
GENERATOR_SEARCH_BUDGET = 100

#: Relabeling search is factorial in the movable states; refuse beyond this.
RELABEL_MAX_N = 7


class SearchInfeasible(RuntimeError):
    """An exact search was requested outside its documented budget."""


class CapExceeded(RuntimeError):
    """A closure needed as an intermediate value exceeded its element cap."""


@dataclass(frozen=True)
class ClosureOverflow:
    """First-class result of a closure that exceeded its cap."""

    n: int
    cap: int
    generators: tuple[Transformation, ...]


@dataclass(frozen=True)
class TransformationSemigroup:
    """A finite set of transformations closed under composition.

    ``images`` holds the packed element bodies; ``generators`` records the
    provenance (each generator is an element, and every element is a
    composite of one or more generators).  The identity is present only if it
    is such a composite: this is a semigroup, not a monoid.
    """

    n: int
    images: frozenset[bytes]
    generators: tuple[Transformation, ...]
    generator_labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.images)

    @cached_property
    def elements(self) -> tuple[Transformation, ...]:
        """All elements, sorted lexicographically on the image sequence."""
        return tuple(Transformation(tuple(b)) for b in sorted(self.images))

    def __contains__(self, t: Transformation) -> bool:
        return contains(self, t)

    def to_text(self) -> str:
        lines = [f"semigroup n={self.n} size={self.size}"]
        lines.extend(str(t) for t in self.elements)
        return "\n".join(lines) + "\n"


def closure(
    generators: Sequence[Transformation],
    cap: int | None = None,
) -> TransformationSemigroup | ClosureOverflow:
    """All distinct composites of one or more generators.

    Frontier-style breadth-first search: each new element is right-multiplied
    by every generator.  If more than ``cap`` elements appear (default
    ``DEFAULT_CAP``), a ``ClosureOverflow`` is returned instead of a
    semigroup; no partially-closed set ever escapes.
    """
    gens = tuple(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError(f"size mismatch: {g.n} vs {n}")
    if n > 255:
        raise ValueError("closure supports at most 255 states")
    limit = DEFAULT_CAP if cap is None else cap
    images = _close_images([g.packed() for g in gens], cap=limit)
    if images is None:
        return ClosureOverflow(n=n, cap=limit, generators=gens)
    return TransformationSemigroup(n=n, images=frozenset(images), generators=gens)


def _close_images(
    gen_images: Sequence[bytes],
    cap: int = DEFAULT_CAP,
    stop_at: int | None = None,
) -> set[bytes] | None:
    """Closure over packed images; None when the cap is exceeded.

    ``stop_at`` allows an early exit for callers that know the closure cannot
    exceed that size (generators drawn from a known closed set).
    """
    tables = [g + bytes(256 - len(g)) for g in gen_images]
    seen = set(gen_images)
    if stop_at is not None and len(seen) >= stop_at:
        return seen
    frontier = list(seen)
    while frontier:
        new = []
        for e in frontier:
            for table in tables:
                c = e.translate(table)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
                    if stop_at is not None and len(seen) >= stop_at:
                        return seen
                    if len(seen) > cap:
                        return None
        frontier = new
    return seen


def contains(s: TransformationSemigroup, t: Transformation) -> bool:
    if t.n != s.n:
        raise ValueError(f"size mismatch: {t.n} vs {s.n}")
    return t.packed() in s.images


def generator_necessity(s: TransformationSemigroup) -> list[bool]:
    """For each generator: does dropping it strictly shrink the closure?"""
    flags = []
    size = s.size
    packed = [g.packed() for g in s.generators]
    for i in range(len(packed)):
        rest = packed[:i] + packed[i + 1 :]
        if not rest:
            flags.append(size > 0)
            continue
        closed = _close_images(rest, stop_at=size)
        assert closed is not None
        flags.append(len(closed) < size)
    return flags


def minimal_generator_count(
    s: TransformationSemigroup,
    k_max: int,
    budget: int = GENERATOR_SEARCH_BUDGET,
) -> int | None:
    """Least k <= k_max such that some k-subset of the elements generates s.

    The search is exact: every subset of each size is tried, so the answer is
    never an over-estimate and ``None`` means no subset of size <= k_max
    generates.  Refuses semigroups larger than ``budget`` elements (override
    deliberately if you can afford the combinatorics).
    """
    size = s.size
    if size > budget:
        raise SearchInfeasible(
            f"semigroup has {size} elements, over the search budget {budget}"
        )
    element_images = sorted(s.images)
    for k in range(1, min(k_max, size) + 1):
        for subset in combinations(element_images, k):
            closed = _close_images(subset, stop_at=size)
            if closed is not None and len(closed) == size:
                return k
    return None


def equal_up_to_relabeling(
    s: TransformationSemigroup,
    t: TransformationSemigroup,
    fixed_states: Iterable[int] = (),
) -> tuple[int, ...] | None:
    """A state permutation fixing ``fixed_states`` that conjugates s onto t.

    Conjugation by a permutation pi sends each element's image to
    ``new[pi[q]] = pi[image[q]]``.  Returns the permutation as a tuple, or
    None if no candidate works.  The search tries all (n - |fixed|)!
    permutations, so it is limited to n <= RELABEL_MAX_N.
    """
    if s.n != t.n:
        raise ValueError(f"size mismatch: {s.n} vs {t.n}")
    n = s.n
    if n > RELABEL_MAX_N:
        raise SearchInfeasible(f"relabeling search limited to n <= {RELABEL_MAX_N}")
    if s.size != t.size:
        return None
    fixed = sorted(set(fixed_states))
    for q in fixed:
        if not 0 <= q < n:
            raise ValueError(f"fixed state {q} out of range [0, {n})")
    movable = [q for q in range(n) if q not in fixed]
    target = t.images
    perm = [0] * n
    for q in fixed:
        perm[q] = q
    for assignment in permutations(movable):
        for q, image in zip(movable, assignment):
            perm[q] = image
        if _conjugated_images(s.images, perm) == target:
            return tuple(perm)
    return None


def _conjugated_images(images: frozenset[bytes], perm: Sequence[int]) -> frozenset[bytes]:
    out = set()
    for e in images:
        img = bytearray(len(e))
        for q, r in enumerate(e):
            img[perm[q]] = perm[r]
        out.add(bytes(img))
    return frozenset(out)
