"""Exhaustive and randomized verification campaigns over small DFAs.

Exhaustive mode enumerates every DFA with n states up to two reductions that
leave minimality, classification, and syntactic complexity untouched: letters
inducing equal transformations are collapsed (the candidate alphabet is a set
of distinct transformations) and alphabet order is ignored.  Every minimal
candidate is classified; per requested check the campaign compares maxima
against the class bounds, relabels bound-meeting semigroups onto the maximal
one, runs the injection suite, and tests conformance with the special-quotient
bounds.

Sample mode draws seeded random ideals of an exact state count and runs the
same checks on each.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass, field
from itertools import combinations, product

from .dfa import (
    Dfa,
    minimize,
    preorder,
    reachable_states,
    to_text,
    transition_semigroup,
    _partition,
)
from .ideals import (
    ClassificationReport,
    _unique_reachability_depth,
    classify_minimal,
    letter_ur_cells,
    special_quotient_bound,
)
from .injection import make_context, verify_injection
from .semigroup import (
    TransformationSemigroup,
    _close_images,
    _conjugated_images,
    equal_up_to_relabeling,
)
from .transform import Transformation
from .witness import IdealClass, bound, expected_semigroup

EXHAUSTIVE_BUDGET = 10**8
_LETTERS = "abcdefghijklmnopqrstuvwxyz"

ALL_CHECKS = frozenset({"tightness", "uniqueness", "injection", "bounds"})

_INJECTION_MIN_N = {IdealClass.LEFT: 3, IdealClass.TWO_SIDED: 4}


class BudgetExceeded(RuntimeError):
    """An exhaustive campaign outside the documented candidate budget."""


@dataclass(frozen=True)
class SampleMode:
    count: int
    seed: int


@dataclass(frozen=True)
class CampaignSpec:
    n: int
    alphabet_size: int
    class_filter: IdealClass | None = None
    mode: "str | SampleMode" = "exhaustive"
    checks: frozenset[str] = ALL_CHECKS

    def __post_init__(self) -> None:
        unknown = set(self.checks) - ALL_CHECKS
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        if self.mode == "exhaustive":
            cost = (self.n**self.n) ** self.alphabet_size * 2**self.n
            if cost > EXHAUSTIVE_BUDGET:
                raise BudgetExceeded(
                    f"{cost} candidate DFAs exceed the budget {EXHAUSTIVE_BUDGET}"
                )
        elif not isinstance(self.mode, SampleMode):
            raise ValueError(f"mode must be 'exhaustive' or SampleMode, got {self.mode!r}")

    def to_json_dict(self) -> dict:
        mode = (
            "exhaustive"
            if self.mode == "exhaustive"
            else {"sample": {"count": self.mode.count, "seed": self.mode.seed}}
        )
        return {
            "n": self.n,
            "alphabet_size": self.alphabet_size,
            "class_filter": self.class_filter.value if self.class_filter else None,
            "mode": mode,
            "checks": sorted(self.checks),
        }


@dataclass
class ClassStats:
    count: int = 0
    max_sigma: int = 0
    bound: int = 0
    maximizers: int = 0
    maximizers_relabeled: int = 0

    @property
    def bound_met(self) -> bool:
        return self.max_sigma == self.bound

    def to_json_dict(self) -> dict:
        return {
            "count": self.count,
            "max_sigma": self.max_sigma,
            "bound": self.bound,
            "bound_met": self.bound_met,
            "maximizers": self.maximizers,
            "maximizers_relabeled": self.maximizers_relabeled,
        }


@dataclass
class CampaignReport:
    spec: CampaignSpec
    examined: int = 0
    minimal: int = 0
    per_class: dict[str, ClassStats] = field(default_factory=dict)
    injection_contexts: int = 0
    samples_obtained: int = 0
    violations: list[dict] = field(default_factory=list)
    table_exceedances: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "examined": self.examined,
            "minimal": self.minimal,
            "per_class": {
                name: stats.to_json_dict()
                for name, stats in sorted(self.per_class.items())
            },
            "injection_contexts": self.injection_contexts,
            "samples_obtained": self.samples_obtained,
            "ok": self.ok,
            "violations": self.violations,
            "table_exceedances": self.table_exceedances,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        data = self.to_json_dict()
        lines = [f"campaign {json.dumps(data['spec'])}"]
        lines.append(f"examined {data['examined']} minimal {data['minimal']}")
        for name, stats in data["per_class"].items():
            lines.append(
                f"class {name}: count {stats['count']} max_sigma {stats['max_sigma']} "
                f"bound {stats['bound']} met {stats['bound_met']} "
                f"maximizers {stats['maximizers']} relabeled {stats['maximizers_relabeled']}"
            )
        if self.spec.mode != "exhaustive":
            lines.append(f"samples obtained {data['samples_obtained']}")
        lines.append(f"injection contexts {data['injection_contexts']}")
        lines.append(f"table exceedances {len(self.table_exceedances)}")
        lines.append("ok" if self.ok else f"VIOLATIONS {len(self.violations)}")
        for v in self.violations:
            lines.append("violation " + json.dumps(v, sort_keys=True))
        return "\n".join(lines) + "\n"


_CLASS_FLAG = {
    IdealClass.RIGHT: "is_right_ideal",
    IdealClass.LEFT: "is_left_ideal",
    IdealClass.TWO_SIDED: "is_two_sided_ideal",
}


def run(spec: CampaignSpec, progress: bool = False) -> CampaignReport:
    report = CampaignReport(spec=spec)
    classes = [spec.class_filter] if spec.class_filter else list(IdealClass)
    for klass in classes:
        if spec.n >= _MIN_CLASS_N[klass]:
            report.per_class[klass.value] = ClassStats(bound=bound(klass, spec.n))
    if spec.mode == "exhaustive":
        _run_exhaustive(spec, report, progress)
    else:
        _run_sample(spec, report)
    return report


_MIN_CLASS_N = {IdealClass.RIGHT: 1, IdealClass.LEFT: 1, IdealClass.TWO_SIDED: 2}


def _expected_cached(cache: dict, klass: IdealClass, n: int) -> TransformationSemigroup:
    if klass not in cache:
        cache[klass] = expected_semigroup(klass, n)
    return cache[klass]


def _run_exhaustive(spec: CampaignSpec, report: CampaignReport, progress: bool) -> None:
    n = spec.n
    all_images = [bytes(img) for img in product(range(n), repeat=n)]
    final_sets = [
        frozenset(q for q in range(n) if mask >> q & 1) for mask in range(1, 2**n)
    ]
    expected_cache: dict[IdealClass, TransformationSemigroup] = {}
    classes = [spec.class_filter] if spec.class_filter else list(IdealClass)

    for size in range(1, spec.alphabet_size + 1):
        letters = tuple(_LETTERS[:size])
        if progress:
            print(f"alphabet size {size}...", file=sys.stderr, flush=True)
        for gen_images in combinations(all_images, size):
            delta = tuple(Transformation(tuple(b)) for b in gen_images)
            probe = Dfa(letters, delta, 0, frozenset({0}))
            if len(reachable_states(probe)) != n:
                report.examined += len(final_sets)
                continue
            closed = _close_images(gen_images)
            sigma = len(closed)
            # Unique reachability depends only on transitions and the
            # initial state, so it is shared across final sets.
            ur = _unique_reachability_depth(probe)
            for finals in final_sets:
                report.examined += 1
                d = Dfa(letters, delta, 0, finals)
                blocks = _partition(d, range(n))
                if len(set(blocks.values())) != n:
                    continue
                report.minimal += 1
                po = preorder(d)
                rep = classify_minimal(d, sigma=sigma, po=po, ur=ur)
                _check_candidate(spec, report, d, rep, po, classes, expected_cache)


def _check_candidate(
    spec: CampaignSpec,
    report: CampaignReport,
    d: Dfa,
    rep: ClassificationReport,
    po,
    classes: list[IdealClass],
    expected_cache: dict,
) -> None:
    n = spec.n
    if "bounds" in spec.checks:
        limit = special_quotient_bound(rep)
        if rep.sigma > limit:
            report.violations.append(
                {"check": "bounds", "dfa": to_text(d), "sigma": rep.sigma, "bound": limit}
            )
        if n > 1 and not (n - 1 <= rep.sigma <= n**n):
            report.violations.append(
                {"check": "basic_bounds", "dfa": to_text(d), "sigma": rep.sigma}
            )
        for name, value in letter_ur_cells(rep):
            if rep.sigma > value:
                report.table_exceedances.append(
                    {"cell": name, "value": value, "sigma": rep.sigma, "dfa": to_text(d)}
                )

    for klass in classes:
        stats = report.per_class.get(klass.value)
        if stats is None or not getattr(rep, _CLASS_FLAG[klass]):
            continue
        stats.count += 1
        if rep.sigma > stats.max_sigma:
            stats.max_sigma = rep.sigma
        if "tightness" in spec.checks and rep.sigma > stats.bound:
            report.violations.append(
                {
                    "check": "tightness",
                    "class": klass.value,
                    "dfa": to_text(d),
                    "sigma": rep.sigma,
                    "bound": stats.bound,
                }
            )
        if rep.sigma == stats.bound:
            stats.maximizers += 1
            if "uniqueness" in spec.checks:
                if _relabels_to_expected(d, klass, expected_cache):
                    stats.maximizers_relabeled += 1
                else:
                    report.violations.append(
                        {"check": "uniqueness", "class": klass.value, "dfa": to_text(d)}
                    )
        if "injection" in spec.checks and klass in _INJECTION_MIN_N:
            if n >= _INJECTION_MIN_N[klass]:
                ctx = make_context(d, klass)
                inj = verify_injection(ctx)
                report.injection_contexts += 1
                if not inj.ok:
                    report.violations.append(
                        {
                            "check": "injection",
                            "class": klass.value,
                            "dfa": to_text(d),
                            "report": inj.to_json_dict(),
                        }
                    )


def _relabels_to_expected(d: Dfa, klass: IdealClass, expected_cache: dict) -> bool:
    """Bound-meeting semigroups must relabel onto the maximal one, fixing the
    initial state and (for classes with a final sink) the sink."""
    n = d.n
    result = transition_semigroup(d)
    assert isinstance(result, TransformationSemigroup)
    fixed = {0}
    if klass in (IdealClass.RIGHT, IdealClass.TWO_SIDED):
        (f,) = d.finals
        if f != n - 1:
            perm = list(range(n))
            perm[f], perm[n - 1] = n - 1, f
            result = TransformationSemigroup(
                n=n,
                images=_conjugated_images(result.images, perm),
                generators=result.generators,
            )
        fixed.add(n - 1)
    target = _expected_cached(expected_cache, klass, n)
    return equal_up_to_relabeling(result, target, fixed) is not None


# ---------------------------------------------------------------------------
# seeded sampling of ideal DFAs


def _right_closure(d: Dfa) -> Dfa:
    """DFA of L.Sigma*: final states become absorbing."""
    delta = []
    for g in d.delta:
        delta.append(
            Transformation(
                tuple(q if q in d.finals else g.image[q] for q in range(d.n))
            )
        )
    return Dfa(d.alphabet, tuple(delta), d.initial, d.finals)


def _left_closure(d: Dfa) -> Dfa:
    """DFA of Sigma*.L by subset construction over suffix-run sets."""
    start = frozenset({d.initial})
    number = {start: 0}
    order = [start]
    rows: list[list[int]] = [[] for _ in d.alphabet]
    for subset in order:
        for ai, g in enumerate(d.delta):
            nxt = frozenset(g.image[q] for q in subset) | {d.initial}
            if nxt not in number:
                number[nxt] = len(number)
                order.append(nxt)
            rows[ai].append(number[nxt])
    delta = tuple(Transformation(tuple(row)) for row in rows)
    finals = frozenset(i for i, subset in enumerate(order) if subset & d.finals)
    return Dfa(d.alphabet, delta, 0, finals)


_CLOSURES = {
    IdealClass.RIGHT: lambda d: _right_closure(d),
    IdealClass.LEFT: lambda d: _left_closure(d),
    IdealClass.TWO_SIDED: lambda d: _left_closure(_right_closure(d)),
}


def sample_ideal_dfa(
    klass: IdealClass,
    n: int,
    alphabet_size: int,
    seed: int,
    attempts: int = 4000,
) -> Dfa | None:
    """A random minimal DFA of the class with exactly n states, or None.

    Rejection sampling: draw a random complete DFA, close its language into
    the requested ideal class, minimize, and accept when exactly n states
    remain and the classification confirms the class.  Deterministic in the
    seed; None when the attempt budget runs out.
    """
    rng = random.Random(seed)
    letters = tuple(_LETTERS[:alphabet_size])
    close = _CLOSURES[klass]
    flag = _CLASS_FLAG[klass]
    for attempt in range(attempts):
        m = n + (attempt % 3) - 1 if n > 2 else n
        if m < 1:
            m = n
        delta = tuple(
            Transformation(tuple(rng.randrange(m) for _ in range(m)))
            for _ in letters
        )
        final_count = 1 if m == 1 else 1 + rng.randrange(2)
        finals = frozenset(rng.sample(range(m), final_count))
        base = Dfa(letters, delta, 0, finals)
        candidate = minimize(close(base))
        if candidate.n != n:
            continue
        po = preorder(candidate)
        result = transition_semigroup(candidate)
        if isinstance(result, TransformationSemigroup):
            rep = classify_minimal(candidate, sigma=result.size, po=po)
            if getattr(rep, flag):
                return candidate
    return None


def _run_sample(spec: CampaignSpec, report: CampaignReport) -> None:
    if spec.class_filter is None:
        raise ValueError("sample mode needs a class filter")
    klass = spec.class_filter
    mode = spec.mode
    assert isinstance(mode, SampleMode)
    expected_cache: dict[IdealClass, TransformationSemigroup] = {}
    for i in range(mode.count):
        d = sample_ideal_dfa(
            klass, spec.n, spec.alphabet_size, seed=mode.seed * 1_000_003 + i
        )
        report.examined += 1
        if d is None:
            report.violations.append(
                {"check": "sampler", "index": i, "detail": "attempt budget exhausted"}
            )
            continue
        report.samples_obtained += 1
        report.minimal += 1
        po = preorder(d)
        result = transition_semigroup(d)
        assert isinstance(result, TransformationSemigroup)
        rep = classify_minimal(d, sigma=result.size, po=po)
        _check_candidate(spec, report, d, rep, po, [klass], expected_cache)
