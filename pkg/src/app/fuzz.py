"""Randomized invariant checks, greedy minimization and the exhaustive order scan.

Every trial draws from its own ``random.Random(f"{seed}:{scenario}:{index}")``
so a trial regenerates identically whatever the worker layout. A trial whose
check raises ``CapacityError`` is counted as skipped.
"""
from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Final

import networkx as nx

from app.problem_file import render_system_problem, render_word_problem
from config.constants import (
    DEFAULT_SERIES_DEPTH,
    FUZZ_EXHAUSTIVE_ORDER_GROUND,
    FUZZ_EXHAUSTIVE_ORDER_RELATIONS,
    FUZZ_MAX_ALPHABET,
    FUZZ_MAX_GRAPH_VERTICES,
    FUZZ_MAX_ORDER_GROUND,
    FUZZ_MAX_RELATION_LENGTH,
    FUZZ_MAX_RELATIONS,
    FUZZ_MAX_WORD_LENGTH,
)
from config.logging_system import get_logger
from homology.core_complex import (
    FieldSpec,
    GradedComplex,
    Limits,
    compare_fields,
    homology_dims,
    validate_complex,
)
from homology.errors import CapacityError, InputError
from homology.grassmann import SetSystem, grassmann_complex, system_homology, word_to_system
from homology.monomial import (
    Alphabet,
    RelationSet,
    Word,
    bar_subcomplex,
    predict_homology,
    reduce_antichain,
)
from homology.ncseries import euler_crosscheck, hilbert_truncated, invert_series
from homology.order import ContractionRule, is_order, private_point_everywhere
from homology.quad_graph import (
    RelationGraph,
    eliminate,
    graph_homology,
    profile_product,
    reduce_homology,
    shifted_sum,
)

_logger = get_logger("fuzz")

SERIES_PROBES: Final[int] = 12


# ── Instances ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class WordInstance:
    alphabet_size: int
    relations: tuple[Word, ...]
    word: Word

    def relation_set(self) -> RelationSet:
        return reduce_antichain(self.relations)


@dataclass(frozen=True)
class SeriesInstance:
    alphabet_size: int
    relations: tuple[Word, ...]
    depth: int
    samples: tuple[Word, ...] = ()

    def relation_set(self) -> RelationSet:
        return reduce_antichain(self.relations)


@dataclass(frozen=True)
class SystemInstance:
    system: SetSystem


@dataclass(frozen=True)
class GraphInstance:
    graph: RelationGraph


def trial_rng(seed: int, scenario: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{scenario}:{index}")


# ── Generators ────────────────────────────────────────────────────────────────

def _random_relations(rng: random.Random, size: int) -> tuple[Word, ...]:
    words = [
        tuple(rng.randrange(size) for _ in range(rng.randint(2, FUZZ_MAX_RELATION_LENGTH)))
        for _ in range(rng.randint(0, FUZZ_MAX_RELATIONS))
    ]
    return reduce_antichain(words).relations


def _random_word(rng: random.Random, size: int, relations: Sequence[Word], length: int) -> Word:
    """Random word that splices in relation copies half of the time."""
    letters: list[int] = []
    while len(letters) < length:
        if relations and rng.random() < 0.5:
            letters.extend(rng.choice(relations))
        else:
            letters.append(rng.randrange(size))
    return tuple(letters[:length])


def generate_word(rng: random.Random) -> WordInstance:
    size = rng.randint(1, FUZZ_MAX_ALPHABET)
    relations = _random_relations(rng, size)
    word = _random_word(rng, size, relations, rng.randint(1, FUZZ_MAX_WORD_LENGTH))
    return WordInstance(size, relations, word)


def _series_generator(depth: int) -> Callable[[random.Random], SeriesInstance]:
    def generate(rng: random.Random) -> SeriesInstance:
        size = rng.randint(1, FUZZ_MAX_ALPHABET)
        relations = _random_relations(rng, size)
        samples = tuple(
            _random_word(rng, size, relations, rng.randint(1, depth)) for _ in range(SERIES_PROBES)
        )
        return SeriesInstance(size, relations, depth, samples)

    return generate


def generate_system(rng: random.Random) -> SystemInstance:
    n = rng.randint(1, FUZZ_MAX_ORDER_GROUND)
    relations = [
        rng.sample(range(1, n + 1), rng.randint(1, min(n, 4)))
        for _ in range(rng.randint(1, n + 1))
    ]
    return SystemInstance(SetSystem.create(n, relations))


def generate_graph(rng: random.Random) -> GraphInstance:
    n = rng.randint(1, FUZZ_MAX_GRAPH_VERTICES)
    raw = nx.gnp_random_graph(n, rng.uniform(0.15, 0.7), seed=rng.randrange(2**32))
    graph = nx.relabel_nodes(raw, {v: v + 1 for v in raw.nodes})
    return GraphInstance(RelationGraph.from_networkx(graph))


def exhaustive_systems(
    max_ground: int = FUZZ_EXHAUSTIVE_ORDER_GROUND,
    max_relations: int = FUZZ_EXHAUSTIVE_ORDER_RELATIONS,
) -> Iterator[SystemInstance]:
    """Every antichain of nonempty subsets with at most *max_relations* members."""
    for n in range(1, max_ground + 1):
        subsets = [
            frozenset(c)
            for size in range(1, n + 1)
            for c in itertools.combinations(range(1, n + 1), size)
        ]
        for k in range(max_relations + 1):
            for chosen in itertools.combinations(subsets, k):
                if any(a < b or b < a for a, b in itertools.combinations(chosen, 2)):
                    continue
                yield SystemInstance(SetSystem.create(n, chosen))


# ── Checks ────────────────────────────────────────────────────────────────────

def check_complex(name: str, c: GradedComplex, limits: Limits) -> str | None:
    """Structure of a generated complex, then agreement of Q and GF(32003) homology."""
    if not validate_complex(c):
        return f"{name} complex has d∘d != 0 or an entry outside {{-1, 0, 1}}"
    over_q, over_p, agree = compare_fields(c, limits)
    if not agree:
        return f"{name} homology over q {list(over_q.dims)} differs from GF(32003) {list(over_p.dims)}"
    return None


def check_algebra_dichotomy(inst: WordInstance, f: FieldSpec, limits: Limits) -> str | None:
    relations = inst.relation_set()
    complex_ = bar_subcomplex(inst.word, relations, limits=limits)
    gap_complex = grassmann_complex(word_to_system(inst.word, relations), limits=limits)
    for name, c in (("bar", complex_), ("gap system", gap_complex)):
        broken = check_complex(name, c, limits)
        if broken is not None:
            return broken
    profile = homology_dims(complex_, f, limits)
    if profile.total > 1:
        return f"total homology {profile.total} exceeds 1"
    if (profile.total == 0) != (complex_.total_basis % 2 == 0):
        return f"total homology {profile.total} with basis size {complex_.total_basis}"
    gap = homology_dims(gap_complex, f, limits)
    if not gap.same_homology(profile):
        return f"word homology {list(profile.dims)} differs from gap system {list(gap.dims)}"
    return None


def check_dyck_position(inst: WordInstance, f: FieldSpec, limits: Limits) -> str | None:
    relations = inst.relation_set()
    profile = homology_dims(bar_subcomplex(inst.word, relations, limits=limits), f, limits)
    prediction = predict_homology(inst.word, relations)
    if not prediction.agrees_with(profile):
        return (
            f"predicted {prediction.kind.value} at degree {prediction.stored_degree},"
            f" homology {list(profile.dims)}"
        )
    return None


def check_series(inst: SeriesInstance, f: FieldSpec, limits: Limits) -> str | None:
    relations = inst.relation_set()
    inverse = invert_series(hilbert_truncated(inst.alphabet_size, relations, inst.depth, limits), limits)
    for word, coeff in inverse.items_graded():
        if coeff not in (-1, 1):
            return f"inverse coefficient {coeff} on word {list(word)}"
    for word in inst.samples:
        coeff, alternating = euler_crosscheck(word, relations, limits)
        if coeff != alternating or inverse.coefficient(word) != coeff:
            return (
                f"word {list(word)}: coefficient {inverse.coefficient(word)},"
                f" suffix recursion {coeff}, alternating sum {alternating}"
            )
    return None


def check_order_dichotomy(inst: SystemInstance, f: FieldSpec, limits: Limits) -> str | None:
    s = inst.system
    if s.n == 0:
        return None
    certificate = is_order(s, ContractionRule.KERNEL, limits)
    if certificate is not None:
        if not certificate.replay(s):
            return "order certificate does not replay"
        total = system_homology(s, f, limits).total
        if total > 1:
            return f"order with total homology {total}"
    elif private_point_everywhere(s):
        return "every relation has a private point but no order exists"
    return None


def check_graph_rules(inst: GraphInstance, f: FieldSpec, limits: Limits) -> str | None:
    g = inst.graph
    broken = check_complex("edge system", grassmann_complex(g.to_system(), limits=limits), limits)
    if broken is not None:
        return broken
    oracle = graph_homology(g, f, limits)
    profile, trace = reduce_homology(g, f, limits)
    if not profile.same_homology(oracle):
        return f"reduction {list(profile.dims)} differs from oracle {list(oracle.dims)}"
    if not trace.consistent():
        return "reduction trace does not recombine"
    if g.isolated() and oracle.total:
        return f"isolated vertex with total homology {oracle.total}"
    for x in g.vertices:
        nbrs = g.neighbors(x)
        if not nbrs or not g.is_clique(nbrs):
            continue
        children = [graph_homology(sub, f, limits) for sub in eliminate(g, x)]
        combined = shifted_sum(children)
        if combined.total != oracle.total:
            return f"elimination at {x}: totals {combined.total} != {oracle.total}"
        if not combined.same_homology(oracle):
            return f"elimination at {x}: degrees {list(combined.dims)} != {list(oracle.dims)}"
    parts = g.components()
    if len(parts) > 1:
        product = profile_product(graph_homology(part, f, limits) for part in parts)
        if not product.same_homology(oracle):
            return f"component product {list(product.dims)} != {list(oracle.dims)}"
    return None


# ── Shrinking ─────────────────────────────────────────────────────────────────

def _shrink_relations(relations: tuple[Word, ...]) -> Iterator[tuple[Word, ...]]:
    for j in range(len(relations)):
        yield relations[:j] + relations[j + 1:]
    for j, rel in enumerate(relations):
        if len(rel) > 2:
            for i in range(len(rel)):
                shorter = rel[:i] + rel[i + 1:]
                yield reduce_antichain(relations[:j] + (shorter,) + relations[j + 1:]).relations


def shrink_word(inst: WordInstance) -> Iterator[WordInstance]:
    if len(inst.word) > 1:
        for i in range(len(inst.word)):
            yield WordInstance(inst.alphabet_size, inst.relations, inst.word[:i] + inst.word[i + 1:])
    for relations in _shrink_relations(inst.relations):
        yield WordInstance(inst.alphabet_size, relations, inst.word)


def shrink_series(inst: SeriesInstance) -> Iterator[SeriesInstance]:
    for i in range(len(inst.samples)):
        yield SeriesInstance(
            inst.alphabet_size, inst.relations, inst.depth, inst.samples[:i] + inst.samples[i + 1:],
        )
    for relations in _shrink_relations(inst.relations):
        yield SeriesInstance(inst.alphabet_size, relations, inst.depth, inst.samples)


def shrink_system(inst: SystemInstance) -> Iterator[SystemInstance]:
    s = inst.system
    for j in range(len(s.relations)):
        yield SystemInstance(s.without_relation(j))
    if s.n > 1:
        for p in range(1, s.n + 1):
            yield SystemInstance(s.restrict(q for q in range(1, s.n + 1) if q != p))
    for j, rel in enumerate(s.relations):
        if len(rel) > 1:
            for p in sorted(rel):
                others = [set(r) for i, r in enumerate(s.relations) if i != j]
                yield SystemInstance(SetSystem.create(s.n, others + [set(rel - {p})]))


def shrink_graph(inst: GraphInstance) -> Iterator[GraphInstance]:
    g = inst.graph
    for v in g.vertices:
        yield GraphInstance(g.without([v]))
    for i in range(len(g.edges)):
        yield GraphInstance(RelationGraph(g.vertices, g.edges[:i] + g.edges[i + 1:]))


# ── Rendering ─────────────────────────────────────────────────────────────────

def render_word(inst: WordInstance) -> str:
    return render_word_problem(Alphabet.of_size(inst.alphabet_size), inst.relation_set(), inst.word)


def render_series(inst: SeriesInstance) -> str:
    word = inst.samples[0] if len(inst.samples) == 1 else None
    return render_word_problem(
        Alphabet.of_size(inst.alphabet_size), inst.relation_set(), word, {"n": str(inst.depth)},
    )


def render_system(inst: SystemInstance) -> str:
    return render_system_problem(inst.system)


def render_graph(inst: GraphInstance) -> str:
    return render_system_problem(inst.graph.to_system(), {"oracle": "yes"})


# ── Scenarios ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Scenario:
    """A generator, a check, a shrinker and the command that replays findings."""

    name: str
    generate: Callable[[random.Random], Any]
    check: Callable[[Any, FieldSpec, Limits], str | None]
    shrink: Callable[[Any], Iterator[Any]]
    render: Callable[[Any], str]
    replay_command: str


def scenario_table(series_depth: int = DEFAULT_SERIES_DEPTH) -> dict[str, Scenario]:
    return {
        "algebra-dichotomy": Scenario(
            "algebra-dichotomy", generate_word, check_algebra_dichotomy,
            shrink_word, render_word, "word-homology",
        ),
        "dyck-position": Scenario(
            "dyck-position", generate_word, check_dyck_position,
            shrink_word, render_word, "word-homology",
        ),
        "series-pm1": Scenario(
            "series-pm1", _series_generator(series_depth), check_series,
            shrink_series, render_series, "series-invert",
        ),
        "order-dichotomy": Scenario(
            "order-dichotomy", generate_system, check_order_dichotomy,
            shrink_system, render_system, "order-check",
        ),
        "graph-rules": Scenario(
            "graph-rules", generate_graph, check_graph_rules,
            shrink_graph, render_graph, "graph-reduce",
        ),
    }


def minimize(scenario: Scenario, instance: Any, f: FieldSpec, limits: Limits) -> Any:
    """Greedy deletion: take the first shrink that still violates, until none does."""
    current = instance
    improved = True
    while improved:
        improved = False
        for candidate in scenario.shrink(current):
            try:
                violated = scenario.check(candidate, f, limits) is not None
            except (CapacityError, InputError):
                continue
            if violated:
                current = candidate
                improved = True
                break
    return current


# ── Running ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TrialTask:
    scenario: str
    seed: int
    index: int
    field: FieldSpec
    limits: Limits
    series_depth: int = DEFAULT_SERIES_DEPTH
    instance: Any = None


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    skipped: bool = False
    violation: str | None = None
    problem_text: str | None = None


def run_trial(task: TrialTask) -> TrialOutcome:
    """Generate (unless given), check and, on violation, minimize one instance."""
    scenario = scenario_table(task.series_depth)[task.scenario]
    instance = task.instance
    if instance is None:
        instance = scenario.generate(trial_rng(task.seed, task.scenario, task.index))
    try:
        violation = scenario.check(instance, task.field, task.limits)
    except CapacityError:
        return TrialOutcome(task.index, skipped=True)
    if violation is None:
        return TrialOutcome(task.index)
    smallest = minimize(scenario, instance, task.field, task.limits)
    description = scenario.check(smallest, task.field, task.limits) or violation
    return TrialOutcome(task.index, violation=description, problem_text=scenario.render(smallest))


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    trials: int
    skipped: int
    findings: tuple[TrialOutcome, ...] = field(default_factory=tuple)


def run_scenario(
    scenario: str,
    seed: int,
    trials: int,
    f: FieldSpec,
    limits: Limits,
    workers: int = 1,
    exhaustive: bool = False,
    series_depth: int = DEFAULT_SERIES_DEPTH,
) -> ScenarioResult:
    """Run one scenario; outcomes are collected in trial-index order.

    :param exhaustive: For ``order-dichotomy``, check every small system
        instead of *trials* random ones; ignored by the other scenarios.
    :raises InputError: For an unknown scenario name.
    """
    if scenario not in scenario_table(series_depth):
        raise InputError(f"unknown scenario {scenario!r}")
    if exhaustive and scenario == "order-dichotomy":
        tasks = [
            TrialTask(scenario, seed, i, f, limits, series_depth, inst)
            for i, inst in enumerate(exhaustive_systems())
        ]
    else:
        tasks = [TrialTask(scenario, seed, i, f, limits, series_depth) for i in range(trials)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_trial, tasks, chunksize=max(1, len(tasks) // (workers * 8))))
    else:
        outcomes = [run_trial(task) for task in tasks]

    findings = tuple(o for o in outcomes if o.violation is not None)
    skipped = sum(o.skipped for o in outcomes)
    _logger.info(
        "scenario finished", scenario=scenario, trials=len(tasks), skipped=skipped,
        findings=len(findings),
    )
    return ScenarioResult(scenario, len(tasks), skipped, findings)
