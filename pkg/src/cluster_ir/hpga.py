"""Two-level parallel genetic search over clustered document vectors.

Each query-relevant cluster becomes a deme (an isolated subpopulation)
seeded with one chromosome per member document.  Demes evolve
independently: every generation all chromosomes are scored by cosine
similarity against the query (fitness evaluations are independent, so they
may run on parallel workers - the master/slave level), then the top 4% are
copied forward unchanged and the rest of the next generation is bred by
roulette-pool tournament selection plus a two-position gene exchange.  At a
fixed generation interval the demes synchronously exchange individuals on a
directed ring, best replacing worst (the multi-deme level).

Chromosomes carry the id of the document their lineage descends from; a
document's retrieval score is the best fitness ever observed on any
chromosome with its provenance, so the final ranking always refers to real
documents and, after the first evaluation, covers every document in the
selected clusters.

Reproducibility contract: one master seed; each deme derives an independent
random stream from (seed, deme index, generation).  Output is identical
across runs and worker counts.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Mapping, Sequence, TextIO

import numpy as np

from ._parallel import chunked, pmap
from .kmeans import ClusterSet
from .vsm import TermVector, cosine_given_norms, norm2

#: generations sentinel: run as many generations as there are chromosomes
POPULATION_SIZE = "population-size"

ELITE_FRACTION_PCT = 4
MIGRATION_FRACTION_PCT = 5


@dataclass(slots=True)
class Chromosome:
    genes: TermVector
    provenance: int
    fitness: float | None = None
    norm2: float | None = None


@dataclass
class Deme:
    index: int
    chromosomes: list[Chromosome]
    generation: int = 0
    cluster: int | None = None

    @property
    def elite_count(self) -> int:
        n = len(self.chromosomes)
        if n < 2:
            return 0
        return max(1, (ELITE_FRACTION_PCT * n + 99) // 100)  # ceil(0.04 * n)


@dataclass
class GaConfig:
    generations: int | str = 50
    migration_interval: int = 5
    migration_count: int | None = None
    seed: int = 0
    mutation_enabled: bool = False
    mutation_rate: float = 0.01
    full_span_crossover: bool = False

    def __post_init__(self) -> None:
        if self.generations != POPULATION_SIZE:
            if not isinstance(self.generations, int) or self.generations < 1:
                raise ValueError(
                    f"generations must be a positive integer or {POPULATION_SIZE!r}"
                )
        if self.migration_interval < 1:
            raise ValueError("migration_interval must be >= 1")
        if self.migration_count is not None and self.migration_count < 1:
            raise ValueError("migration_count must be >= 1 when set")


@dataclass
class RankedList:
    entries: list[tuple[int, float]]
    query_id: int | None = None

    def doc_ids(self) -> list[int]:
        return [doc_id for doc_id, _ in self.entries]


def deme_rng(seed: int, deme_index: int, generation: int) -> np.random.Generator:
    entropy = [seed & 0xFFFFFFFFFFFFFFFF, deme_index, generation]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def init_demes(
    cs: ClusterSet, selected: Sequence[int], vectors: Mapping[int, TermVector]
) -> list[Deme]:
    """One deme per selected cluster; each member document becomes one
    chromosome with its TF-IDF vector as genes and itself as provenance."""
    if not selected:
        raise ValueError("no clusters selected")
    demes = []
    for pos, cluster_idx in enumerate(selected):
        member_ids = cs.members(cluster_idx)
        if not member_ids:
            raise ValueError(f"selected cluster {cluster_idx} is empty")
        chromosomes = [Chromosome(genes=vectors[d], provenance=d) for d in member_ids]
        demes.append(Deme(index=pos, chromosomes=chromosomes, cluster=cluster_idx))
    return demes


def evaluate_deme(
    deme: Deme,
    query: TermVector,
    workers: int = 1,
    query_norm2: float | None = None,
) -> Deme:
    """Score every chromosome: fitness = cosine(genes, query).

    Evaluations are independent, so chunks may run on parallel workers
    without affecting the result.
    """
    if query_norm2 is None:
        query_norm2 = norm2(query)

    def score_chunk(chunk: Sequence[Chromosome]) -> None:
        for ch in chunk:
            if ch.norm2 is None:
                ch.norm2 = norm2(ch.genes)
            ch.fitness = cosine_given_norms(ch.genes, query, ch.norm2, query_norm2)

    pmap(score_chunk, chunked(deme.chromosomes, workers), workers)
    return deme


def _fitness_array(deme: Deme) -> np.ndarray:
    fits = np.empty(len(deme.chromosomes))
    for i, ch in enumerate(deme.chromosomes):
        if ch.fitness is None:
            raise ValueError("deme has unevaluated chromosomes")
        fits[i] = ch.fitness
    return fits


def fitness_probabilities(deme: Deme) -> list[float]:
    """Per-chromosome selection probability fitness[i]/total; uniform when
    every fitness is zero."""
    fits = _fitness_array(deme)
    total = float(fits.sum())
    if total == 0.0:
        return [1.0 / len(fits)] * len(fits)
    return [float(f) / total for f in fits]


def take_elite(deme: Deme) -> list[Chromosome]:
    """Copies of the elite_count fittest chromosomes (ties to lower
    provenance id), carried into the next generation unchanged."""
    if any(ch.fitness is None for ch in deme.chromosomes):
        raise ValueError("deme has unevaluated chromosomes")
    order = sorted(
        deme.chromosomes, key=lambda ch: (-ch.fitness, ch.provenance)  # type: ignore[operator]
    )
    return [dataclasses.replace(ch) for ch in order[: deme.elite_count]]


def select_parents(deme: Deme, rng: np.random.Generator) -> tuple[Chromosome, Chromosome]:
    """Roulette-pool tournament selection of two parents, independently.

    For each parent a pool size r is drawn uniformly from [1, deme size],
    the pool is filled by r roulette-wheel draws (probability proportional
    to fitness, with replacement; uniform draws when all fitness is zero),
    and the fittest pool member wins.  Fitness ties resolve to the earliest
    draw, which keeps selection uniform on equal-fitness demes.  The two
    parents may coincide.
    """
    chroms = deme.chromosomes
    n = len(chroms)
    if n < 2:
        raise ValueError("selection needs a deme of at least 2 chromosomes")
    fits = _fitness_array(deme)
    total = float(fits.sum())
    cum = np.cumsum(fits) if total > 0.0 else None

    def one() -> Chromosome:
        r = int(rng.integers(1, n + 1))
        if cum is not None:
            pool = np.searchsorted(cum, rng.random(r) * total, side="right")
            pool = np.minimum(pool, n - 1)
        else:
            pool = rng.integers(0, n, size=r)
        return chroms[int(pool[int(np.argmax(fits[pool]))])]

    first = one()
    second = one()
    return first, second


def _set_gene(genes: TermVector, pos: int, weight: float) -> None:
    if weight == 0.0:
        genes.pop(pos, None)
    else:
        genes[pos] = weight


def two_position_crossover(
    p1: Chromosome,
    p2: Chromosome,
    rng: np.random.Generator,
    span: Sequence[int] | None = None,
) -> tuple[Chromosome, Chromosome]:
    """Exchange the gene values at two random positions between the parents.

    Positions are drawn without replacement from ``span``; by default that
    is the union of the parents' nonzero supports, so the swap is never a
    trivial zero-for-zero exchange.  A span smaller than 2 degrades to a
    single (possibly empty) swap.  Both children inherit the provenance of
    the fitter parent (ties to the first).
    """
    if span is None:
        span = sorted(p1.genes.keys() | p2.genes.keys())
    g1 = dict(p1.genes)
    g2 = dict(p2.genes)
    if len(span) >= 2:
        i, j = rng.choice(len(span), size=2, replace=False)
        positions: tuple[int, ...] = (int(span[int(i)]), int(span[int(j)]))
    elif len(span) == 1:
        positions = (int(span[0]),)
    else:
        positions = ()
    for pos in positions:
        a = p1.genes.get(pos, 0.0)
        b = p2.genes.get(pos, 0.0)
        _set_gene(g1, pos, b)
        _set_gene(g2, pos, a)
    f1 = p1.fitness if p1.fitness is not None else 0.0
    f2 = p2.fitness if p2.fitness is not None else 0.0
    provenance = p1.provenance if f1 >= f2 else p2.provenance
    return (
        Chromosome(genes=g1, provenance=provenance),
        Chromosome(genes=g2, provenance=provenance),
    )


def _mutate(ch: Chromosome, rng: np.random.Generator, rate: float) -> None:
    # optional per-gene perturbation, off by default
    keys = sorted(ch.genes)
    if not keys:
        return
    flags = rng.random(len(keys)) < rate
    factors = rng.uniform(0.5, 1.5, size=len(keys))
    for key, flag, factor in zip(keys, flags, factors):
        if flag:
            ch.genes[key] *= float(factor)
    ch.norm2 = None


def next_generation(
    deme: Deme,
    rng: np.random.Generator,
    *,
    full_span_size: int | None = None,
    mutation_enabled: bool = False,
    mutation_rate: float = 0.01,
) -> Deme:
    """Elites plus bred offspring, at the same deme size.

    Demes smaller than 2 pass through unchanged apart from the generation
    counter.  Offspring fitness stays unset until the next evaluation.
    """
    n = len(deme.chromosomes)
    if n < 2:
        return Deme(
            index=deme.index,
            chromosomes=list(deme.chromosomes),
            generation=deme.generation + 1,
            cluster=deme.cluster,
        )
    members = take_elite(deme)
    span = range(full_span_size) if full_span_size else None
    while len(members) < n:
        p1, p2 = select_parents(deme, rng)
        c1, c2 = two_position_crossover(p1, p2, rng, span=span)
        if mutation_enabled:
            _mutate(c1, rng, mutation_rate)
            _mutate(c2, rng, mutation_rate)
        members.append(c1)
        if len(members) < n:
            members.append(c2)
    return Deme(
        index=deme.index,
        chromosomes=members,
        generation=deme.generation + 1,
        cluster=deme.cluster,
    )


def _pair_migration_count(cfg: GaConfig, sender_size: int, receiver_size: int) -> int:
    if cfg.migration_count is not None:
        count = cfg.migration_count
    else:
        count = max(1, (MIGRATION_FRACTION_PCT * sender_size + 99) // 100)
    return min(count, sender_size, receiver_size)


def migrate(demes: list[Deme], cfg: GaConfig) -> list[Deme]:
    """Synchronous ring migration: deme i sends copies of its fittest
    chromosomes to deme (i+1) mod D, replacing the receiver's least fit.

    All migrant sets are computed from the pre-migration state; deme sizes
    are unchanged.  A single deme is a no-op.
    """
    if len(demes) < 2:
        return demes
    if any(ch.fitness is None for d in demes for ch in d.chromosomes):
        raise ValueError("migration requires fully evaluated demes")
    n_demes = len(demes)
    outgoing: list[list[Chromosome]] = []
    for i, deme in enumerate(demes):
        receiver = demes[(i + 1) % n_demes]
        count = _pair_migration_count(cfg, len(deme.chromosomes), len(receiver.chromosomes))
        best = sorted(
            deme.chromosomes, key=lambda ch: (-ch.fitness, ch.provenance)  # type: ignore[operator]
        )[:count]
        outgoing.append([dataclasses.replace(ch) for ch in best])
    for i, migrants in enumerate(outgoing):
        receiver = demes[(i + 1) % n_demes]
        chroms = receiver.chromosomes
        worst = sorted(
            range(len(chroms)),
            key=lambda ix: (chroms[ix].fitness, -chroms[ix].provenance),
        )[: len(migrants)]
        for slot, migrant in zip(sorted(worst), migrants):
            chroms[slot] = migrant
    return demes


def _evolve(
    demes: list[Deme],
    query: TermVector,
    cfg: GaConfig,
    workers: int = 1,
    trace: TextIO | None = None,
) -> dict[int, float]:
    """Core generation loop; returns best fitness ever seen per document id."""
    total_chromosomes = sum(len(d.chromosomes) for d in demes)
    if cfg.generations == POPULATION_SIZE:
        generations = total_chromosomes
    else:
        generations = int(cfg.generations)
    full_span_size = None
    if cfg.full_span_crossover:
        occupied = [max(ch.genes) for deme in demes for ch in deme.chromosomes if ch.genes]
        full_span_size = max(occupied) + 1 if occupied else None

    query_n2 = norm2(query)
    best: dict[int, float] = {}
    if trace is not None:
        trace.write("generation,deme,best_fitness,mean_fitness\n")

    for gen in range(generations):
        for deme in demes:
            evaluate_deme(deme, query, workers=workers, query_norm2=query_n2)
        for deme in demes:
            for ch in deme.chromosomes:
                prev = best.get(ch.provenance)
                if prev is None or ch.fitness > prev:
                    best[ch.provenance] = ch.fitness  # type: ignore[assignment]
            if trace is not None:
                fits = [ch.fitness for ch in deme.chromosomes]
                trace.write(
                    f"{gen},{deme.index},{max(fits)!r},{sum(fits) / len(fits)!r}\n"
                )
        if gen > 0 and gen % cfg.migration_interval == 0 and len(demes) > 1:
            migrate(demes, cfg)
        if gen == generations - 1:
            break  # nothing would evaluate the bred generation

        def breed(deme: Deme) -> Deme:
            return next_generation(
                deme,
                deme_rng(cfg.seed, deme.index, gen),
                full_span_size=full_span_size,
                mutation_enabled=cfg.mutation_enabled,
                mutation_rate=cfg.mutation_rate,
            )

        demes[:] = pmap(breed, demes, workers)
    return best


def run_hpga(
    vectors: Mapping[int, TermVector],
    cs: ClusterSet,
    selected: Sequence[int],
    query: TermVector,
    cfg: GaConfig,
    *,
    workers: int = 1,
    trace: TextIO | None = None,
    query_id: int | None = None,
) -> RankedList:
    """Evolve the selected clusters against the query and rank every member
    document by the best fitness observed in its lineage."""
    demes = init_demes(cs, selected, vectors)
    scores = _evolve(demes, query, cfg, workers=workers, trace=trace)
    entries = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankedList(entries=entries, query_id=query_id)


def run_single_population(
    vectors: Mapping[int, TermVector],
    query: TermVector,
    cfg: GaConfig,
    *,
    workers: int = 1,
    trace: TextIO | None = None,
    query_id: int | None = None,
) -> RankedList:
    """The same engine with one deme holding the entire corpus: no
    clustering, no migration.  Used as the single-population GA baseline."""
    chromosomes = [Chromosome(genes=vectors[d], provenance=d) for d in sorted(vectors)]
    if not chromosomes:
        raise ValueError("cannot run on an empty corpus")
    demes = [Deme(index=0, chromosomes=chromosomes)]
    scores = _evolve(demes, query, cfg, workers=workers, trace=trace)
    entries = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankedList(entries=entries, query_id=query_id)
