"""Seeded random types, exact scenario probabilities, tail bounds, and
neighborhood-bound checkers with Monte Carlo aggregation.

Randomness is a counter-based splitmix-style mixer over (seed, stream
index), so samples are bit-for-bit reproducible from the documented stream
layout: vertex colors in index order first (general model only; the
friendly model's colors are fixed), then edge colors in lexicographic pair
order.  Two-way choices use the draw mod 2, three-way choices mod 3, with
0 -> red, 1 -> blue, 2 -> green.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .model import (
    BLUE,
    GREEN,
    RED,
    SimpleGraph,
    TypeGraph,
    matrix_from_type,
    block_row_distinctness,
    find_subtype_copy,
    pair_index,
)

_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def splitmix_draw(seed: int, index: int) -> int:
    """Scalar reference for the counter-based generator (64-bit draws)."""
    z = (seed + (index + 1) * _GOLD) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _draws(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized draws for stream indices start..start+count-1."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed & _MASK) + (idx + np.uint64(1)) * np.uint64(_GOLD)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RandomSpec:
    """Sampling request: n red+blue pairs (friendly) or n vertices (general)."""

    n: int
    model: str
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.model not in ("general", "friendly"):
            raise ValueError(f"unknown model {self.model!r}")


def _sample_arrays(spec: RandomSpec) -> tuple[np.ndarray, np.ndarray]:
    if spec.model == "friendly":
        n, nv = spec.n, 2 * spec.n
        colors = np.concatenate(
            [np.full(n, RED, dtype=np.int8), np.full(n, BLUE, dtype=np.int8)]
        )
        rows, cols = np.triu_indices(nv, 1)
        draws = _draws(spec.seed, 0, len(rows))
        same_class = (rows < n) == (cols < n)
        edges = np.where(
            same_class,
            (draws % np.uint64(2)).astype(np.int8),
            (draws % np.uint64(3)).astype(np.int8),
        )
        return colors, edges
    n = spec.n
    vdraws = _draws(spec.seed, 0, n)
    colors = (vdraws % np.uint64(2)).astype(np.int8)
    pairs = n * (n - 1) // 2
    edraws = _draws(spec.seed, n, pairs)
    return colors, (edraws % np.uint64(3)).astype(np.int8)


def sample_type(spec: RandomSpec) -> TypeGraph:
    """Deterministic-in-seed random type for the requested model."""
    colors, edges = _sample_arrays(spec)
    return TypeGraph(tuple(int(c) for c in colors), tuple(int(c) for c in edges))


def color_matrix(tau: TypeGraph) -> np.ndarray:
    """Symmetric edge-color matrix (int8) with -1 on the diagonal."""
    n = tau.n
    mat = np.full((n, n), -1, dtype=np.int8)
    if n > 1:
        rows, cols = np.triu_indices(n, 1)
        vals = np.asarray(tau.edge_colors, dtype=np.int8)
        mat[rows, cols] = vals
        mat[cols, rows] = vals
    return mat


def plant_subtype(
    tau: TypeGraph, pattern: TypeGraph, position: Sequence[int]
) -> TypeGraph:
    """Overwrite edge colors inside `position` so that it carries `pattern`.

    position[k] plays pattern vertex k; vertex colors must already match.
    Everything outside the planted positions is untouched.
    """
    if len(position) != pattern.n:
        raise ValueError("position length does not match pattern order")
    if len(set(position)) != len(position):
        raise ValueError("position vertices must be distinct")
    for k, h in enumerate(position):
        if not 0 <= h < tau.n:
            raise ValueError(f"position vertex {h} outside type")
        if tau.vertex_colors[h] != pattern.vertex_colors[k]:
            raise ValueError(
                f"vertex color mismatch: position {h} cannot play pattern vertex {k}"
            )
    colors = list(tau.edge_colors)
    for k in range(pattern.n):
        for l in range(k + 1, pattern.n):
            i, j = position[k], position[l]
            if i > j:
                i, j = j, i
            colors[pair_index(i, j, tau.n)] = pattern.edge(k, l)
    return TypeGraph(tau.vertex_colors, tuple(colors))


def choose_plant_positions(
    tau: TypeGraph, pattern: TypeGraph, seed: int
) -> tuple[int, ...]:
    """Seeded color-respecting positions for planting `pattern` into `tau`."""
    rng = random.Random(f"plant-{seed}")
    reds = [v for v in range(tau.n) if tau.vertex_colors[v] == RED]
    blues = [v for v in range(tau.n) if tau.vertex_colors[v] == BLUE]
    need_red = sum(1 for c in pattern.vertex_colors if c == RED)
    need_blue = pattern.n - need_red
    if len(reds) < need_red or len(blues) < need_blue:
        raise ValueError(
            f"type has {len(reds)} red / {len(blues)} blue vertices; "
            f"pattern needs {need_red} red / {need_blue} blue"
        )
    red_slots = iter(sorted(rng.sample(reds, need_red)))
    blue_slots = iter(sorted(rng.sample(blues, need_blue)))
    return tuple(
        next(red_slots) if c == RED else next(blue_slots)
        for c in pattern.vertex_colors
    )


# ---------------------------------------------------------------------------
# exact membership probabilities

SCENARIO_LIMIT = 10**7


@dataclass(frozen=True)
class MembershipScenario:
    """A fresh vertex of a fixed color against constraint sets in one model.

    `vertices` declares the constraint vertices (name, color); `sets` are
    the constraint sets the fresh vertex must be a common neighbor of.
    `pairwise` may pin edge colors among the constraint vertices; those do
    not influence the probability but are validated for consistency.
    """

    model: str
    candidate_color: int
    vertices: tuple[tuple[str, int], ...]
    sets: tuple[tuple[str, ...], ...]
    pairwise: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.model not in ("general", "friendly"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.candidate_color not in (RED, BLUE):
            raise ValueError("candidate color must be red or blue")
        names = [name for name, _ in self.vertices]
        if len(set(names)) != len(names):
            raise ValueError("duplicate constraint vertex names")
        colors = dict(self.vertices)
        for _, c in self.vertices:
            if c not in (RED, BLUE):
                raise ValueError("constraint vertex colors must be red or blue")
        for s in self.sets:
            for name in s:
                if name not in colors:
                    raise ValueError(f"set member {name!r} not declared")
            if len(set(s)) != len(s):
                raise ValueError("duplicate member inside a constraint set")
        seen_pairs = set()
        for a, b, c in self.pairwise:
            if a not in colors or b not in colors or a == b:
                raise ValueError(f"bad pairwise declaration ({a!r}, {b!r})")
            key = frozenset((a, b))
            if key in seen_pairs:
                raise ValueError(f"pair ({a!r}, {b!r}) declared twice")
            seen_pairs.add(key)
            if c not in (RED, BLUE, GREEN):
                raise ValueError("bad pairwise edge color")
            if self.model == "friendly" and c == GREEN and colors[a] == colors[b]:
                raise ValueError(
                    f"inconsistent scenario: green edge between same-colored "
                    f"{a!r} and {b!r} in the friendly model"
                )


@dataclass(frozen=True)
class ProbabilityResult:
    value: Fraction
    scenario: MembershipScenario

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError("probability outside [0, 1]")


def exact_membership_probability(scenario: MembershipScenario) -> ProbabilityResult:
    """Exact P(fresh vertex lies in every constraint set's common
    neighborhood), by enumerating the colorings of its edges to the
    constraint vertices."""
    names = [name for name, _ in scenario.vertices]
    colors = dict(scenario.vertices)
    domains = []
    for name in names:
        if scenario.model == "friendly" and colors[name] == scenario.candidate_color:
            domains.append((RED, BLUE))
        else:
            domains.append((RED, BLUE, GREEN))
    total = 1
    for d in domains:
        total *= len(d)
    if total > SCENARIO_LIMIT:
        raise ValueError(f"scenario enumeration of {total} colorings exceeds guard")
    index = {name: k for k, name in enumerate(names)}
    member_sets = [tuple(index[name] for name in s) for s in scenario.sets]
    good = 0
    for coloring in product(*domains):
        ok = True
        for members in member_sets:
            saw_red = saw_blue = False
            for k in members:
                if coloring[k] == RED:
                    saw_red = True
                elif coloring[k] == BLUE:
                    saw_blue = True
            if saw_red and saw_blue:
                ok = False
                break
        if ok:
            good += 1
    return ProbabilityResult(Fraction(good, total), scenario)


# ---------------------------------------------------------------------------
# tail bound


def chernoff_exponent(eps: Fraction | float, n: int) -> Fraction:
    """Exact exponent (7/72) * eps^2 * (n - 2) of the lower-tail bound."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    if n < 3:
        raise ValueError("n must be at least 3")
    return Fraction(7, 72) * eps * eps * (n - 2)


def chernoff_tail_bound(eps: Fraction | float, n: int) -> float:
    """exp(-(7/72) eps^2 (n-2)): lower-tail bound for the pairwise
    neighborhood intersection size in the friendly model."""
    return math.exp(-float(chernoff_exponent(eps, n)))


# ---------------------------------------------------------------------------
# neighborhood-bound checkers

EXHAUSTIVE_TUPLE_LIMIT = 10**7

LEMMA_THRESHOLDS = {
    "nsize": (Fraction(2, 3), Fraction(16, 27)),
    "nsize2": (Fraction(1, 36), Fraction(1, 40)),
    "nsize3": (Fraction(14, 27), Fraction(13, 27)),
}


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of a neighborhood-bound check.

    `scale` is the n the thresholds multiply (class size for the friendly
    checks, vertex count for nsize3).  Worst witnesses are the quantified
    tuples with the smallest part-i size / largest part-ii size seen.
    """

    lemma_id: str
    scale: int
    vertex_count: int
    mode: str
    samples: int
    part_i_holds: bool
    part_ii_holds: bool
    worst_i: tuple[int, ...]
    worst_i_size: int
    worst_ii: tuple[int, ...]
    worst_ii_size: int
    threshold_i: Fraction
    threshold_ii: Fraction


def _pair_membership(cmat: np.ndarray, v: int, w: int) -> np.ndarray:
    """Boolean mask of vertices lying in the common neighborhood of {v, w}."""
    cv, cw = cmat[:, v], cmat[:, w]
    conflict = ((cv == RED) & (cw == BLUE)) | ((cv == BLUE) & (cw == RED))
    mask = ~conflict
    mask[v] = mask[w] = False
    return mask


def _set_membership(cmat: np.ndarray, members: Sequence[int]) -> np.ndarray:
    cols = cmat[:, list(members)]
    saw_red = (cols == RED).any(axis=1)
    saw_blue = (cols == BLUE).any(axis=1)
    mask = ~(saw_red & saw_blue)
    mask[list(members)] = False
    return mask


def _extension_counts(cmat: np.ndarray, members: Sequence[int]) -> np.ndarray:
    """counts[v] = |N(members + {v})| for every vertex v (junk at members)."""
    cols = cmat[:, list(members)]
    saw_red = (cols == RED).any(axis=1)
    saw_blue = (cols == BLUE).any(axis=1)
    red1 = saw_red[:, None] | (cmat == RED)
    blue1 = saw_blue[:, None] | (cmat == BLUE)
    allowed = ~(red1 & blue1)
    allowed[list(members), :] = False
    np.fill_diagonal(allowed, False)
    return allowed.sum(axis=0)


def _require_balanced(tau: TypeGraph, lemma_id: str) -> tuple[list[int], list[int]]:
    reds = list(tau.red_vertices())
    blues = list(tau.blue_vertices())
    if len(reds) != len(blues):
        raise ValueError(
            f"{lemma_id} check expects equally many red and blue vertices, "
            f"got {len(reds)} red / {len(blues)} blue"
        )
    return reds, blues


def check_neighborhood_lemma(
    tau: TypeGraph,
    lemma_id: str,
    mode: str = "exhaustive",
    samples: int = 2000,
    seed: int = 0,
) -> LemmaReport:
    """Check the part-i lower bound and part-ii upper bound for one type.

    mode "exhaustive" walks every quantified tuple (guarded at 10^7);
    "sampled" draws `samples` tuples with a generator seeded by `seed`.
    """
    if lemma_id not in LEMMA_THRESHOLDS:
        raise ValueError(f"unknown lemma id {lemma_id!r}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sampled" and samples < 1:
        raise ValueError("samples must be positive")
    thr_i, thr_ii = LEMMA_THRESHOLDS[lemma_id]
    cmat = color_matrix(tau)
    nv = tau.n

    if lemma_id == "nsize":
        reds, blues = _require_balanced(tau, lemma_id)
        scale = len(reds)
        if scale < 2:
            raise ValueError("nsize check needs at least two vertices per color")
        tuples_i = _nsize_tuples(tau, cmat, reds, blues, mode, samples, seed)
    elif lemma_id == "nsize2":
        reds, blues = _require_balanced(tau, lemma_id)
        scale = len(reds)
        if len(reds) < 6 or len(blues) < 3:
            raise ValueError("nsize2 check needs six red and three blue vertices")
        tuples_i = _fixed_set_tuples(
            cmat, nv, mode, samples, seed, red_pool=reds, blue_pool=blues,
            red_count=6, blue_count=3, label="nsize2",
        )
    else:
        scale = nv
        if nv < 3:
            raise ValueError("nsize3 check needs at least three vertices")
        tuples_i = _fixed_set_tuples(
            cmat, nv, mode, samples, seed, red_pool=list(range(nv)), blue_pool=[],
            red_count=3, blue_count=0, label="nsize3",
        )

    worst_i: tuple[int, ...] = ()
    worst_i_size = nv + 1
    worst_ii: tuple[int, ...] = ()
    worst_ii_size = -1
    checked = 0
    for witness_i, size_i, witness_ii, size_ii in tuples_i:
        checked += 1
        if size_i < worst_i_size:
            worst_i_size = size_i
            worst_i = witness_i
        if size_ii > worst_ii_size:
            worst_ii_size = size_ii
            worst_ii = witness_ii
    return LemmaReport(
        lemma_id=lemma_id,
        scale=scale,
        vertex_count=nv,
        mode=mode,
        samples=checked,
        part_i_holds=Fraction(worst_i_size) >= thr_i * scale,
        part_ii_holds=Fraction(worst_ii_size) <= thr_ii * scale,
        worst_i=worst_i,
        worst_i_size=worst_i_size,
        worst_ii=worst_ii,
        worst_ii_size=worst_ii_size,
        threshold_i=thr_i,
        threshold_ii=thr_ii,
    )


def _nsize_tuples(tau, cmat, reds, blues, mode, samples, seed):
    """Yield (witness_i, size_i, witness_ii, size_ii) per checked tuple."""
    nv = tau.n
    if mode == "exhaustive":
        red_pairs = list(combinations(reds, 2))
        blue_pairs = list(combinations(blues, 2))
        all_pairs = list(combinations(range(nv), 2))
        space = len(red_pairs) * len(blue_pairs) * max(len(all_pairs) - 2, 1)
        if space > EXHAUSTIVE_TUPLE_LIMIT:
            raise ValueError(
                f"exhaustive tuple space {space} exceeds {EXHAUSTIVE_TUPLE_LIMIT}; "
                "use sampled mode"
            )
        pair_masks = np.stack([_pair_membership(cmat, v, w) for v, w in all_pairs])
        pm_int = pair_masks.astype(np.int32)
        pair_pos = {pq: k for k, pq in enumerate(all_pairs)}
        for r1, r2 in red_pairs:
            mask_r = pair_masks[pair_pos[(r1, r2)]]
            for b1, b2 in blue_pairs:
                mask4 = mask_r & pair_masks[pair_pos[(b1, b2)]]
                size_i = int(mask4.sum())
                counts = pm_int @ mask4.astype(np.int32)
                counts[pair_pos[(r1, r2)]] = -1
                counts[pair_pos[(b1, b2)]] = -1
                k = int(counts.argmax())
                v, w = all_pairs[k]
                yield (
                    (r1, r2, b1, b2),
                    size_i,
                    (r1, r2, b1, b2, v, w),
                    int(counts[k]),
                )
        return
    rng = random.Random(f"nsize-{seed}")
    for _ in range(samples):
        r1, r2 = sorted(rng.sample(reds, 2))
        b1, b2 = sorted(rng.sample(blues, 2))
        mask4 = _pair_membership(cmat, r1, r2) & _pair_membership(cmat, b1, b2)
        while True:
            v, w = sorted(rng.sample(range(nv), 2))
            if (v, w) != (r1, r2) and (v, w) != (b1, b2):
                break
        mask6 = mask4 & _pair_membership(cmat, v, w)
        yield (r1, r2, b1, b2), int(mask4.sum()), (r1, r2, b1, b2, v, w), int(
            mask6.sum()
        )


def _fixed_set_tuples(
    cmat, nv, mode, samples, seed, red_pool, blue_pool, red_count, blue_count, label
):
    """Sets A of fixed color composition; part ii ranges over all v outside A."""

    def evaluate(members: tuple[int, ...]):
        mask = _set_membership(cmat, members)
        counts = _extension_counts(cmat, members)
        outside = np.ones(nv, dtype=bool)
        outside[list(members)] = False
        counts = np.where(outside, counts, -1)
        v = int(counts.argmax())
        return members, int(mask.sum()), members + (v,), int(counts[v])

    if mode == "exhaustive":
        red_choices = list(combinations(red_pool, red_count))
        blue_choices = (
            list(combinations(blue_pool, blue_count)) if blue_count else [()]
        )
        space = len(red_choices) * len(blue_choices) * max(nv - red_count - blue_count, 1)
        if space > EXHAUSTIVE_TUPLE_LIMIT:
            raise ValueError(
                f"exhaustive tuple space {space} exceeds {EXHAUSTIVE_TUPLE_LIMIT}; "
                "use sampled mode"
            )
        for rsel in red_choices:
            for bsel in blue_choices:
                yield evaluate(tuple(rsel) + tuple(bsel))
        return
    rng = random.Random(f"{label}-{seed}")
    for _ in range(samples):
        rsel = sorted(rng.sample(red_pool, red_count))
        bsel = sorted(rng.sample(blue_pool, blue_count)) if blue_count else []
        yield evaluate(tuple(rsel) + tuple(bsel))


def exhaustive_tuple_space(tau: TypeGraph, lemma_id: str) -> int:
    """Size of the quantified tuple space walked by the exhaustive checker."""
    nv = tau.n
    if lemma_id == "nsize":
        reds, blues = _require_balanced(tau, lemma_id)
        return (
            math.comb(len(reds), 2)
            * math.comb(len(blues), 2)
            * max(math.comb(nv, 2) - 2, 1)
        )
    if lemma_id == "nsize2":
        reds, blues = _require_balanced(tau, lemma_id)
        return math.comb(len(reds), 6) * math.comb(len(blues), 3) * max(nv - 9, 1)
    if lemma_id == "nsize3":
        return math.comb(nv, 3) * max(nv - 3, 1)
    raise ValueError(f"unknown lemma id {lemma_id!r}")


# ---------------------------------------------------------------------------
# Monte Carlo aggregation

MC_KINDS = ("lemma", "block_rows", "contains_rho", "edge_frequency")


@dataclass(frozen=True)
class MCProperty:
    """What to measure per sampled type.

    kind "lemma": success iff the requested part(s) of the lemma check hold;
    measured value is the worst part-i size.  kind "block_rows": both
    diagonal blocks of the matrix have pairwise distinct rows.  kind
    "contains_rho": an exact copy of the pattern exists.  kind
    "edge_frequency": measured value is the frequency of `color`; always a
    success.
    """

    kind: str
    model: str = "friendly"
    lemma_id: str = "nsize"
    part: str = "i"  # i | ii | both
    lemma_mode: str = "sampled"
    tuple_samples: int = 200
    rho: str = "thm1"
    color: int = GREEN

    def __post_init__(self) -> None:
        if self.kind not in MC_KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")
        if self.part not in ("i", "ii", "both"):
            raise ValueError(f"unknown part {self.part!r}")
        if self.rho not in ("thm1", "thm3"):
            raise ValueError(f"unknown rho token {self.rho!r}")

    def label(self) -> str:
        if self.kind == "lemma":
            return f"lemma:{self.lemma_id}:{self.part}"
        if self.kind == "contains_rho":
            return f"contains_rho:{self.rho}"
        if self.kind == "edge_frequency":
            from .model import COLOR_NAMES

            return f"edge_frequency:{COLOR_NAMES[self.color]}"
        return self.kind


@dataclass(frozen=True)
class MCSummary:
    property_label: str
    model: str
    n: int
    trials: int
    successes: int
    mean: float
    stddev: float

    @property
    def fraction(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


def _evaluate_trial(prop: MCProperty, n: int, seed: int) -> tuple[bool, float]:
    spec = RandomSpec(n, prop.model, seed)
    if prop.kind == "lemma":
        tau = sample_type(spec)
        report = check_neighborhood_lemma(
            tau,
            prop.lemma_id,
            mode=prop.lemma_mode,
            samples=prop.tuple_samples,
            seed=seed,
        )
        if prop.part == "i":
            ok = report.part_i_holds
        elif prop.part == "ii":
            ok = report.part_ii_holds
        else:
            ok = report.part_i_holds and report.part_ii_holds
        return ok, float(report.worst_i_size)
    if prop.kind == "block_rows":
        tau = sample_type(spec)
        rep = block_row_distinctness(matrix_from_type(tau))
        ok = rep.a_rows_distinct and rep.b_rows_distinct
        return ok, 1.0 if ok else 0.0
    if prop.kind == "contains_rho":
        from .constructions import rho_obstruction_family, rho_three_coloring

        pattern = (
            rho_obstruction_family() if prop.rho == "thm1" else rho_three_coloring()
        )
        tau = sample_type(spec)
        ok = find_subtype_copy(tau, pattern) is not None
        return ok, 1.0 if ok else 0.0
    # edge_frequency
    _, edges = _sample_arrays(spec)
    freq = float((edges == prop.color).mean()) if len(edges) else 0.0
    return True, freq


def monte_carlo(
    prop: MCProperty, n_values: Sequence[int], seeds: Sequence[int]
) -> tuple[MCSummary, ...]:
    """Per-n success fractions and measured-value statistics over the seeds.

    Trials are independent given (n, seed); aggregation is order-free sums,
    so results do not depend on evaluation order.
    """
    if not seeds:
        raise ValueError("need at least one seed")
    summaries = []
    for n in n_values:
        successes = 0
        values = []
        for seed in seeds:
            ok, value = _evaluate_trial(prop, n, seed)
            successes += ok
            values.append(value)
        arr = np.array(values, dtype=float)
        stddev = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        summaries.append(
            MCSummary(
                property_label=prop.label(),
                model=prop.model,
                n=n,
                trials=len(seeds),
                successes=successes,
                mean=float(arr.mean()),
                stddev=stddev,
            )
        )
    return tuple(summaries)


# ---------------------------------------------------------------------------
# experiment spec files (key=value lines)


@dataclass(frozen=True)
class ExperimentSpec:
    prop: MCProperty
    n_values: tuple[int, ...]
    seeds: tuple[int, ...]
    threshold: float | None


def _parse_seed_field(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(range(int(text)))


def parse_experiment_spec(text: str) -> ExperimentSpec:
    """Parse an experiment description made of key=value lines.

    Keys: property (required), model, lemma, part, mode (sampled:<k> or
    exhaustive), n (comma list, required), seeds (count, a..b, or comma
    list; required), threshold, color, rho.  '#' starts a comment.
    """
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    known = {
        "property", "model", "lemma", "part", "mode", "n", "seeds",
        "threshold", "color", "rho",
    }
    for key in fields:
        if key not in known:
            raise ValueError(f"unknown experiment key {key!r}")
    for required in ("property", "n", "seeds"):
        if required not in fields:
            raise ValueError(f"missing experiment key {required!r}")

    lemma_mode, tuple_samples = "sampled", 200
    if "mode" in fields:
        mode = fields["mode"]
        if mode == "exhaustive":
            lemma_mode = "exhaustive"
        elif mode.startswith("sampled:"):
            tuple_samples = int(mode.split(":", 1)[1])
        elif mode == "sampled":
            pass
        else:
            raise ValueError(f"bad mode {mode!r}")
    color_names = {"red": RED, "blue": BLUE, "green": GREEN}
    color = fields.get("color", "green")
    if color not in color_names:
        raise ValueError(f"bad color {color!r}")
    prop = MCProperty(
        kind=fields["property"],
        model=fields.get("model", "friendly"),
        lemma_id=fields.get("lemma", "nsize"),
        part=fields.get("part", "i"),
        lemma_mode=lemma_mode,
        tuple_samples=tuple_samples,
        rho=fields.get("rho", "thm1"),
        color=color_names[color],
    )
    n_values = tuple(int(x) for x in fields["n"].split(","))
    if not n_values or any(n < 1 for n in n_values):
        raise ValueError("n values must be positive")
    seeds = _parse_seed_field(fields["seeds"])
    if not seeds:
        raise ValueError("empty seed list")
    threshold = float(fields["threshold"]) if "threshold" in fields else None
    return ExperimentSpec(prop, n_values, seeds, threshold)


def run_experiment(spec: ExperimentSpec) -> tuple[MCSummary, ...]:
    return monte_carlo(spec.prop, spec.n_values, spec.seeds)
