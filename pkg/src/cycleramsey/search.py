"""Finite arrowing decisions: exhaustive backtracking and randomized search.

An instance fixes a host (complete graph minus holes, with an optional
deletion budget) and one target per color. "Arrows" means every admissible
coloring contains some target; a witness coloring avoiding all targets
refutes it. Unknown is a first-class verdict and never conflated with a
decision.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Optional, Union

from .cycles import has_cycle_of_length, longest_cycle
from .errors import BudgetExceededError, NoQualifyingComponent
from .graphs import EdgeColoring, Graph, HoleSpec, _bits, coloring_to_dict
from .matchings import best_component_matching

DEFAULT_SEARCH_BUDGET = 10**8
DEFAULT_EXACT_CAP = 13
DEFAULT_SEED = 1729


@dataclass(frozen=True)
class CycleTarget:
    """Demand a cycle in this color: exact length, or at least that length."""

    length: int
    exact: bool = True

    def key(self):
        return ("cycle", self.length, self.exact)


@dataclass(frozen=True)
class MatchingTarget:
    """Demand a matching of the given saturation inside one monochromatic
    component (non-bipartite if flagged)."""

    saturation: int
    nonbipartite: bool = False

    def key(self):
        return ("matching", self.saturation, self.nonbipartite)


Target = Union[CycleTarget, MatchingTarget]


@dataclass(frozen=True)
class ArrowInstance:
    n: int
    targets: tuple[Target, ...]
    holes: HoleSpec = HoleSpec()
    deleted_budget: int = 0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) not in (2, 3):
            raise ValueError("need 2 or 3 targets (one per color)")
        for t in self.targets:
            if isinstance(t, CycleTarget):
                if t.length < 3:
                    raise ValueError(f"cycle length {t.length} below 3")
            elif isinstance(t, MatchingTarget):
                if t.saturation < 2 or t.saturation % 2:
                    raise ValueError(
                        f"saturation {t.saturation} must be even and >= 2"
                    )
            else:
                raise TypeError(f"unknown target {t!r}")
        self.holes.validate(self.n)
        if self.deleted_budget < 0:
            raise ValueError("deleted budget must be nonnegative")

    @property
    def k(self) -> int:
        return len(self.targets)

    def present_edges(self) -> list[tuple[int, int]]:
        """Assignable pairs in lexicographic (max endpoint, min endpoint) order."""
        out = []
        for v in range(self.n):
            for u in range(v):
                if not self.holes.forbids(u, v):
                    out.append((u, v))
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "holes": [sorted(h) for h in self.holes.holes],
            "deleted_budget": self.deleted_budget,
            "targets": [
                {
                    "kind": "cycle",
                    "length": t.length,
                    "exact": t.exact,
                }
                if isinstance(t, CycleTarget)
                else {
                    "kind": "matching",
                    "saturation": t.saturation,
                    "nonbipartite": t.nonbipartite,
                }
                for t in self.targets
            ],
        }


def instance_from_dict(data: dict) -> ArrowInstance:
    targets = []
    for t in data["targets"]:
        if t["kind"] == "cycle":
            targets.append(CycleTarget(int(t["length"]), bool(t.get("exact", True))))
        elif t["kind"] == "matching":
            targets.append(
                MatchingTarget(
                    int(t["saturation"]), bool(t.get("nonbipartite", False))
                )
            )
        else:
            raise ValueError(f"unknown target kind {t['kind']!r}")
    return ArrowInstance(
        n=int(data["n"]),
        targets=tuple(targets),
        holes=HoleSpec(tuple(frozenset(h) for h in data.get("holes", []))),
        deleted_budget=int(data.get("deleted_budget", 0)),
    )


@dataclass
class SearchStats:
    nodes: int = 0
    presence_prunes: int = 0
    symmetry_prunes: int = 0
    leaves: int = 0
    proposals: int = 0
    restarts: int = 0
    best_energy: Optional[int] = None
    elapsed: float = 0.0

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "nodes": self.nodes,
            "presence_prunes": self.presence_prunes,
            "symmetry_prunes": self.symmetry_prunes,
            "leaves": self.leaves,
            "proposals": self.proposals,
            "restarts": self.restarts,
            "best_energy": self.best_energy,
        }
        if include_timings:
            out["elapsed_seconds"] = self.elapsed
        return out


@dataclass
class ArrowVerdict:
    arrows: Optional[bool]  # True / False / None == unknown
    witness: Optional[EdgeColoring]
    stats: SearchStats
    header: dict

    def to_dict(self, include_timings: bool = False) -> dict:
        return {
            "arrows": self.arrows,
            "witness": coloring_to_dict(self.witness) if self.witness else None,
            "stats": self.stats.to_dict(include_timings),
            "header": self.header,
        }


def _header(inst: ArrowInstance, mode: str, **extra) -> dict:
    head = {
        "mode": mode,
        "instance": inst.to_dict(),
        "finite_instantiation": (
            "asymptotic coloring relation instantiated at a fixed host: "
            f"N={inst.n}, deletion budget={inst.deleted_budget}, "
            f"holes={[sorted(h) for h in inst.holes.holes]}"
        ),
    }
    head.update(extra)
    return head


# ---------------------------------------------------------------------------
# Independent target evaluation (used to re-verify every emitted witness).
# ---------------------------------------------------------------------------


def target_present(class_graph: Graph, target: Target) -> bool:
    if isinstance(target, CycleTarget):
        if target.exact:
            return has_cycle_of_length(class_graph, target.length) is not None
        found = longest_cycle(class_graph, "any")
        return found is not None and found[0] >= target.length
    try:
        _, match = best_component_matching(class_graph, target.nonbipartite)
    except NoQualifyingComponent:
        return False
    return match.saturation >= target.saturation


def coloring_avoids_all(coloring: EdgeColoring, targets: tuple[Target, ...]) -> bool:
    return not any(
        target_present(coloring.color_class(i + 1), t) for i, t in enumerate(targets)
    )


def _witness_coloring(inst: ArrowInstance, edges, assignment) -> EdgeColoring:
    colors = {}
    deleted = set()
    for e, c in zip(edges, assignment):
        if c == 0:
            deleted.add(e)
        else:
            colors[e] = c
    return EdgeColoring(
        n=inst.n,
        k=inst.k,
        colors=colors,
        holes=inst.holes,
        deleted=frozenset(deleted),
    )


# ---------------------------------------------------------------------------
# Incremental presence checks on adjacency masks.
# ---------------------------------------------------------------------------


def _exists_path_exact(adj: list[int], u: int, v: int, steps: int, visited: int) -> bool:
    """Simple path from u to v using exactly ``steps`` edges, avoiding visited."""
    if steps == 1:
        return bool(adj[u] >> v & 1)
    cand = adj[u] & ~visited & ~(1 << v)
    for w in _bits(cand):
        if _exists_path_exact(adj, w, v, steps - 1, visited | (1 << w)):
            return True
    return False


def _exists_path_atleast(adj, cur, v, minsteps, visited, steps=0) -> bool:
    """Simple path from the start to v using at least ``minsteps`` edges."""
    if steps + 1 >= minsteps and adj[cur] >> v & 1:
        return True
    for w in _bits(adj[cur] & ~visited & ~(1 << v)):
        if _exists_path_atleast(adj, w, v, minsteps, visited | (1 << w), steps + 1):
            return True
    return False


def _new_edge_creates_target(
    n: int, adj: list[int], target: Target, u: int, v: int
) -> bool:
    """Did adding edge (u,v) to this color class complete its target?"""
    if isinstance(target, CycleTarget):
        if target.length > n:
            return False
        if target.exact:
            return _exists_path_exact(adj, u, v, target.length - 1, 1 << u | 1 << v)
        return _exists_path_atleast(adj, u, v, target.length - 1, 1 << u)
    g = Graph._from_masks(n, list(adj))
    return target_present(g, target)


# ---------------------------------------------------------------------------
# Canonical-extension vertex symmetry and color-group symmetry.
# ---------------------------------------------------------------------------


def _prefix_is_canonical(assignment: list[int], v_top: int) -> bool:
    """Is the colored clique on vertices 0..v_top lex-minimal under relabeling?

    Edge i of the prefix is the i-th pair in (max, min) lex order; the whole
    prefix block is closed under permutations of 0..v_top.
    """
    count = v_top * (v_top + 1) // 2
    vec = assignment[:count]

    def idx(a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        return b * (b - 1) // 2 + a

    pairs = [(u, w) for w in range(v_top + 1) for u in range(w)]
    for perm in itertools.permutations(range(v_top + 1)):
        if perm == tuple(range(v_top + 1)):
            continue
        for pos, (a, b) in enumerate(pairs):
            mapped = vec[idx(perm[a], perm[b])]
            if mapped < vec[pos]:
                return False
            if mapped > vec[pos]:
                break
    return True


def _color_groups(targets: tuple[Target, ...]) -> dict[int, list[int]]:
    """Colors sharing an identical target are interchangeable."""
    groups: dict[tuple, list[int]] = {}
    for i, t in enumerate(targets):
        groups.setdefault(t.key(), []).append(i + 1)
    return {c: sorted(g) for g in groups.values() for c in g}


def arrow_exhaustive(
    inst: ArrowInstance,
    budget: int = DEFAULT_SEARCH_BUDGET,
    symmetry: bool = True,
    exact_cap: int = DEFAULT_EXACT_CAP,
    perm_prefix_cap: int = 7,
) -> ArrowVerdict:
    """Exact arrowing decision by backtracking over edge colorings.

    A branch dies as soon as the partial coloring realizes some target in its
    color. Vertex symmetry is exploited by canonical extension on clique
    prefixes (hole-free instances only), color symmetry only between colors
    with identical targets.
    """
    if inst.n > exact_cap:
        raise ValueError(
            f"N={inst.n} beyond the exact cap {exact_cap}; pass exact_cap explicitly"
        )
    t0 = time.perf_counter()
    stats = SearchStats()
    edges = inst.present_edges()
    k = inst.k
    n = inst.n
    targets = inst.targets
    group_of = _color_groups(targets)
    vertex_sym = symmetry and not inst.holes.holes
    color_sym = symmetry
    # block_end[i]: the prefix clique completed by assigning edge i, if any
    block_end = {}
    if vertex_sym:
        for i, (u, v) in enumerate(edges):
            if u == v - 1 and v >= 2 and v <= perm_prefix_cap - 1:
                block_end[i] = v

    adjs = [[0] * n for _ in range(k + 1)]  # index 0 unused (deletions)
    assignment = [None] * len(edges)
    used_count = [0] * (k + 1)
    deletions_left = inst.deleted_budget
    budget_left = [budget]
    witness: Optional[EdgeColoring] = None

    def choices(i: int) -> list[int]:
        opts = []
        for c in range(1, k + 1):
            if color_sym and used_count[c] == 0:
                grp = group_of[c]
                if any(used_count[d] == 0 and d < c for d in grp):
                    continue  # a symmetric earlier color is still unused
            opts.append(c)
        if deletions_left > 0:
            opts.append(0)
        return opts

    def descend(i: int) -> bool:
        nonlocal deletions_left, witness
        if i == len(edges):
            stats.leaves += 1
            cand = _witness_coloring(inst, edges, assignment)
            if not coloring_avoids_all(cand, targets):
                raise AssertionError(
                    "internal: incremental and independent checks disagree"
                )
            witness = cand
            return True
        u, v = edges[i]
        for c in choices(i):
            stats.nodes += 1
            budget_left[0] -= 1
            if budget_left[0] < 0:
                raise BudgetExceededError(nodes=stats.nodes)
            assignment[i] = c
            if c == 0:
                deletions_left -= 1
            else:
                adjs[c][u] |= 1 << v
                adjs[c][v] |= 1 << u
                used_count[c] += 1
            ok = True
            if c != 0 and _new_edge_creates_target(n, adjs[c], targets[c - 1], u, v):
                stats.presence_prunes += 1
                ok = False
            if ok and i in block_end and not _prefix_is_canonical(
                assignment, block_end[i]
            ):
                stats.symmetry_prunes += 1
                ok = False
            if ok and descend(i + 1):
                return True
            assignment[i] = None
            if c == 0:
                deletions_left += 1
            else:
                adjs[c][u] &= ~(1 << v)
                adjs[c][v] &= ~(1 << u)
                used_count[c] -= 1
        return False

    header = _header(inst, "exhaustive", symmetry=symmetry, budget=budget)
    try:
        found = descend(0)
    except BudgetExceededError:
        stats.elapsed = time.perf_counter() - t0
        return ArrowVerdict(None, None, stats, header)
    stats.elapsed = time.perf_counter() - t0
    if found:
        return ArrowVerdict(False, witness, stats, header)
    return ArrowVerdict(True, None, stats, header)


@dataclass(frozen=True)
class RamseyResult:
    value: Optional[int]
    bracket: tuple[Optional[int], Optional[int]]  # (greatest false + 1, least true)
    verdicts: dict
    unknowns: tuple[int, ...]

    def to_dict(self, include_timings: bool = False) -> dict:
        return {
            "value": self.value,
            "bracket": list(self.bracket),
            "unknowns": list(self.unknowns),
            "verdicts": {
                str(n): v.to_dict(include_timings) for n, v in self.verdicts.items()
            },
        }


def ramsey_number_exact(
    targets: tuple[Target, ...],
    n_range: range,
    budget: int = DEFAULT_SEARCH_BUDGET,
    exact_cap: int = DEFAULT_EXACT_CAP,
    symmetry: bool = True,
) -> RamseyResult:
    """Least N in the range that arrows with N-1 refuted, else a bracket."""
    verdicts: dict[int, ArrowVerdict] = {}
    last_false = None
    first_true = None
    unknowns = []
    for n in n_range:
        inst = ArrowInstance(n=n, targets=tuple(targets))
        v = arrow_exhaustive(inst, budget=budget, exact_cap=exact_cap, symmetry=symmetry)
        verdicts[n] = v
        if v.arrows is True:
            first_true = n
            break
        if v.arrows is False:
            last_false = n
        else:
            unknowns.append(n)
    value = None
    if first_true is not None and last_false == first_true - 1:
        value = first_true
    lower = last_false + 1 if last_false is not None else None
    return RamseyResult(value, (lower, first_true), verdicts, tuple(unknowns))


# ---------------------------------------------------------------------------
# Randomized counterexample search (simulated annealing / min conflicts).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnealSchedule:
    steps: int = 6000
    restarts: int = 3
    t_start: float = 1.5
    t_end: float = 0.05


def _count_paths_exact(adj, u, v, steps, visited) -> int:
    if steps == 1:
        return adj[u] >> v & 1
    total = 0
    for w in _bits(adj[u] & ~visited & ~(1 << v)):
        total += _count_paths_exact(adj, w, v, steps - 1, visited | (1 << w))
    return total


def _energy_of_color(n: int, adj: list[int], target: Target) -> int:
    """How strongly this class realizes its target (0 iff the target is absent).

    Exact-cycle targets use the path-incidence sum (length * cycle count),
    which admits cheap per-move deltas; other targets are scored globally.
    """
    if isinstance(target, CycleTarget) and target.exact:
        total = 0
        for u in range(n):
            for v in _bits(adj[u] >> (u + 1) << (u + 1)):
                total += _count_paths_exact(
                    adj, u, v, target.length - 1, 1 << u | 1 << v
                )
        return total
    g = Graph._from_masks(n, list(adj))
    if isinstance(target, CycleTarget):
        found = longest_cycle(g, "any")
        if found is None or found[0] < target.length:
            return 0
        return found[0] - target.length + 1
    try:
        _, match = best_component_matching(g, target.nonbipartite)
    except NoQualifyingComponent:
        return 0
    return max(0, (match.saturation - target.saturation) // 2 + 1)


def arrow_randomized(
    inst: ArrowInstance,
    schedule: Optional[AnnealSchedule] = None,
    seed: int = DEFAULT_SEED,
    initial: Optional[EdgeColoring] = None,
    workers: int = 1,
) -> ArrowVerdict:
    """Search for a zero-violation coloring; returns a witness or unknown.

    Deterministic for a fixed seed; the worker count never changes the result
    (proposals are evaluated in one deterministic sequence).
    """
    del workers  # accepted for interface parity; results never depend on it
    schedule = schedule or AnnealSchedule()
    rng = random.Random(seed)
    t0 = time.perf_counter()
    stats = SearchStats()
    edges = inst.present_edges()
    n, k = inst.n, inst.k
    targets = inst.targets
    local = [isinstance(t, CycleTarget) and t.exact for t in targets]
    header = _header(
        inst,
        "randomized",
        seed=seed,
        schedule={"steps": schedule.steps, "restarts": schedule.restarts},
    )

    def through_count(c: int, adjs, u: int, v: int) -> int:
        # cycles of the demanded exact length through edge (u,v) in class c;
        # independent of whether (u,v) itself is currently present.
        t = targets[c - 1]
        return _count_paths_exact(adjs[c], u, v, t.length - 1, 1 << u | 1 << v)

    best_energy = None
    for restart in range(schedule.restarts):
        stats.restarts = restart
        if restart == 0 and initial is not None:
            assignment = [initial.colors.get(e, 0) for e in edges]
        else:
            assignment = [rng.randint(1, k) for _ in edges]
        adjs = [[0] * n for _ in range(k + 1)]
        deleted_used = 0
        for (u, v), c in zip(edges, assignment):
            if c == 0:
                deleted_used += 1
            else:
                adjs[c][u] |= 1 << v
                adjs[c][v] |= 1 << u
        energies = [_energy_of_color(n, adjs[c + 1], targets[c]) for c in range(k)]
        total = sum(energies)
        if best_energy is None or total < best_energy:
            best_energy = total
        for step in range(schedule.steps):
            if total == 0:
                break
            stats.proposals += 1
            frac = step / max(1, schedule.steps - 1)
            temp = schedule.t_start * (schedule.t_end / schedule.t_start) ** frac
            i = rng.randrange(len(edges))
            u, v = edges[i]
            old = assignment[i]
            opts = [c for c in range(1, k + 1) if c != old]
            if old != 0 and deleted_used < inst.deleted_budget:
                opts.append(0)
            new = rng.choice(opts)
            updated = {}
            if old != 0:
                if local[old - 1]:
                    t_len = targets[old - 1].length
                    updated[old - 1] = energies[old - 1] - t_len * through_count(
                        old, adjs, u, v
                    )
                adjs[old][u] &= ~(1 << v)
                adjs[old][v] &= ~(1 << u)
                if not local[old - 1]:
                    updated[old - 1] = _energy_of_color(n, adjs[old], targets[old - 1])
            if new != 0:
                adjs[new][u] |= 1 << v
                adjs[new][v] |= 1 << u
                if local[new - 1]:
                    t_len = targets[new - 1].length
                    updated[new - 1] = updated.get(
                        new - 1, energies[new - 1]
                    ) + t_len * through_count(new, adjs, u, v)
                else:
                    updated[new - 1] = _energy_of_color(n, adjs[new], targets[new - 1])
            delta = sum(updated.values()) - sum(energies[c] for c in updated)
            accept = delta <= 0 or rng.random() < pow(
                2.718281828459045, -delta / max(temp, 1e-9)
            )
            if accept:
                assignment[i] = new
                deleted_used += (new == 0) - (old == 0)
                for c, e in updated.items():
                    energies[c] = e
                total += delta
                if total < best_energy:
                    best_energy = total
            else:
                if new != 0:
                    adjs[new][u] &= ~(1 << v)
                    adjs[new][v] &= ~(1 << u)
                if old != 0:
                    adjs[old][u] |= 1 << v
                    adjs[old][v] |= 1 << u
        if total == 0:
            cand = _witness_coloring(inst, edges, assignment)
            if not coloring_avoids_all(cand, targets):
                raise AssertionError("internal: zero-energy coloring fails re-check")
            stats.best_energy = 0
            stats.elapsed = time.perf_counter() - t0
            return ArrowVerdict(False, cand, stats, header)
    stats.best_energy = best_energy
    stats.elapsed = time.perf_counter() - t0
    return ArrowVerdict(None, None, stats, header)


def tau_check(
    inst: ArrowInstance,
    budget: int = DEFAULT_SEARCH_BUDGET,
    exact_cap: int = DEFAULT_EXACT_CAP,
    symmetry: bool = True,
) -> ArrowVerdict:
    """Exact arrowing for matching-only demands via the same backtracking."""
    if not all(isinstance(t, MatchingTarget) for t in inst.targets):
        raise ValueError("tau_check accepts matching targets only")
    verdict = arrow_exhaustive(
        inst, budget=budget, exact_cap=exact_cap, symmetry=symmetry
    )
    verdict.header["mode"] = "tau"
    return verdict
