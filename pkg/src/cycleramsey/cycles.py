"""Exact cycle detection by length and parity, and constructive dense-graph cycles.

Exact searches carry a node-expansion budget; running out raises
BudgetExceededError, which is reported distinctly from "no such cycle".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .errors import BudgetExceededError, PreconditionViolated
from .graphs import Graph, _bits, components

DEFAULT_BUDGET = 10**8

Parity = Literal["any", "odd", "even"]


@dataclass(frozen=True)
class CycleCertificate:
    """A simple cycle given by its vertex sequence (closing edge implicit)."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


def verify_cycle(g: Graph, cert: CycleCertificate) -> bool:
    vs = cert.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


class _Budget:
    __slots__ = ("left", "spent")

    def __init__(self, amount: int):
        self.left = amount
        self.spent = 0

    def spend(self, k: int = 1) -> None:
        self.left -= k
        self.spent += k
        if self.left < 0:
            raise BudgetExceededError(nodes=self.spent)


def _reachable(g: Graph, start_mask: int, allowed: int) -> int:
    """Closure of ``start_mask`` through vertices in ``allowed`` (start included)."""
    comp = start_mask
    frontier = start_mask
    while frontier:
        grow = 0
        for v in _bits(frontier):
            grow |= g._adj[v]
        frontier = grow & allowed & ~comp
        comp |= frontier
    return comp


def has_cycle_of_length(
    g: Graph, length: int, budget: int = DEFAULT_BUDGET
) -> Optional[CycleCertificate]:
    """Find a simple cycle of exactly ``length`` vertices, or prove absence.

    Anchored DFS over simple paths: the anchor is the smallest vertex of the
    cycle, higher-indexed vertices only, pruned by reachability back to the
    anchor and by available-vertex count.
    """
    if length < 3:
        raise ValueError(f"cycle length {length} below 3")
    if length > g.n:
        return None
    bud = _Budget(budget)
    adj = g._adj

    for anchor in range(g.n - length + 1):
        abit = 1 << anchor
        allowed = ((1 << g.n) - 1) >> (anchor + 1) << (anchor + 1)
        if (adj[anchor] & allowed).bit_count() < 2:
            continue
        path = [anchor]
        found = _dfs_exact(g, anchor, anchor, abit, allowed & ~abit, length, path, bud)
        if found:
            return CycleCertificate(tuple(path))
    return None


def _dfs_exact(g, anchor, last, visited, allowed, length, path, bud) -> bool:
    bud.spend()
    need = length - len(path)
    if need == 0:
        return bool(g._adj[last] >> anchor & 1)
    avail = allowed & ~visited
    # Must be able to return to the anchor through unused vertices, and there
    # must be enough of them left.
    reach = _reachable(g, g._adj[last] & (avail | (1 << anchor)), avail | (1 << anchor))
    if not reach >> anchor & 1:
        return False
    if (reach & avail).bit_count() < need:
        return False
    for w in _bits(g._adj[last] & avail):
        path.append(w)
        if _dfs_exact(g, anchor, w, visited | (1 << w), allowed, length, path, bud):
            return True
        path.pop()
    return False


def longest_cycle(
    g: Graph, parity: Parity = "any", budget: int = DEFAULT_BUDGET
) -> Optional[tuple[int, CycleCertificate]]:
    """Maximum-length simple cycle of the requested parity, with certificate.

    Per component and per anchored minimum vertex, runs a set-reachability
    table ends[S] = endpoints of simple paths from the anchor spanning
    exactly S. Deterministic for a fixed graph.
    """
    bud = _Budget(budget)
    best_len = 0
    best_path: Optional[tuple[int, ...]] = None
    want_odd = parity in ("any", "odd")
    want_even = parity in ("any", "even")

    for comp in components(g):
        members = sorted(comp)
        if len(members) < 3 or len(members) <= best_len:
            continue  # no cycle in here can beat the current best
        for ai, anchor in enumerate(members):
            local = members[ai:]
            m = len(local)
            if m < 3 or m <= best_len:
                break  # suffixes only shrink
            idx = {v: i for i, v in enumerate(local)}
            ladj = [0] * m
            for i, v in enumerate(local):
                for w in _bits(g._adj[v]):
                    j = idx.get(w)
                    if j is not None:
                        ladj[i] |= 1 << j
            if ladj[0].bit_count() < 2:
                continue
            if m > 22:
                # the reachability table itself would dwarf the budget
                raise BudgetExceededError(
                    f"component slice of {m} vertices exceeds the exact-search "
                    "table cap",
                    nodes=bud.spent,
                )
            size = 1 << m
            ends = [0] * size
            ends[1] = 1
            found_here = None  # (cycle length, mask, endpoint)
            for mask in range(1, size, 2):  # anchor bit always set
                ep = ends[mask]
                if not ep:
                    continue
                cnt = mask.bit_count()
                closes = (cnt & 1 and want_odd) or (not cnt & 1 and want_even)
                for v in _bits(ep):
                    bud.spend()
                    nbr = ladj[v]
                    if (
                        closes
                        and v
                        and (nbr & 1)
                        and cnt >= 3
                        and (found_here is None or cnt > found_here[0])
                    ):
                        found_here = (cnt, mask, v)
                    ext = nbr & ~mask
                    for w in _bits(ext):
                        ends[mask | (1 << w)] |= 1 << w
            if found_here is not None and found_here[0] > best_len:
                cnt, mask, v = found_here
                best_len = cnt
                best_path = tuple(local[i] for i in _reconstruct(ends, ladj, mask, v))
    if best_path is None:
        return None
    return best_len, CycleCertificate(best_path)


def _reconstruct(ends, ladj, mask, v) -> list[int]:
    path = [v]
    cur = v
    while cur != 0:
        prev_mask = mask & ~(1 << cur)
        cands = ends[prev_mask] & ladj[cur]
        prev = (cands & -cands).bit_length() - 1
        path.append(prev)
        mask, cur = prev_mask, prev
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# Constructive dense-graph long cycles (Erdos-Gallai edge threshold).
# ---------------------------------------------------------------------------


def erdos_gallai_cycle(
    g: Graph, m: int, budget: int = DEFAULT_BUDGET
) -> CycleCertificate:
    """A cycle of length >= m in any graph with > (m-1)(n-1)/2 edges.

    Reduction loop: strip vertices of degree <= (m-1)/2, restrict to a
    component that keeps the density invariant, split at cut vertices toward
    the denser side. The surviving core is 2-connected with minimum degree
    >= ceil(m/2) and at least m vertices; a maximal-path closure loop (with a
    budgeted exact search as last resort) extracts the cycle there.
    """
    if not 3 <= m <= g.n:
        raise PreconditionViolated(f"need 3 <= m <= n, got m={m}, n={g.n}")
    if 2 * g.num_edges < (m - 1) * (g.n - 1) + 2:
        raise PreconditionViolated(
            f"edge count {g.num_edges} below threshold (m-1)(n-1)/2+1"
        )
    active = g.vertices_mask()
    low = (m - 1) // 2

    while True:
        # Strip low-degree vertices; each removal keeps 2e > (m-1)(n-1).
        changed = True
        while changed:
            changed = False
            for v in _bits(active):
                if (g._adj[v] & active).bit_count() <= low:
                    active &= ~(1 << v)
                    changed = True
        sub = g.subgraph_on(active)
        comp = _densest_invariant_component(sub, active, m)
        if comp != active:
            active = comp
            continue
        cut = _articulation_vertex(sub, active)
        if cut is None:
            break
        active = _denser_side(sub, active, cut, m)

    core = g.subgraph_on(active)
    cycle = _closure_cycle(core, active, m, budget)
    cert = CycleCertificate(tuple(cycle))
    if not (verify_cycle(g, cert) and cert.length >= m):
        raise AssertionError("internal: constructed cycle failed verification")
    return cert


def _density_holds(edges2: int, nverts: int, m: int) -> bool:
    return edges2 > (m - 1) * (nverts - 1)


def _densest_invariant_component(sub: Graph, active: int, m: int) -> int:
    comps = []
    unseen = active
    while unseen:
        start = unseen & -unseen
        comp = _reachable(sub, start, active)
        comps.append(comp)
        unseen &= ~comp
    if len(comps) == 1:
        return active
    for comp in comps:
        e2 = sum((sub._adj[v] & comp).bit_count() for v in _bits(comp))
        if _density_holds(e2, comp.bit_count(), m):
            return comp
    raise AssertionError("internal: no component keeps the density invariant")


def _articulation_vertex(sub: Graph, active: int) -> Optional[int]:
    """Any articulation vertex of the (connected) active subgraph, else None."""
    verts = list(_bits(active))
    if len(verts) <= 2:
        return None
    index = {}
    lowlink = {}
    counter = [0]
    root = verts[0]
    # Iterative DFS computing lowpoints.
    stack = [(root, -1, iter(_bits(sub._adj[root] & active)))]
    index[root] = lowlink[root] = 0
    counter[0] = 1
    root_children = 0
    art = None
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in index:
                index[w] = lowlink[w] = counter[0]
                counter[0] += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(_bits(sub._adj[w] & active))))
                advanced = True
                break
            lowlink[v] = min(lowlink[v], index[w])
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                lowlink[pv] = min(lowlink[pv], lowlink[v])
                if pv != root and lowlink[v] >= index[pv] and art is None:
                    art = pv
    if root_children >= 2:
        return root
    return art


def _denser_side(sub: Graph, active: int, cut: int, m: int) -> int:
    rest = active & ~(1 << cut)
    unseen = rest
    while unseen:
        start = unseen & -unseen
        comp = _reachable(sub, start, rest)
        unseen &= ~comp
        side = comp | (1 << cut)
        e2 = sum((sub._adj[v] & side).bit_count() for v in _bits(side))
        if _density_holds(e2, side.bit_count(), m):
            return side
    raise AssertionError("internal: no cut side keeps the density invariant")


def _examine_path(core: Graph, active: int, m: int, path: list[int]):
    """Classify a path: ('long', cycle >= m), ('grow', longer path), or stall.

    Checks endpoint extension, the crossing-pair closure (head ~ x_i with
    tail ~ x_{i-1} gives a cycle through every path vertex), and the two
    single-endpoint closures.
    """
    used = 0
    for v in path:
        used |= 1 << v
    head, tail = path[0], path[-1]
    if core._adj[head] & active & ~used or core._adj[tail] & active & ~used:
        return "grow", _maximal_path(core, active, list(path))
    k = len(path)
    pos = {v: i for i, v in enumerate(path)}
    head_hits = [pos[w] for w in _bits(core._adj[head]) if w in pos]
    tail_hits = {pos[w] for w in _bits(core._adj[tail]) if w in pos}
    cross = next((i for i in head_hits if i >= 1 and (i - 1) in tail_hits), None)
    if cross is not None:
        cycle = path[:cross] + path[k - 1 : cross - 1 : -1]
        if len(cycle) >= m:
            return "long", cycle
        grown = _extend_from_cycle(core, active, cycle)
        if grown is None:
            return "long", cycle  # spans the whole core, and core size >= m
        return "grow", grown
    far_head = max(head_hits, default=-1)
    if far_head + 1 >= m:
        return "long", path[: far_head + 1]
    near_tail = min(tail_hits, default=k)
    if k - near_tail >= m:
        return "long", path[near_tail:]
    return "stall", None


def _rotations(core: Graph, path: list[int]):
    """All single head/tail rotations of a path (same vertex set)."""
    pos = {v: i for i, v in enumerate(path)}
    k = len(path)
    for w in _bits(core._adj[path[0]]):
        i = pos.get(w)
        if i is not None and i >= 2:
            yield path[i - 1 :: -1] + path[i:]
    for w in _bits(core._adj[path[-1]]):
        j = pos.get(w)
        if j is not None and j <= k - 3:
            yield path[: j + 1] + path[k - 1 : j : -1]


def _closure_cycle(core: Graph, active: int, m: int, budget: int) -> list[int]:
    """Cycle of length >= m in a 2-connected min-degree >= ceil(m/2) core."""
    from collections import deque

    total = active.bit_count()
    start = (active & -active).bit_length() - 1
    path = _maximal_path(core, active, [start])
    grown = True
    while grown:
        grown = False
        # Breadth-first over rotation variants of the current (maximal) path;
        # a rotation can expose an extendable endpoint or a crossing.
        seen = set()
        cap = 8 * total + 16
        queue = deque([path])
        while queue and len(seen) < cap:
            p = queue.popleft()
            key = (p[0], p[-1])
            if key in seen:
                continue
            seen.add(key)
            kind, payload = _examine_path(core, active, m, p)
            if kind == "long":
                return payload
            if kind == "grow":
                path = payload
                grown = True
                break
            queue.extend(_rotations(core, p))
    # Rotation closure exhausted short of m (adversarial near-extremal cores).
    if total <= 22:
        found = longest_cycle(core, "any", budget=budget)
        if found is None or found[0] < m:
            raise AssertionError("internal: dense core lacks the guaranteed cycle")
        return list(found[1].vertices)
    # Larger cores: scan exact lengths downward from the degree bound.
    min_deg = min((core._adj[v] & active).bit_count() for v in _bits(active))
    high = min(total, 2 * min_deg)
    slice_budget = max(10**5, budget // max(1, high - m + 1))
    for ell in range(high, m - 1, -1):
        try:
            cert = has_cycle_of_length(core, ell, budget=slice_budget)
        except BudgetExceededError:
            continue
        if cert is not None:
            return list(cert.vertices)
    raise BudgetExceededError(
        "guaranteed cycle exists but was not extracted within budget"
    )


def _maximal_path(core: Graph, active: int, path: list[int]) -> list[int]:
    used = 0
    for v in path:
        used |= 1 << v
    while True:
        ext = core._adj[path[-1]] & active & ~used
        if not ext:
            break
        w = (ext & -ext).bit_length() - 1
        path.append(w)
        used |= 1 << w
    while True:
        ext = core._adj[path[0]] & active & ~used
        if not ext:
            break
        w = (ext & -ext).bit_length() - 1
        path.insert(0, w)
        used |= 1 << w
    return path


def _extend_from_cycle(core: Graph, active: int, cycle: list[int]):
    """Break a non-spanning cycle at an attachment point into a longer path."""
    on_cycle = 0
    for v in cycle:
        on_cycle |= 1 << v
    outside = active & ~on_cycle
    if not outside:
        return None
    for i, v in enumerate(cycle):
        att = core._adj[v] & outside
        if att:
            w = (att & -att).bit_length() - 1
            return _maximal_path(core, active, [w] + cycle[i:] + cycle[:i])
    raise AssertionError("internal: connected core has no cycle attachment")
