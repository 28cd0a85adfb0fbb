"""Property harness for the asymptotic matching lemmas at desk scale.

Each harness run generates random instances meeting a lemma's hypotheses
(random hole placement, random deletions within budget, uniform and
adversarial-local-search colorings), evaluates the lemma's conclusion
exactly, and reports failures with witnesses. The statements are
asymptotic ("for every n > n0"), so desk-scale failures are possible in
principle; every failure is recorded together with a structural
hypothesis re-check of the offending instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import __version__
from .bounds import HoleParams, lemma_dwa_host_size, lemma_trzy_host_size, sqrt_enclosure
from .errors import HypothesisViolation
from .graphs import (
    EdgeColoring,
    Graph,
    HoleSpec,
    apply_holes_and_deletions,
    bipartition,
    coloring_to_dict,
    complete_graph,
    components,
    graph_to_dict,
)
from .matchings import maximum_matching

LEMMA_IDS = ("l2", "double", "dwa", "trzy", "f1")


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _outward(base: Fraction, coeff: int, eps: Fraction, n: int) -> Fraction:
    _, hi = sqrt_enclosure(eps)
    return (base + coeff * hi) * n


def _has_component_saturating(
    g: Graph, threshold: Fraction, nonbipartite: bool = False
) -> bool:
    for comp in sorted(components(g), key=len, reverse=True):
        if Fraction(len(comp)) < threshold:
            return False  # descending sizes: nothing later can reach it
        if nonbipartite and bipartition(g.subgraph_on(comp)) is not None:
            continue
        if Fraction(maximum_matching(g, within=comp).saturation) >= threshold:
            return True
    return False


def _best_saturation(g: Graph, nonbipartite: bool = False) -> int:
    best = 0
    for comp in sorted(components(g), key=len, reverse=True):
        if len(comp) <= best:
            break
        if nonbipartite and bipartition(g.subgraph_on(comp)) is not None:
            continue
        best = max(best, maximum_matching(g, within=comp).saturation)
    return best


@dataclass
class FailureRecord:
    sample: int
    mode: str
    description: str
    witness: dict
    hypothesis_recheck: dict

    def to_dict(self) -> dict:
        return {
            "sample": self.sample,
            "mode": self.mode,
            "description": self.description,
            "witness": self.witness,
            "hypothesis_recheck": self.hypothesis_recheck,
        }


@dataclass
class HarnessReport:
    lemma: str
    params: dict
    samples: int
    passes: int
    failures: list[FailureRecord]
    hypothesis_warnings: list[str]
    header: dict

    def clean_failures(self) -> list[FailureRecord]:
        """Failures whose instances pass the structural hypothesis re-check."""
        return [f for f in self.failures if f.hypothesis_recheck.get("ok")]

    def to_dict(self, include_timings: bool = False) -> dict:
        del include_timings  # no timing fields in harness reports
        return {
            "lemma": self.lemma,
            "params": {k: str(v) for k, v in self.params.items()},
            "samples": self.samples,
            "passes": self.passes,
            "failures": [f.to_dict() for f in self.failures],
            "hypothesis_warnings": list(self.hypothesis_warnings),
            "header": self.header,
        }


def _sample_deletions(rng: random.Random, host: Graph, budget: int) -> list:
    if budget <= 0:
        return []
    count = rng.randint(0, budget)
    if count == 0:
        return []
    return rng.sample(host.edges(), min(count, host.num_edges))


def _two_coloring_arrays(rng: random.Random, host: Graph) -> dict:
    return {e: rng.randint(1, 2) for e in host.edges()}


def _adversarial_two_coloring(
    rng: random.Random,
    host: Graph,
    colors: dict,
    margin: Callable[[dict], Fraction],
    steps: int,
    mutable: Optional[list] = None,
) -> dict:
    """Greedy local search lowering the conclusion margin (tries to falsify)."""
    edges = mutable if mutable is not None else host.edges()
    cur = margin(colors)
    for _ in range(steps):
        if not edges:
            break
        e = edges[rng.randrange(len(edges))]
        old = colors[e]
        colors[e] = 3 - old if old in (1, 2) else old
        new = margin(colors)
        if new <= cur:
            cur = new
        else:
            colors[e] = old
    return colors


# ---------------------------------------------------------------------------
# Per-lemma drivers.
# ---------------------------------------------------------------------------


def _check_l2_params(p: dict, strict: bool, warnings: list[str]) -> None:
    n1, n2, eps = p["n1"], p["n2"], Fraction(p["eps"])
    if n1 < n2 or n2 < 1:
        raise HypothesisViolation("need |V1| >= |V2| >= 1")
    if not 0 < eps < Fraction(1, 100):
        raise HypothesisViolation("need 0 < eps < 0.01")


def _run_l2(p: dict, rng: random.Random, adversarial: bool) -> tuple[bool, dict]:
    del adversarial  # no coloring here: random deletions are the only freedom
    n1, n2, eps = p["n1"], p["n2"], Fraction(p["eps"])
    n = n1 + n2
    host = Graph(
        n, [(u, n1 + v) for u in range(n1) for v in range(n2)]
    )
    budget = int(eps * n1 * n2)
    deletions = _sample_deletions(rng, host, budget)
    g = apply_holes_and_deletions(host, HoleSpec(), deletions)
    size_thresh = (1 - 3 * eps) * (n1 + n2)
    card_thresh = (1 - 3 * eps) * n2
    ok = False
    for comp in sorted(components(g), key=len, reverse=True):
        if Fraction(len(comp)) < size_thresh:
            break
        if Fraction(len(maximum_matching(g, within=comp).edges)) >= card_thresh:
            ok = True
            break
    witness = {"graph": graph_to_dict(g), "deletions": sorted(deletions)}
    recheck = {
        "ok": g.num_edges >= (1 - eps) * n1 * n2,
        "violations": []
        if g.num_edges >= (1 - eps) * n1 * n2
        else ["edge count below (1-eps)|V1||V2|"],
    }
    return ok, {"witness": witness, "recheck": recheck}


def _check_double_params(p: dict, strict: bool, warnings: list[str]) -> None:
    nu1, nu2, eps = Fraction(p["nu1"]), Fraction(p["nu2"]), Fraction(p["eps"])
    if not 0 <= nu1 <= nu2 <= 1:
        raise HypothesisViolation("need 0 <= nu1 <= nu2 <= 1")
    guard = []
    if not 0 < eps < Fraction(1, 100) * nu1:
        guard.append("eps outside (0, 0.01*nu1)")
    if p["N"] < 4 / eps:
        guard.append("N below 4/eps")
    if guard and strict:
        raise HypothesisViolation("; ".join(guard))
    warnings.extend(f"asymptotic guard relaxed: {gd}" for gd in guard)


def _run_double(p: dict, rng: random.Random, adversarial: bool) -> tuple[bool, dict]:
    del adversarial  # hole placement and deletions are the only freedom
    N = p["N"]
    nu1, nu2, eps = Fraction(p["nu1"]), Fraction(p["nu2"]), Fraction(p["eps"])
    u1 = frozenset(rng.sample(range(N), int(nu1 * N)))
    u2 = frozenset(rng.sample(range(N), int(nu2 * N)))
    holes = HoleSpec((u1, u2))
    host = apply_holes_and_deletions(complete_graph(N), holes)
    budget = int(eps**3 * Fraction(N * (N - 1), 2))
    deletions = _sample_deletions(rng, host, budget)
    g = apply_holes_and_deletions(host, HoleSpec(), deletions)
    if 2 * len(u2) <= N:
        thresh = (1 - 5 * eps) * N
        branch = "small-hole"
    else:
        thresh = (2 - 7 * eps) * N - 2 * len(u2)
        branch = "large-hole"
    ok = _has_component_saturating(g, thresh)
    witness = {
        "graph": graph_to_dict(g),
        "U1": sorted(u1),
        "U2": sorted(u2),
        "branch": branch,
        "threshold": str(thresh),
    }
    recheck = {"ok": len(deletions) <= budget, "violations": []}
    return ok, {"witness": witness, "recheck": recheck}


def _check_hole_params(p: dict, strict: bool, warnings: list[str]) -> HoleParams:
    return HoleParams(p["alpha"], p["beta"], p["nu"], p["eps"])


def _host_with_hole(
    rng: random.Random, N: int, hole_size: int, deletion_budget: int
) -> tuple[Graph, frozenset, list]:
    w = frozenset(rng.sample(range(N), hole_size))
    holes = HoleSpec((w,))
    host = apply_holes_and_deletions(complete_graph(N), holes)
    deletions = _sample_deletions(rng, host, deletion_budget)
    g = apply_holes_and_deletions(host, HoleSpec(), deletions)
    return g, w, deletions


def _two_color_conclusion(
    g: Graph, thresh1: Fraction, thresh2: Fraction, nonbip2: bool
) -> Callable[[dict], tuple[bool, Fraction]]:
    def evaluate(colors: dict) -> tuple[bool, Fraction]:
        g1 = Graph(g.n, (e for e, c in colors.items() if c == 1))
        g2 = Graph(g.n, (e for e, c in colors.items() if c == 2))
        s1 = _best_saturation(g1)
        s2 = _best_saturation(g2, nonbipartite=nonbip2)
        ok = Fraction(s1) >= thresh1 or Fraction(s2) >= thresh2
        margin = max(Fraction(s1) - thresh1, Fraction(s2) - thresh2)
        return ok, margin

    return evaluate


def _run_hole_lemma(
    p: dict, rng: random.Random, adversarial: bool, nonbip2: bool, steps: int
) -> tuple[bool, dict]:
    hp = HoleParams(p["alpha"], p["beta"], p["nu"], p["eps"])
    n = p["n"]
    N = lemma_trzy_host_size(hp, n) if nonbip2 else lemma_dwa_host_size(hp, n)
    hole_size = int(hp.nu * n)
    budget = int(hp.epsilon**3 * n * n)
    g, w, deletions = _host_with_hole(rng, N, hole_size, budget)
    thresh1 = (hp.alpha + hp.epsilon) * n
    thresh2 = (hp.beta + hp.epsilon) * n
    evaluate = _two_color_conclusion(g, thresh1, thresh2, nonbip2)
    colors = _two_coloring_arrays(rng, g)
    if adversarial:
        colors = _adversarial_two_coloring(
            rng, g, colors, lambda cs: evaluate(cs)[1], steps
        )
    ok, _ = evaluate(colors)
    coloring = EdgeColoring(
        g.n, 2, colors, HoleSpec((w,)), frozenset(deletions)
    )
    witness = {
        "coloring": coloring_to_dict(coloring),
        "hole": sorted(w),
        "thresholds": [str(thresh1), str(thresh2)],
    }
    recheck = {
        "ok": len(w) == hole_size and len(deletions) <= budget,
        "violations": [],
    }
    return ok, {"witness": witness, "recheck": recheck}


def _check_f1_params(p: dict, strict: bool, warnings: list[str]) -> None:
    a1, a2, eps = Fraction(p["alpha1"]), Fraction(p["alpha2"]), Fraction(p["eps"])
    if not a1 >= a2 > 0:
        raise HypothesisViolation("need alpha1 >= alpha2 > 0")
    if not 0 < eps < Fraction(1, 100) * a2:
        raise HypothesisViolation("need 0 < eps < 0.01*alpha2")


def _run_f1(
    p: dict, rng: random.Random, adversarial: bool, steps: int
) -> tuple[bool, dict]:
    a1, a2, eps = Fraction(p["alpha1"]), Fraction(p["alpha2"]), Fraction(p["eps"])
    n = p["n"]
    nverts = _ceil(_outward(2 * a1 + a2, 9, eps, n))
    t3 = _ceil(_outward(Fraction(3, 2) * a1 + Fraction(1, 2) * a2, 8, eps, n))
    b = rng.randint(min(t3, nverts), nverts)
    y = rng.randint(1, b // 2)
    x = b - y
    perm = rng.sample(range(nverts), nverts)
    xs, ys = set(perm[:x]), set(perm[x : x + y])
    host = complete_graph(nverts)
    budget = int(eps**4 * n * n)
    deletions = _sample_deletions(rng, host, budget)
    g = apply_holes_and_deletions(host, HoleSpec(), deletions)
    colors = {}
    third_mutable = []
    for u, v in g.edges():
        if (u in xs and v in ys) or (u in ys and v in xs):
            colors[(u, v)] = 3
        elif u not in xs | ys and v not in xs | ys:
            colors[(u, v)] = rng.randint(1, 3)
        else:
            colors[(u, v)] = rng.randint(1, 2)
            third_mutable.append((u, v))
    thresh1 = (a1 + eps) * n
    thresh2 = (a2 + eps) * n

    def evaluate(cs: dict) -> tuple[bool, Fraction]:
        g1 = Graph(g.n, (e for e, c in cs.items() if c == 1))
        g2 = Graph(g.n, (e for e, c in cs.items() if c == 2))
        s1, s2 = _best_saturation(g1), _best_saturation(g2)
        ok = Fraction(s1) >= thresh1 or Fraction(s2) >= thresh2
        return ok, max(Fraction(s1) - thresh1, Fraction(s2) - thresh2)

    if adversarial:
        colors = _adversarial_two_coloring(
            rng, g, colors, lambda cs: evaluate(cs)[1], steps, mutable=third_mutable
        )
    ok, _ = evaluate(colors)
    g3 = Graph(g.n, (e for e, c in colors.items() if c == 3))
    gprime = sum(
        len(c) for c in components(g3) if bipartition(g3.subgraph_on(c)) is not None
    )
    coloring = EdgeColoring(g.n, 3, colors, HoleSpec(), frozenset(deletions))
    witness = {"coloring": coloring_to_dict(coloring), "bipartite_third_union": gprime}
    recheck = {
        "ok": gprime >= t3 and len(deletions) <= budget,
        "violations": [] if gprime >= t3 else ["bipartite third-color union too small"],
    }
    return ok, {"witness": witness, "recheck": recheck}


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------


def lemma_harness(
    lemma: str,
    params: dict,
    samples: int,
    seed: int,
    strict: bool = False,
    adversarial_fraction: float = 0.15,
    adversary_steps: int = 20,
) -> HarnessReport:
    """Sample instances meeting the lemma's hypotheses and test its conclusion."""
    if lemma not in LEMMA_IDS:
        raise ValueError(f"unknown lemma id {lemma!r}; choose from {LEMMA_IDS}")
    if samples < 1:
        raise ValueError("need at least one sample")
    warnings: list[str] = []
    if lemma == "l2":
        _check_l2_params(params, strict, warnings)
    elif lemma == "double":
        _check_double_params(params, strict, warnings)
    elif lemma in ("dwa", "trzy"):
        _check_hole_params(params, strict, warnings)
    else:
        _check_f1_params(params, strict, warnings)

    n_adv = round(samples * adversarial_fraction)
    failures: list[FailureRecord] = []
    passes = 0
    for i in range(samples):
        rng = random.Random(seed * 1_000_003 + i)
        adversarial = i < n_adv
        mode = "adversarial" if adversarial else "uniform"
        if lemma == "l2":
            ok, info = _run_l2(params, rng, adversarial)
        elif lemma == "double":
            ok, info = _run_double(params, rng, adversarial)
        elif lemma == "dwa":
            ok, info = _run_hole_lemma(params, rng, adversarial, False, adversary_steps)
        elif lemma == "trzy":
            ok, info = _run_hole_lemma(params, rng, adversarial, True, adversary_steps)
        else:
            ok, info = _run_f1(params, rng, adversarial, adversary_steps)
        if ok:
            passes += 1
        else:
            failures.append(
                FailureRecord(
                    sample=i,
                    mode=mode,
                    description="conclusion failed on this instance",
                    witness=info["witness"],
                    hypothesis_recheck=info["recheck"],
                )
            )
    header = {
        "lemma": lemma,
        "seed": seed,
        "version": __version__,
        "adversarial_samples": n_adv,
        "finite_instantiation": (
            "asymptotic statement instantiated at a fixed finite size; "
            "conclusions evaluated exactly per sample, failures below the "
            "statement's n0 threshold are possible and carry witnesses"
        ),
    }
    return HarnessReport(
        lemma=lemma,
        params=params,
        samples=samples,
        passes=passes,
        failures=failures,
        hypothesis_warnings=warnings,
        header=header,
    )
