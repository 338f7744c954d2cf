"""Census of equivalence classes at small n: enumeration, graph, pair counts.

A class is determined by its quantifier string plus the set of variables in
each run (order inside a run is immaterial), so classes are enumerated
directly as run-length compositions with variables distributed between runs;
no raw sweep is needed for the vertex set.  Edges do need the raw sweep:
different members of one class reach different classes, so flips and
exists-forall swaps are applied to every raw prefix and mapped back to class
indices.

Counts grow like ordered set partitions (two per composition pattern), so
everything here is capped to desk-scale n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from .decide import raw_implies
from .errors import InstanceTooLargeError
from .prefix import CanonicalClass, Prefix, Quantifier, default_names

__all__ = [
    "CLASS_CAP",
    "PAIR_CAP",
    "ImplicationGraph",
    "CensusReport",
    "enumerate_classes",
    "build_graph",
    "count_pairs",
    "count_pairs_via_graph",
    "topological_order",
    "reachability_bitsets",
    "export_graph",
]

CLASS_CAP = 7
PAIR_CAP = 5


@dataclass(frozen=True)
class ImplicationGraph:
    """Directed graph of equivalence classes under single-move implication.

    ``vertices`` are sorted by canonical text; ``edges`` hold vertex-index
    pairs produced by flips and exists-forall swaps (same-run swaps stay
    inside a class); ``multiplicity[i]`` counts raw prefixes in class i.
    """

    n: int
    vertices: tuple[CanonicalClass, ...]
    edges: frozenset[tuple[int, int]]
    multiplicity: tuple[int, ...]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class CensusReport:
    """Implication tally over all ordered raw-prefix pairs at a given n."""

    n: int
    class_count: int
    edge_count: int
    true_pairs: int
    total_pairs: int
    probability: Fraction


def _check_cap(n: int, cap: int) -> None:
    if not 1 <= n <= cap:
        raise InstanceTooLargeError(f"n={n} outside the supported range 1..{cap}")


def _compositions(n: int):
    """Ordered positive-part compositions of n (2^(n-1) of them)."""
    for mask in range(1 << (n - 1)):
        parts = []
        length = 1
        for i in range(n - 1):
            if (mask >> i) & 1:
                parts.append(length)
                length = 1
            else:
                length += 1
        parts.append(length)
        yield tuple(parts)


def _distributions(pool: tuple[int, ...], parts: tuple[int, ...]):
    """All ways to deal ``pool`` into runs of the given sizes, each ascending."""
    if not parts:
        yield ()
        return
    for head in combinations(pool, parts[0]):
        chosen = set(head)
        rest = tuple(v for v in pool if v not in chosen)
        for tail in _distributions(rest, parts[1:]):
            yield head + tail


def enumerate_classes(
    n: int, cap: int = CLASS_CAP
) -> list[tuple[CanonicalClass, int]]:
    """All equivalence classes at n, sorted by canonical text.

    Each entry carries the class multiplicity (product of run-length
    factorials), so the multiplicities sum to n! * 2^n.
    """
    _check_cap(n, cap)
    names = default_names(n)
    pool = tuple(range(n))
    out = []
    for parts in _compositions(n):
        mult = 1
        for length in parts:
            mult *= factorial(length)
        for first in (Quantifier.FORALL, Quantifier.EXISTS):
            b = []
            quant = first
            for length in parts:
                b.extend([quant] * length)
                quant = Quantifier(1 - quant)
            b_tuple = tuple(b)
            for sigma in _distributions(pool, parts):
                out.append((CanonicalClass(Prefix(sigma, b_tuple, names)), mult))
    out.sort(key=lambda item: item[0].text)
    return out


def build_graph(n: int, cap: int = CLASS_CAP) -> ImplicationGraph:
    """Materialize the class graph by sweeping moves over every raw prefix."""
    classes = enumerate_classes(n, cap)
    vertices = tuple(cls for cls, _ in classes)
    multiplicity = tuple(mult for _, mult in classes)

    run_cache: dict[tuple[int, ...], tuple[tuple[int, int], ...]] = {}

    def run_slices(bits: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
        cached = run_cache.get(bits)
        if cached is not None:
            return cached
        slices = []
        start = 0
        for i in range(1, n):
            if bits[i] != bits[start]:
                slices.append((start, i))
                start = i
        slices.append((start, n))
        run_cache[bits] = out = tuple(slices)
        return out

    def canon_key(sigma: tuple[int, ...], bits: tuple[int, ...]):
        parts: list[int] = []
        for lo, hi in run_slices(bits):
            parts.extend(sorted(sigma[lo:hi]))
        return tuple(parts), bits

    index = {
        canon_key(cls.rep.sigma, tuple(int(q) for q in cls.rep.b)): i
        for i, (cls, _) in enumerate(classes)
    }

    edges = set()
    for bits in product((0, 1), repeat=n):
        flip_targets = [bits[:i] + (0,) + bits[i + 1 :] for i in range(n) if bits[i]]
        swap_targets = [
            (i, bits[:i] + (1, 0) + bits[i + 2 :])
            for i in range(n - 1)
            if bits[i] == 0 and bits[i + 1] == 1
        ]
        for sigma in permutations(range(n)):
            src = index[canon_key(sigma, bits)]
            for target_bits in flip_targets:
                edges.add((src, index[canon_key(sigma, target_bits)]))
            for i, target_bits in swap_targets:
                swapped = sigma[:i] + (sigma[i + 1], sigma[i]) + sigma[i + 2 :]
                edges.add((src, index[canon_key(swapped, target_bits)]))
    return ImplicationGraph(n, vertices, frozenset(edges), multiplicity)


def topological_order(g: ImplicationGraph) -> list[int]:
    """Kahn topological order; raises if the graph has a cycle."""
    count = len(g.vertices)
    indegree = [0] * count
    adjacency: list[list[int]] = [[] for _ in range(count)]
    for u, v in g.edges:
        adjacency[u].append(v)
        indegree[v] += 1
    ready = [u for u in range(count) if indegree[u] == 0]
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for v in adjacency[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                ready.append(v)
    if len(order) != count:
        raise ValueError("implication graph contains a cycle")
    return order


def reachability_bitsets(g: ImplicationGraph) -> list[int]:
    """Per-vertex reachable sets (self included) as int bitsets."""
    count = len(g.vertices)
    adjacency: list[list[int]] = [[] for _ in range(count)]
    for u, v in g.edges:
        adjacency[u].append(v)
    reach = [0] * count
    for u in reversed(topological_order(g)):
        bits = 1 << u
        for v in adjacency[u]:
            bits |= reach[v]
        reach[u] = bits
    return reach


def _report(n: int, g: ImplicationGraph, true_pairs: int) -> CensusReport:
    total = (factorial(n) * 2**n) ** 2
    return CensusReport(
        n=n,
        class_count=len(g.vertices),
        edge_count=len(g.edges),
        true_pairs=true_pairs,
        total_pairs=total,
        probability=Fraction(true_pairs, total),
    )


def count_pairs(n: int, cap: int = PAIR_CAP) -> CensusReport:
    """Count ordered raw-prefix pairs (s1, s2) with s1 implying s2, exactly.

    Implication is class-invariant, so the linear decider runs once per
    ordered class pair and raw pairs are recovered by multiplicity weights.
    """
    _check_cap(n, cap)
    g = build_graph(n)
    reps = [(cls.rep.sigma, bytes(cls.rep.b)) for cls in g.vertices]
    mult = g.multiplicity
    true_pairs = 0
    for (sigma1, b1), m1 in zip(reps, mult):
        for (sigma2, b2), m2 in zip(reps, mult):
            if raw_implies(sigma1, b1, sigma2, b2):
                true_pairs += m1 * m2
    return _report(n, g, true_pairs)


def count_pairs_via_graph(n: int, cap: int = PAIR_CAP) -> CensusReport:
    """Independent pair count: graph reachability with multiplicity weights."""
    _check_cap(n, cap)
    g = build_graph(n)
    mult = g.multiplicity
    true_pairs = 0
    for u, bits in enumerate(reachability_bitsets(g)):
        weight = 0
        while bits:
            low = bits & -bits
            weight += mult[low.bit_length() - 1]
            bits ^= low
        true_pairs += mult[u] * weight
    return _report(n, g, true_pairs)


def export_graph(g: ImplicationGraph, fmt: str = "json") -> bytes:
    """Serialize the graph to byte-stable JSON or DOT."""
    if fmt == "json":
        doc = {
            "n": g.n,
            "vertices": [
                {"id": i, "prefix": cls.text, "multiplicity": g.multiplicity[i]}
                for i, cls in enumerate(g.vertices)
            ],
            "edges": [list(edge) for edge in g.sorted_edges()],
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    if fmt == "dot":
        lines = ["digraph implication_classes {"]
        for i, cls in enumerate(g.vertices):
            label = cls.text.replace('"', '\\"')
            lines.append(f'  {i} [label="{label}"];')
        for u, v in g.sorted_edges():
            lines.append(f"  {u} -> {v};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r} (expected 'json' or 'dot')")
