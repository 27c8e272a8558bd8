"""Reduced digraphs, block-multiplicity algebras, and endomorphism enumeration.

A reduced digraph is antisymmetric and transitive on its proper edges; loops
are implicit at every vertex and never stored. Vertex maps are plain tuples of
images. Everything is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Digraph:
    vertices: int
    edges: frozenset

    @property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))


def digraph(vertices: int, edges: Iterable[Sequence[int]]) -> Digraph:
    """Build a Digraph from any iterable of (i, j) pairs (no validation)."""
    return Digraph(int(vertices), frozenset((int(i), int(j)) for i, j in edges))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    malformed: tuple      # edges out of range or with i == j
    antisymmetry: tuple   # pairs (i, j) with both directions present
    transitivity: tuple   # triples (i, j, k) with (i,k) missing


def validate(g: Digraph) -> ValidationReport:
    """Check the reduced-digraph axioms. Never raises."""
    malformed = tuple(
        sorted(e for e in g.edges if e[0] == e[1] or not all(0 <= v < g.vertices for v in e))
    )
    anti = tuple(sorted((i, j) for (i, j) in g.edges if i < j and (j, i) in g.edges))
    trans = []
    for (i, j) in sorted(g.edges):
        for (j2, k) in sorted(g.edges):
            if j2 == j and k != i and (i, k) not in g.edges:
                trans.append((i, j, k))
    return ValidationReport(
        valid=not (malformed or anti or trans),
        malformed=malformed,
        antisymmetry=anti,
        transitivity=tuple(trans),
    )


def require_valid(g: Digraph) -> None:
    report = validate(g)
    if not report.valid:
        raise ValueError(
            "invalid digraph: "
            f"malformed={list(report.malformed)} "
            f"antisymmetry={list(report.antisymmetry)} "
            f"transitivity={list(report.transitivity)}"
        )


def chain(r: int) -> Digraph:
    """The linear order on r vertices: all edges (i, j) with i < j."""
    if r < 1:
        raise ValueError(f"chain needs at least 1 vertex, got {r}")
    return Digraph(r, frozenset((i, j) for i in range(r) for j in range(i + 1, r)))


def cycle(two_m: int) -> Digraph:
    """The alternating 2m-cycle: sources 0..m-1, sinks m..2m-1.

    Source s points at sinks m+s and m+((s+1) mod m); for two_m = 4 the edges
    are (0,2),(0,3),(1,3),(1,2).
    """
    if two_m < 4 or two_m % 2:
        raise ValueError(f"cycle needs an even vertex count >= 4, got {two_m}")
    m = two_m // 2
    edges = set()
    for s in range(m):
        edges.add((s, m + s))
        edges.add((s, m + ((s + 1) % m)))
    return Digraph(two_m, frozenset(edges))


def standard_digraph(kind: str, size: int) -> Digraph:
    if kind == "chain":
        return chain(size)
    if kind == "cycle":
        return cycle(size)
    raise ValueError(f"unknown digraph kind {kind!r} (expected 'chain' or 'cycle')")


def reduced_digraph(vertex_count: int, pairs: Iterable[Sequence[int]]):
    """Collapse mutually connected vertices of a transitive relation.

    Args:
        vertex_count: number of vertices of the input relation.
        pairs: the relation as (i, j) pairs; loops allowed, reflexivity implied.

    Returns:
        (Digraph, partition) where partition[v] is the reduced vertex of v.
        Reduced vertices are numbered by their smallest original member.
    """
    rel = set()
    for i, j in pairs:
        i, j = int(i), int(j)
        if not (0 <= i < vertex_count and 0 <= j < vertex_count):
            raise ValueError(f"pair ({i},{j}) out of range for {vertex_count} vertices")
        rel.add((i, j))
    for v in range(vertex_count):
        rel.add((v, v))
    by_source = {}
    for i, j in rel:
        by_source.setdefault(i, set()).add(j)
    for i, j in sorted(rel):
        for k in by_source.get(j, ()):
            if (i, k) not in rel:
                raise ValueError(
                    f"relation is not transitive: ({i},{j}) and ({j},{k}) present, ({i},{k}) missing"
                )
    classes = []
    assigned = {}
    for v in range(vertex_count):
        if v in assigned:
            continue
        cls = sorted(
            w for w in range(vertex_count) if (v, w) in rel and (w, v) in rel
        )
        idx = len(classes)
        classes.append(cls)
        for w in cls:
            assigned[w] = idx
    partition = tuple(assigned[v] for v in range(vertex_count))
    edges = frozenset(
        (assigned[i], assigned[j]) for (i, j) in rel if assigned[i] != assigned[j]
    )
    return Digraph(len(classes), edges), partition


@dataclass(frozen=True)
class HAlgebra:
    """A digraph algebra up to isomorphism: reduced digraph plus block sizes."""

    digraph: Digraph
    multiplicities: tuple

    def __post_init__(self):
        if len(self.multiplicities) != self.digraph.vertices:
            raise ValueError(
                f"{len(self.multiplicities)} multiplicities for {self.digraph.vertices} vertices"
            )
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be >= 1")


def halgebra(g: Digraph, multiplicities: Sequence[int]) -> HAlgebra:
    return HAlgebra(g, tuple(int(m) for m in multiplicities))


def is_reflexive_hom(g: Digraph, images: Sequence[int]) -> bool:
    """True when images defines a reflexive digraph endomorphism of g."""
    if len(images) != g.vertices:
        return False
    if not all(0 <= v < g.vertices for v in images):
        return False
    for (i, j) in g.edges:
        a, b = images[i], images[j]
        if a != b and (a, b) not in g.edges:
            return False
    return True


def is_automorphism(g: Digraph, images: Sequence[int]) -> bool:
    return is_reflexive_hom(g, images) and sorted(images) == list(range(g.vertices))


def is_degenerate(g: Digraph, images: Sequence[int]) -> bool:
    """True when the map collapses every proper edge to a loop."""
    return all(images[i] == images[j] for (i, j) in g.edges)


_FILTERS = ("all", "automorphisms", "non_degenerate")


def enumerate_endomorphisms(g: Digraph, which: str = "all") -> list:
    """All reflexive endomorphisms of g in lexicographic order of image tuples.

    Args:
        g: a valid reduced digraph.
        which: "all", "automorphisms" (bijective, edge-preserving), or
            "non_degenerate" (drops maps collapsing every proper edge).
    """
    require_valid(g)
    if which not in _FILTERS:
        raise ValueError(f"unknown filter {which!r} (expected one of {_FILTERS})")
    n = g.vertices
    # per-vertex constraints against already-assigned smaller vertices
    back = [[] for _ in range(n)]
    for (i, j) in g.edges:
        if i < j:
            back[j].append((i, True))   # edge (i, j), i assigned first
        else:
            back[i].append((j, False))  # edge (i, j) stored as (later, earlier)
    out = []
    images = [0] * n

    def ok(v: int, cand: int) -> bool:
        for u, forward in back[v]:
            a, b = (images[u], cand) if forward else (cand, images[u])
            if a != b and (a, b) not in g.edges:
                return False
        return True

    def walk(v: int):
        if v == n:
            out.append(tuple(images))
            return
        for cand in range(n):
            if ok(v, cand):
                images[v] = cand
                walk(v + 1)
        images[v] = 0

    walk(0)
    if which == "automorphisms":
        return [b for b in out if sorted(b) == list(range(n))]
    if which == "non_degenerate":
        return [b for b in out if not is_degenerate(g, b)]
    return out


def undirected_components(g: Digraph) -> list:
    """Connected components of the underlying undirected graph, sorted."""
    adj = {v: set() for v in range(g.vertices)}
    for (i, j) in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = set()
    comps = []
    for v in range(g.vertices):
        if v in seen:
            continue
        stack = [v]
        comp = []
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            comp.append(u)
            stack.extend(adj[u] - seen)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Digraph) -> bool:
    return g.vertices <= 1 or len(undirected_components(g)) == 1


def digraph_to_json(g: Digraph) -> dict:
    return {"vertices": g.vertices, "edges": [list(e) for e in g.sorted_edges]}


def digraph_from_json(obj: dict) -> Digraph:
    try:
        return digraph(obj["vertices"], obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed digraph object: {exc}") from exc


def halgebra_to_json(a: HAlgebra) -> dict:
    d = digraph_to_json(a.digraph)
    d["multiplicities"] = list(a.multiplicities)
    return d


def halgebra_from_json(obj: dict) -> HAlgebra:
    g = digraph_from_json(obj)
    try:
        return halgebra(g, obj["multiplicities"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed algebra object: {exc}") from exc
