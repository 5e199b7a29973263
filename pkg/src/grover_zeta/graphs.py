"""Mixed digraph data model: parsing, serialization, generators, girth.

A mixed graph is a finite simple graph in which every edge is either
undirected or directed.  A directed edge carries a real phase in
(-pi, pi]; its forward arc carries +phase, its reverse arc -phase, and
both arcs of an undirected edge carry phase zero.  Edge j induces arcs
2j and 2j + 1, so the inverse of arc e is always e ^ 1.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

UNDIRECTED = "undirected"
DIRECTED = "directed"

_TWO_PI = 2.0 * math.pi


class GraphFormatError(ValueError):
    """Malformed graph text or structurally invalid graph data."""


class GenerationError(RuntimeError):
    """A random generator exhausted its rejection budget."""


def _normalize_phase(phase: float) -> float:
    """Map a real phase into the canonical interval (-pi, pi]."""
    r = math.remainder(phase, _TWO_PI)
    if r <= -math.pi:
        r += _TWO_PI
    return r


@dataclass(frozen=True)
class Edge:
    """One edge of a mixed graph; for directed edges ``u`` is the origin."""

    u: int
    v: int
    kind: str = UNDIRECTED
    phase: float = 0.0


@dataclass(frozen=True)
class Arc:
    id: int
    origin: int
    terminus: int
    theta: float


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    regular_degree: int | None
    min_degree: int
    connected: bool
    girth: int | None


class MixedGraph:
    """Validated mixed graph together with its derived arc structure.

    Attributes:
        n: vertex count; vertices are the integers 0 .. n - 1.
        edges: tuple of Edge records (undirected ones normalized to u < v).
        arcs: tuple of 2m Arc records; arc 2j runs u -> v for edge j and
            arc 2j + 1 is its inverse.
        degrees: vertex degrees of the underlying undirected graph.
        connected: whether the underlying graph is connected.  Disconnected
            graphs are accepted; operations that require connectivity check
            this flag themselves.
    """

    def __init__(self, n: int, edges):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise GraphFormatError(f"vertex count must be a positive integer, got {n!r}")
        self.n = int(n)

        seen_pairs = set()
        normalized = []
        for idx, e in enumerate(edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphFormatError(f"edge {idx}: vertex id out of range: ({e.u}, {e.v})")
            if e.u == e.v:
                raise GraphFormatError(f"edge {idx}: loop at vertex {e.u}")
            if e.kind not in (UNDIRECTED, DIRECTED):
                raise GraphFormatError(f"edge {idx}: unknown kind {e.kind!r}")
            if not (isinstance(e.phase, (int, float)) and math.isfinite(e.phase)):
                raise GraphFormatError(f"edge {idx}: phase must be a finite real, got {e.phase!r}")
            if e.kind == UNDIRECTED and e.phase != 0.0:
                raise GraphFormatError(f"edge {idx}: undirected edge may not carry a phase")
            pair = (min(e.u, e.v), max(e.u, e.v))
            if pair in seen_pairs:
                raise GraphFormatError(f"edge {idx}: duplicate edge between {pair[0]} and {pair[1]}")
            seen_pairs.add(pair)
            if e.kind == UNDIRECTED:
                normalized.append(Edge(pair[0], pair[1], UNDIRECTED, 0.0))
            else:
                normalized.append(Edge(e.u, e.v, DIRECTED, _normalize_phase(float(e.phase))))
        self.edges = tuple(normalized)

        arcs = []
        for j, e in enumerate(self.edges):
            arcs.append(Arc(2 * j, e.u, e.v, e.phase))
            arcs.append(Arc(2 * j + 1, e.v, e.u, -e.phase))
        self.arcs = tuple(arcs)

        degrees = np.zeros(self.n, dtype=int)
        for e in self.edges:
            degrees[e.u] += 1
            degrees[e.v] += 1
        self.degrees = degrees

        # Underlying adjacency as (neighbor, edge index), plus arc indexes.
        self.neighbors: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.edges):
            self.neighbors[e.u].append((e.v, j))
            self.neighbors[e.v].append((e.u, j))
        self.arcs_out: list[list[int]] = [[] for _ in range(self.n)]
        self.arcs_in: list[list[int]] = [[] for _ in range(self.n)]
        for a in self.arcs:
            self.arcs_out[a.origin].append(a.id)
            self.arcs_in[a.terminus].append(a.id)

        self.connected = self._check_connected()

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_undirected(self) -> bool:
        return all(e.kind == UNDIRECTED for e in self.edges)

    def inverse(self, arc_id: int) -> int:
        return arc_id ^ 1

    def theta(self, arc_id: int) -> float:
        return self.arcs[arc_id].theta

    def _check_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for w, _ in self.neighbors[x]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def __repr__(self) -> str:
        return f"MixedGraph(n={self.n}, m={self.m}, directed={sum(e.kind == DIRECTED for e in self.edges)})"


def parse_mixed_graph(text: str) -> MixedGraph:
    """Parse the text graph format.

    The first non-comment line is ``mixedgraph <n> <m>``; then exactly m
    lines ``<u> <v> <kind> [<phase>]`` with kind in {undirected, directed}
    and phase (radians) permitted only on directed edges.  Lines starting
    with ``#`` are comments.
    """
    content = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        content.append((lineno, line))
    if not content:
        raise GraphFormatError("empty graph file")

    lineno, header = content[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "mixedgraph":
        raise GraphFormatError(f"line {lineno}: expected header 'mixedgraph <n> <m>', got {header!r}")
    try:
        n, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer counts in header {header!r}") from None
    if len(content) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(content) - 1}")

    edges = []
    for lineno, line in content[1:]:
        tokens = line.split()
        if len(tokens) not in (3, 4):
            raise GraphFormatError(f"line {lineno}: expected '<u> <v> <kind> [<phase>]', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        kind = tokens[2]
        if kind not in (UNDIRECTED, DIRECTED):
            raise GraphFormatError(f"line {lineno}: unknown edge kind {kind!r}")
        phase = 0.0
        if len(tokens) == 4:
            if kind == UNDIRECTED:
                raise GraphFormatError(f"line {lineno}: phase is only permitted on directed edges")
            try:
                phase = float(tokens[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad phase {tokens[3]!r}") from None
        edges.append(Edge(u, v, kind, phase))
    return MixedGraph(n, edges)


def to_text(graph: MixedGraph) -> str:
    """Serialize to the canonical text form (edges sorted by (u, v)).

    Round-tripping a canonical-form file through parse_mixed_graph and back
    is bit-exact; phases are written with shortest round-trip precision.
    """
    lines = [f"mixedgraph {graph.n} {graph.m}"]
    for e in sorted(graph.edges, key=lambda e: (e.u, e.v)):
        if e.kind == UNDIRECTED:
            lines.append(f"{e.u} {e.v} undirected")
        else:
            lines.append(f"{e.u} {e.v} directed {e.phase!r}")
    return "\n".join(lines) + "\n"


def girth(graph: MixedGraph) -> int | None:
    """Length of the shortest cycle of the underlying undirected graph.

    Returns None for forests.  Breadth-first search from every vertex; a
    non-tree edge scanned from vertex x to an already-visited w witnesses a
    closed walk of length dist(x) + dist(w) + 1, and the minimum of these
    candidates over all roots is exactly the girth.
    """
    best: int | None = None
    for root in range(graph.n):
        dist = [-1] * graph.n
        via = [-1] * graph.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] >= best:
                continue
            for w, edge_idx in graph.neighbors[x]:
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    via[w] = edge_idx
                    queue.append(w)
                elif edge_idx != via[x]:
                    candidate = dist[x] + dist[w] + 1
                    if best is None or candidate < best:
                        best = candidate
    return best


def stats(graph: MixedGraph) -> GraphStats:
    degs = graph.degrees
    regular = int(degs[0]) if graph.n > 0 and np.all(degs == degs[0]) else None
    return GraphStats(
        n=graph.n,
        m=graph.m,
        regular_degree=regular,
        min_degree=int(degs.min()) if graph.n else 0,
        connected=graph.connected,
        girth=girth(graph),
    )


# ---------------------------------------------------------------------------
# Generators.  All generators produce all-undirected graphs; use
# orient_random to turn a fraction of the edges into phased directed edges.
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> MixedGraph:
    if n < 2:
        raise GraphFormatError("complete graph needs n >= 2")
    return MixedGraph(n, [Edge(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> MixedGraph:
    if n < 3:
        raise GraphFormatError("cycle graph needs n >= 3")
    return MixedGraph(n, [Edge(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MixedGraph:
    if n < 2:
        raise GraphFormatError("path graph needs n >= 2")
    return MixedGraph(n, [Edge(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> MixedGraph:
    edges = [Edge(i, (i + 1) % 5) for i in range(5)]
    edges += [Edge(i, i + 5) for i in range(5)]
    edges += [Edge(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MixedGraph(10, edges)


def circulant_graph(n: int, steps) -> MixedGraph:
    if n < 3:
        raise GraphFormatError("circulant graph needs n >= 3")
    steps = sorted(set(int(s) for s in steps))
    if not steps:
        raise GraphFormatError("circulant graph needs at least one step")
    if any(s <= 0 or s >= n for s in steps):
        raise GraphFormatError(f"circulant steps must lie in 1 .. n - 1, got {steps}")
    pairs = set()
    for s in steps:
        for i in range(n):
            pairs.add((min(i, (i + s) % n), max(i, (i + s) % n)))
    return MixedGraph(n, [Edge(u, v) for u, v in sorted(pairs)])


def random_regular_graph(n: int, d: int, seed=None, max_attempts: int = 2000) -> MixedGraph:
    """Sample a simple d-regular graph by the pairing (configuration) model.

    Random perfect matchings on n*d stubs are drawn and rejected outright
    whenever they contain a loop or a repeated pair, so accepted graphs are
    uniform over simple d-regular multigraph-free outcomes.  Deterministic
    for a fixed seed.
    """
    if n * d % 2 != 0:
        raise GraphFormatError("n * d must be even")
    if not 1 <= d < n:
        raise GraphFormatError("need 1 <= d < n")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_attempts):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        ok = True
        seen = set()
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in seen:
                ok = False
                break
            seen.add(key)
        if ok:
            return MixedGraph(n, [Edge(u, v) for u, v in sorted(seen)])
    raise GenerationError(
        f"pairing model failed to produce a simple {d}-regular graph on {n} vertices "
        f"after {max_attempts} attempts"
    )


def generate(spec: str, seed=None) -> MixedGraph:
    """Build a graph from a generator spec string.

    Supported forms: ``complete:n``, ``cycle:n``, ``path:n``, ``petersen``,
    ``circulant:n:s1,s2,...``, ``random_regular:n:d``.  The seed is only
    used by random_regular.
    """
    parts = spec.split(":")
    family = parts[0]
    try:
        if family == "complete":
            return complete_graph(int(parts[1]))
        if family == "cycle":
            return cycle_graph(int(parts[1]))
        if family == "path":
            return path_graph(int(parts[1]))
        if family == "petersen":
            return petersen_graph()
        if family == "circulant":
            return circulant_graph(int(parts[1]), [int(s) for s in parts[2].split(",")])
        if family == "random_regular":
            return random_regular_graph(int(parts[1]), int(parts[2]), seed=seed)
    except (IndexError, ValueError) as exc:
        raise GraphFormatError(f"bad generator spec {spec!r}: {exc}") from None
    raise GraphFormatError(f"unknown generator family {family!r}")


def orient_random(graph: MixedGraph, fraction: float, phases: str = "uniform", seed=None) -> MixedGraph:
    """Direct floor(fraction * m) edges of an all-undirected graph.

    The head of each chosen edge starts at the lower vertex id and is then
    flipped by a seeded coin; phases are 0 or drawn uniformly from
    (-pi, pi].  Deterministic for a fixed seed.
    """
    if not graph.is_undirected:
        raise ValueError("orient_random expects an all-undirected graph")
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    if phases not in ("zero", "uniform"):
        raise ValueError(f"phases must be 'zero' or 'uniform', got {phases!r}")
    rng = np.random.default_rng(seed)
    k = int(math.floor(fraction * graph.m))
    chosen = sorted(rng.choice(graph.m, size=k, replace=False).tolist()) if k else []
    chosen_set = set(chosen)
    edges = []
    for j, e in enumerate(graph.edges):
        if j not in chosen_set:
            edges.append(e)
            continue
        u, v = min(e.u, e.v), max(e.u, e.v)
        if rng.random() < 0.5:
            u, v = v, u
        phase = 0.0 if phases == "zero" else math.pi - rng.uniform(0.0, _TWO_PI)
        edges.append(Edge(u, v, DIRECTED, phase))
    return MixedGraph(graph.n, edges)


def strip_orientation(graph: MixedGraph) -> MixedGraph:
    """Forget orientations and phases, returning the plain underlying graph."""
    return MixedGraph(graph.n, [Edge(e.u, e.v) for e in graph.edges])
