"""Labelled simple graphs on at most 64 vertices with bitset adjacency rows.

Vertices are ``0..n-1``. Row ``i`` of the adjacency is an int whose bit ``j``
is set iff ``i ~ j``. Graphs are immutable and hashable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64
MAX_CANONICAL = 10


class GraphError(ValueError):
    """Raised on malformed graphs, bad vertex sets or unparsable text."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Optional[Sequence[int]] = None):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if adj is None:
            adj = [0] * n
        if len(adj) != n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << n) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {i} has bits beyond vertex {n - 1}")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in bits(row):
                if not adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = hash((n, self.adj))

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # skips validation; callers guarantee the invariants
        g = object.__new__(cls)
        g.n = n
        g.adj = tuple(adj)
        g._hash = hash((n, g.adj))
        return g

    @classmethod
    def from_pair_mask(cls, n: int, mask: int) -> "Graph":
        """Build from a bitmask over pairs in column-major upper-triangle order.

        Pair ``(i, j)`` with ``i < j`` sits at bit ``j*(j-1)//2 + i``; this is the
        graph6 bit order, so masks for ``n-1`` vertices are prefixes of masks for
        ``n``.
        """
        adj = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if mask >> k & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k += 1
        return cls._trusted(n, adj)

    def pair_mask(self) -> int:
        mask = 0
        k = 0
        for j in range(1, self.n):
            row = self.adj[j]
            for i in range(j):
                if row >> i & 1:
                    mask |= 1 << k
                k += 1
        return mask

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self.n}, {self.edges()})"

    def __len__(self) -> int:
        return self.n

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def codegree(self, v: int) -> int:
        return self.n - 1 - popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def is_independent(self, vs: Iterable[int]) -> bool:
        m = to_mask(vs)
        return all(not (self.adj[v] & m) for v in bits(m))

    def is_clique(self, vs: Iterable[int]) -> bool:
        m = to_mask(vs)
        return all((self.adj[v] | 1 << v) & m == m for v in bits(m))

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph._trusted(self.n, [full & ~row & ~(1 << i) for i, row in enumerate(self.adj)])

    def induced(self, vs: Iterable[int]) -> "Graph":
        return induced(self, vs)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of the vertices")
        adj = [0] * self.n
        for i, row in enumerate(self.adj):
            adj[perm[i]] = to_mask(perm[j] for j in bits(row))
        return Graph._trusted(self.n, adj)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {u}-{v} out of range for n={n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(n, adj)


def complement(g: Graph) -> Graph:
    return g.complement()


def induced(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph induced by ``vs``, relabelled ``0..k-1`` in increasing order."""
    order = sorted(set(vs))
    for v in order:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(order)}
    adj = [to_mask(pos[w] for w in bits(g.adj[v]) if w in pos) for v in order]
    return Graph._trusted(len(order), adj)


def induced_ordered(g: Graph, vs: Sequence[int]) -> Graph:
    """Like :func:`induced` but vertex ``i`` of the result is ``vs[i]``."""
    pos = {v: i for i, v in enumerate(vs)}
    if len(pos) != len(vs):
        raise GraphError("repeated vertex")
    adj = [to_mask(pos[w] for w in bits(g.adj[v]) if w in pos) for v in vs]
    return Graph._trusted(len(vs), adj)


@dataclass(frozen=True)
class Bipartition:
    """A bipartite graph given with its two independent parts."""

    graph: Graph
    part_a: tuple[int, ...]
    part_b: tuple[int, ...]

    def __post_init__(self):
        a, b = set(self.part_a), set(self.part_b)
        if a & b or a | b != set(range(self.graph.n)):
            raise GraphError("parts must be disjoint and cover every vertex")
        if not (self.graph.is_independent(a) and self.graph.is_independent(b)):
            raise GraphError("each part must be an independent set")
        object.__setattr__(self, "part_a", tuple(sorted(a)))
        object.__setattr__(self, "part_b", tuple(sorted(b)))

    @classmethod
    def of(cls, g: Graph) -> "Bipartition":
        """Two-colour ``g`` by BFS from the lowest uncoloured vertex (colour A)."""
        colour = two_colouring(g)
        if colour is None:
            raise GraphError("graph is not bipartite")
        return cls(g, tuple(v for v in range(g.n) if colour[v] == 0),
                   tuple(v for v in range(g.n) if colour[v] == 1))

    def cross(self, v: int) -> int:
        """Neighbours of ``v`` (all neighbours lie in the other part)."""
        return self.graph.adj[v]


def two_colouring(g: Graph) -> Optional[list[int]]:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def bipartite_complement(b: Bipartition) -> Bipartition:
    g = b.graph
    ma, mb = to_mask(b.part_a), to_mask(b.part_b)
    adj = [0] * g.n
    for v in b.part_a:
        adj[v] = mb & ~g.adj[v]
    for v in b.part_b:
        adj[v] = ma & ~g.adj[v]
    return Bipartition(Graph._trusted(g.n, adj), b.part_a, b.part_b)


@dataclass(frozen=True)
class Embedding:
    """``mapping[u]`` is the host vertex assigned to pattern vertex ``u``."""

    mapping: tuple[int, ...]

    def verify(self, pattern: Graph, host: Graph) -> bool:
        return is_embedding(pattern, host, self.mapping)


def is_embedding(pattern: Graph, host: Graph, mapping: Sequence[int]) -> bool:
    """Check that ``mapping`` is an injective induced copy of ``pattern`` in ``host``."""
    if len(mapping) != pattern.n or len(set(mapping)) != pattern.n:
        return False
    if any(not 0 <= v < host.n for v in mapping):
        return False
    for u in range(pattern.n):
        for w in range(u + 1, pattern.n):
            if pattern.has_edge(u, w) != host.has_edge(mapping[u], mapping[w]):
                return False
    return True


def find_induced(host: Graph, pattern: Graph) -> Optional[Embedding]:
    """Lexicographically least induced embedding of ``pattern`` into ``host``.

    Backtracks over pattern vertices in index order, so the first embedding
    found is the least mapping tuple. Host candidates are filtered by degree
    and co-degree before any adjacency test.
    """
    k = pattern.n
    if k > host.n:
        return None
    if k == 0:
        return Embedding(())
    pdeg = pattern.degrees()
    pco = [k - 1 - d for d in pdeg]
    hdeg = host.degrees()
    cands = []
    for u in range(k):
        m = 0
        for v in range(host.n):
            if hdeg[v] >= pdeg[u] and host.n - 1 - hdeg[v] >= pco[u]:
                m |= 1 << v
        if not m:
            return None
        cands.append(m)
    hadj = host.adj
    padj = pattern.adj
    full = host.vertex_mask
    mapping = [0] * k

    def extend(u: int, avail: int) -> bool:
        if u == k:
            return True
        allowed = avail & cands[u]
        prow = padj[u]
        for w in range(u):
            img = mapping[w]
            if prow >> w & 1:
                allowed &= hadj[img]
            else:
                allowed &= full & ~hadj[img]
            if not allowed:
                return False
        for v in bits(allowed):
            mapping[u] = v
            if extend(u + 1, avail & ~(1 << v)):
                return True
        return False

    if extend(0, full):
        return Embedding(tuple(mapping))
    return None


def contains_induced(host: Graph, pattern: Graph) -> bool:
    return find_induced(host, pattern) is not None


# --- canonical forms -------------------------------------------------------

def _refined_colours(g: Graph) -> list[int]:
    """Stable colouring: start from degrees, refine by neighbour colour multisets."""
    colour = g.degrees()
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in bits(g.adj[v])))) for v in range(g.n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _best_perm(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Least code over relabellings that list vertices in colour order.

    Positions are filled one at a time; placing position ``j`` appends the
    bits of pairs ``(0, j) .. (j-1, j)`` (graph6 order), so a prefix larger
    than the best code's prefix is cut. Interchangeable twins are tried once.
    """
    n = g.n
    if n > MAX_CANONICAL:
        raise GraphError(f"canonical code needs n <= {MAX_CANONICAL}, got {n}")
    if n == 0:
        return 0, ()
    colour = _refined_colours(g)
    slot = sorted(colour)
    total = n * (n - 1) // 2
    adj = g.adj
    best = [None, ()]
    placed: list[int] = []

    def go(j: int, used: int, prefix: int) -> None:
        if j == n:
            if best[0] is None or prefix < best[0]:
                best[0], best[1] = prefix, tuple(placed)
            return
        tried: list[int] = []
        for v in range(n):
            if used >> v & 1 or colour[v] != slot[j]:
                continue
            # swapping twins is an automorphism fixing everything placed so far
            if any(adj[w] & ~(1 << v) == adj[v] & ~(1 << w) for w in tried):
                continue
            tried.append(v)
            code = prefix
            for u in placed:
                code = code << 1 | (adj[u] >> v & 1)
            if best[0] is not None:
                length = j * (j + 1) // 2
                if code > best[0] >> (total - length):
                    continue
            placed.append(v)
            go(j + 1, used | 1 << v, code)
            placed.pop()

    go(0, 0, 0)
    return best[0], best[1]


def canonical_code(g: Graph) -> bytes:
    """Isomorphism-invariant code.

    The least upper-triangle bit string (graph6 pair order) over relabellings
    that sort vertices by their refined degree colour.
    """
    code, _ = _best_perm(g)
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + code.to_bytes((nbits + 7) // 8, "big")


def canonical_form(g: Graph) -> Graph:
    _, perm = _best_perm(g)
    return induced_ordered(g, perm)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)


# --- text formats ------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    out = []
    acc = 0
    nacc = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return head + "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError(f"invalid graph6 character in {text!r}")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise GraphError(f"unsupported graph6 size header in {text!r}")
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 graph has {n} vertices; limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has wrong length for n={n}: {text!r}")
    mask = 0
    k = 0
    for c in body:
        chunk = ord(c) - 63
        for s_ in range(5, -1, -1):
            if k < nbits:
                if chunk >> s_ & 1:
                    mask |= 1 << k
            elif chunk >> s_ & 1:
                raise GraphError("graph6 padding bits must be zero")
            k += 1
    return Graph.from_pair_mask(n, mask)


def to_edge_list(g: Graph) -> str:
    edges = " ".join(f"{u}-{v}" for u, v in g.edges())
    return f"{g.n}; {edges}" if edges else f"{g.n};"


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n; u-v u-v ..."``."""
    head, sep, rest = text.partition(";")
    if not sep:
        raise GraphError(f"edge list needs 'n;' header: {text!r}")
    try:
        n = int(head)
        edges = []
        for tok in rest.split():
            u, v = tok.split("-")
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed edge list {text!r}") from exc
    return from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accept either graph6 or the ``n; u-v ...`` edge-list form."""
    return parse_edge_list(text) if ";" in text else parse_graph6(text)
