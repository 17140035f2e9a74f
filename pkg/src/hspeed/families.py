"""Named graph families, their hereditary classes, and class specifications.

Vertex layouts of the generated graphs (all fixed conventions):

* ``s``: clique ``0..n-1``, isolated ``n..2n-1``
* ``q``: star centre ``0``, leaves ``1..n``, isolated ``n+1..2n``
* ``b``: parts ``0..n-1`` and ``n..2n-1``, every cross pair adjacent
* ``m``: ``i ~ n+i``
* ``z``: ``x_i = i-1``, ``y_j = n+j-1``, ``x_i ~ y_j`` iff ``j <= i``
* ``mbc``: ``x_i ~ y_j`` iff ``i != j``
* ``mstar``/``zstar``: ``m``/``z`` with a clique on the x side
* ``w``: part ``0..n-1``; vertex ``n+k`` adjacent to ``i`` iff bit ``i`` of ``k`` is set
* ``d``: ``w`` with a clique on ``0..n-1``
* ``r``: the star ``K_{1,n-1}`` (centre 0); ``e1``: edge ``0-1`` plus isolated vertices
* ``k``: the complete graph ``K_n``
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    bits,
    canonical_code,
    find_induced,
    from_edges,
    parse_graph6,
    popcount,
    to_graph6,
    canonical_form,
    two_colouring,
)

FAMILY_NAMES = ("s", "q", "b", "m", "z", "mbc", "mstar", "zstar", "w", "d", "r", "e1", "k")

# the nine minimal classes of unbounded neighbourhood diversity
NINE = ("m", "mbc", "z", "co-m", "co-mbc", "co-z", "mstar", "co-mstar", "zstar")


@dataclass(frozen=True)
class FamilyId:
    name: str
    co: bool = False

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise GraphError(f"unknown family {self.name!r}")

    @classmethod
    def parse(cls, token: str) -> "FamilyId":
        t = token.strip().lower()
        co = t.startswith("co-")
        return cls(t[3:] if co else t, co)

    @property
    def token(self) -> str:
        return ("co-" if self.co else "") + self.name

    def complemented(self) -> "FamilyId":
        return FamilyId(self.name, not self.co)

    def __str__(self) -> str:
        return self.token


def as_family(f) -> FamilyId:
    return f if isinstance(f, FamilyId) else FamilyId.parse(f)


# --- small named graphs -----------------------------------------------------

def complete(n: int) -> Graph:
    return from_edges(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return from_edges(n, [])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*gs: Graph) -> Graph:
    edges = []
    off = 0
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges()]
        off += g.n
    return from_edges(off, edges)


# --- generators -------------------------------------------------------------

def family_size(f, n: int) -> int:
    """Vertex count of ``generate(f, n)``."""
    name = as_family(f).name
    if name in ("w", "d"):
        return n + (1 << n) if n < 7 else MAX_VERTICES + 1
    if name == "q":
        return 2 * n + 1
    if name in ("r", "e1", "k"):
        return n
    return 2 * n


def generate(f, n: int) -> Graph:
    f = as_family(f)
    if n < 1:
        raise GraphError("family size must be at least 1")
    total = family_size(f, n)
    if total > MAX_VERTICES:
        raise GraphError(f"{f.token}_{n} needs {total} vertices; limit is {MAX_VERTICES}")
    name = f.name
    edges: list[tuple[int, int]] = []
    if name == "s":
        edges = list(itertools.combinations(range(n), 2))
    elif name == "q":
        edges = [(0, i) for i in range(1, n + 1)]
    elif name == "b":
        edges = [(i, n + j) for i in range(n) for j in range(n)]
    elif name in ("m", "mstar"):
        edges = [(i, n + i) for i in range(n)]
    elif name in ("z", "zstar"):
        edges = [(i - 1, n + j - 1) for i in range(1, n + 1) for j in range(1, i + 1)]
    elif name == "mbc":
        edges = [(i, n + j) for i in range(n) for j in range(n) if i != j]
    elif name in ("w", "d"):
        edges = [(i, n + k) for k in range(1 << n) for i in range(n) if k >> i & 1]
    elif name == "r":
        edges = [(0, i) for i in range(1, n)]
    elif name == "e1":
        edges = [(0, 1)] if n >= 2 else []
    elif name == "k":
        edges = list(itertools.combinations(range(n), 2))
    if name in ("mstar", "zstar", "d"):
        edges += list(itertools.combinations(range(n), 2))
    g = from_edges(total, edges)
    return g.complement() if f.co else g


# --- class predicates -------------------------------------------------------

def _is_clique_mask(g: Graph, m: int) -> bool:
    return all((g.adj[v] | 1 << v) & m == m for v in bits(m))


def _is_independent_mask(g: Graph, m: int) -> bool:
    return all(not g.adj[v] & m for v in bits(m))


def in_s(g: Graph) -> bool:
    """Clique plus isolated vertices."""
    core = 0
    for v in range(g.n):
        if g.adj[v]:
            core |= 1 << v
    return _is_clique_mask(g, core)


def in_q(g: Graph) -> bool:
    """Induced star plus isolated vertices: some vertex lies on every edge."""
    es = g.edges()
    if not es:
        return True
    u, v = es[0]
    return all(u in e for e in es) or all(v in e for e in es)


def in_b(g: Graph) -> bool:
    """Complete bipartite (edgeless counts): complement is at most two disjoint cliques."""
    h = g.complement()
    seen = 0
    parts = 0
    for v in range(h.n):
        if seen >> v & 1:
            continue
        comp = h.adj[v] | 1 << v
        if any(h.adj[u] | 1 << u != comp for u in bits(comp)):
            return False
        seen |= comp
        parts += 1
    return parts <= 2


def in_m(g: Graph) -> bool:
    return all(popcount(r) <= 1 for r in g.adj)


def _bipartitions(g: Graph) -> Iterator[tuple[int, int]]:
    """All bipartitions (A, B) of a bipartite graph, up to swapping A and B."""
    colour = two_colouring(g)
    if colour is None:
        return
    comps: list[tuple[int, int]] = []
    seen = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        a = sum(1 << v for v in bits(comp) if colour[v] == 0)
        comps.append((a, comp & ~a))
    if not comps:
        yield 0, 0
        return
    first_a, first_b = comps[0]
    for flips in itertools.product((False, True), repeat=len(comps) - 1):
        a, b = first_a, first_b
        for (ca, cb), flip in zip(comps[1:], flips):
            if flip:
                ca, cb = cb, ca
            a |= ca
            b |= cb
        yield a, b


def _neighbourhood_chain(g: Graph, part: int) -> bool:
    nbs = sorted((g.adj[v] for v in bits(part)), key=popcount)
    return all(x & ~y == 0 for x, y in zip(nbs, nbs[1:]))


def in_z(g: Graph) -> bool:
    """Chain graph: bipartite with each part's neighbourhoods nested."""
    colour = two_colouring(g)
    if colour is None:
        return False
    a = sum(1 << v for v in range(g.n) if colour[v] == 0)
    return _neighbourhood_chain(g, a) and _neighbourhood_chain(g, g.vertex_mask & ~a)


def _cross_degree_at_most_one(g: Graph, a: int, b: int, non_edges: bool) -> bool:
    for v in bits(a):
        row = (~g.adj[v] if non_edges else g.adj[v]) & b
        if row & (row - 1):
            return False
    for v in bits(b):
        row = (~g.adj[v] if non_edges else g.adj[v]) & a
        if row & (row - 1):
            return False
    return True


def in_mbc(g: Graph) -> bool:
    """Bipartite, with cross non-edges forming a matching for some bipartition."""
    return any(_cross_degree_at_most_one(g, a, b, True) for a, b in _bipartitions(g))


def split_partitions(g: Graph) -> Iterator[tuple[int, int]]:
    """All (clique, independent set) partitions of ``g``."""
    full = g.vertex_mask
    for k in range(1 << g.n):
        if _is_clique_mask(g, k) and _is_independent_mask(g, full & ~k):
            yield k, full & ~k


def in_mstar(g: Graph) -> bool:
    """Split, with cross edges forming a matching for some split partition."""
    return any(_cross_degree_at_most_one(g, k, i, False) for k, i in split_partitions(g))


def in_threshold(g: Graph) -> bool:
    """Repeatedly strip isolated or dominating vertices."""
    alive = g.vertex_mask
    while alive:
        for v in bits(alive):
            row = g.adj[v] & alive
            if row == 0 or row == alive & ~(1 << v):
                alive &= ~(1 << v)
                break
        else:
            return False
    return True


def is_bipartite(g: Graph) -> bool:
    return two_colouring(g) is not None


def is_cobipartite(g: Graph) -> bool:
    return two_colouring(g.complement()) is not None


def is_split(g: Graph) -> bool:
    """Degree-sequence test (Hammer-Simeone)."""
    d = sorted(g.degrees(), reverse=True)
    m = sum(1 for i, x in enumerate(d) if x >= i)
    return sum(d[:m]) == m * (m - 1) + sum(d[m:])


def in_r(g: Graph) -> bool:
    """Edgeless, or a star spanning every vertex."""
    if g.edge_count() == 0:
        return True
    full = g.vertex_mask
    for v in range(g.n):
        if g.adj[v] | 1 << v == full and _is_independent_mask(g, full & ~(1 << v)):
            return True
    return False


def in_e1(g: Graph) -> bool:
    return g.edge_count() <= 1


def in_k(g: Graph) -> bool:
    return _is_clique_mask(g, g.vertex_mask)


_CLASS_PREDICATES: dict[str, Callable[[Graph], bool]] = {
    "s": in_s,
    "q": in_q,
    "b": in_b,
    "m": in_m,
    "z": in_z,
    "mbc": in_mbc,
    "mstar": in_mstar,
    "zstar": in_threshold,
    "w": is_bipartite,
    "d": is_split,
    "r": in_r,
    "e1": in_e1,
    "k": in_k,
}


def in_family_class(f, g: Graph) -> bool:
    """Membership in the hereditary class whose universal graphs ``generate(f, n)`` are."""
    f = as_family(f)
    return _CLASS_PREDICATES[f.name](g.complement() if f.co else g)


# --- E(i, j) ------------------------------------------------------------------

EIJ_MAX_VERTICES = 16


def in_eij(g: Graph, i: int, j: int) -> bool:
    """Can V(g) be split into at most ``i`` independent sets and ``j`` cliques?"""
    if g.n > EIJ_MAX_VERTICES:
        raise GraphError(f"E(i,j) recognition capped at n <= {EIJ_MAX_VERTICES}")
    if g.n == 0:
        return True
    adj = g.adj
    indep = [0] * i
    cliq = [0] * j

    def place(v: int, ni: int, nc: int) -> bool:
        if v == g.n:
            return True
        bit = 1 << v
        # existing groups, then at most one fresh group of each kind
        for t in range(min(ni + 1, i)):
            if not adj[v] & indep[t]:
                indep[t] |= bit
                ok = place(v + 1, max(ni, t + 1), nc)
                indep[t] &= ~bit
                if ok:
                    return True
        for t in range(min(nc + 1, j)):
            if cliq[t] & adj[v] == cliq[t]:
                cliq[t] |= bit
                ok = place(v + 1, ni, max(nc, t + 1))
                cliq[t] &= ~bit
                if ok:
                    return True
        return False

    return place(0, 0, 0)


# --- class specifications -------------------------------------------------------

class ClassSpec:
    """A hereditary class: ``Forbidden``, ``Builtin`` or ``Family``."""

    def contains(self, g: Graph) -> bool:
        raise NotImplementedError

    def description(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.description()


@dataclass(frozen=True, eq=False)
class Forbidden(ClassSpec):
    graphs: tuple[Graph, ...]

    def __post_init__(self):
        if not self.graphs:
            raise GraphError("forbidden set must be non-empty")
        if any(h.n < 1 for h in self.graphs):
            raise GraphError("forbidden graphs need at least one vertex")
        object.__setattr__(self, "graphs", tuple(self.graphs))

    def contains(self, g: Graph) -> bool:
        ne = g.edge_count()
        nn = g.n * (g.n - 1) // 2 - ne
        for h in self.graphs:
            if h.n > g.n:
                continue
            he = h.edge_count()
            if he > ne or h.n * (h.n - 1) // 2 - he > nn:
                continue
            if find_induced(g, h) is not None:
                return False
        return True

    def description(self) -> str:
        codes = sorted({to_graph6(canonical_form(h)) for h in self.graphs})
        return "forbidden:" + ",".join(codes)

    def __eq__(self, other):
        return isinstance(other, Forbidden) and self.description() == other.description()

    def __hash__(self):
        return hash(self.description())


BUILTIN_NAMES = ("all", "bipartite", "co-bipartite", "split", "chain", "co-chain", "threshold", "e")


@dataclass(frozen=True)
class Builtin(ClassSpec):
    name: str
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.name not in BUILTIN_NAMES:
            raise GraphError(f"unknown builtin class {self.name!r}")

    def contains(self, g: Graph) -> bool:
        n = self.name
        if n == "all":
            return True
        if n == "bipartite":
            return is_bipartite(g)
        if n == "co-bipartite":
            return is_cobipartite(g)
        if n == "split":
            return is_split(g)
        if n == "chain":
            return in_z(g)
        if n == "co-chain":
            return in_z(g.complement())
        if n == "threshold":
            return in_threshold(g)
        return in_eij(g, self.i, self.j)

    def description(self) -> str:
        return f"builtin:e({self.i},{self.j})" if self.name == "e" else f"builtin:{self.name}"


@dataclass(frozen=True)
class Family(ClassSpec):
    family: FamilyId

    def contains(self, g: Graph) -> bool:
        return in_family_class(self.family, g)

    def description(self) -> str:
        return f"family:{self.family.token}"


def parse_class_spec(text: str) -> ClassSpec:
    """Parse ``forbidden:<g6>,...``, ``builtin:<name>`` / ``builtin:e(i,j)`` or ``family:<name>``."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise GraphError(f"class spec needs a 'kind:' prefix: {text!r}")
    kind = kind.strip().lower()
    rest = rest.strip()
    if kind == "forbidden":
        return Forbidden(tuple(parse_graph6(tok) for tok in rest.split(",") if tok))
    if kind == "builtin":
        low = rest.lower()
        if low.startswith("e(") and low.endswith(")"):
            try:
                i, j = (int(x) for x in low[2:-1].split(","))
            except ValueError as exc:
                raise GraphError(f"malformed E(i,j) spec {rest!r}") from exc
            return Builtin("e", i, j)
        return Builtin(low)
    if kind == "family":
        return Family(FamilyId.parse(rest))
    raise GraphError(f"unknown class-spec kind {kind!r}")


def is_member(c: ClassSpec, g: Graph) -> bool:
    return c.contains(g)


def class_contains_family(c: ClassSpec, f) -> bool:
    """Does Free(F) contain the whole class of family ``f``?

    True iff no forbidden graph belongs to that class.
    """
    if not isinstance(c, Forbidden):
        raise GraphError("class_contains_family needs a Forbidden spec")
    return family_killer(c, f) is None


def family_killer(c: Forbidden, f) -> Optional[Graph]:
    """First forbidden graph lying in the class of family ``f``, if any."""
    for h in c.graphs:
        if in_family_class(f, h):
            return h
    return None


# --- labelled enumeration -------------------------------------------------------

def labelled_members(pred: Callable[[Graph], bool], n: int) -> Iterator[Graph]:
    """All labelled graphs on ``0..n-1`` satisfying a hereditary predicate.

    Grows members one vertex at a time: a graph is only tried if its restriction
    to the first ``n-1`` vertices was a member.
    """
    if n == 0:
        g = Graph(0, [])
        if pred(g):
            yield g
        return
    level = [0] if pred(Graph(1, [0])) else []
    for m in range(2, n + 1):
        shift = (m - 1) * (m - 2) // 2
        nxt = []
        for base in level:
            for nb in range(1 << (m - 1)):
                mask = base | nb << shift
                if pred(Graph.from_pair_mask(m, mask)):
                    nxt.append(mask)
        level = nxt
    for mask in level:
        yield Graph.from_pair_mask(n, mask)


def _universe_for(f: FamilyId) -> tuple[Callable[[Graph], bool], str]:
    if f.name == "w":
        return (is_cobipartite if f.co else is_bipartite), ("co-bipartite" if f.co else "bipartite")
    if f.name == "d":
        return is_split, "split"
    return (lambda g: in_family_class(f, g)), f"class of {f.token}"


UNIVERSALITY_CAPS = {"z": 5, "w": 5, "d": 5, "mbc": 6, "mstar": 6, "zstar": 6}


@dataclass
class UniversalityReport:
    family: str
    n: int
    host_vertices: int
    members_checked: int
    passed: bool
    counterexample: Optional[str] = None
    universe: str = ""

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "universe": self.universe,
            "host_vertices": self.host_vertices,
            "members_checked": self.members_checked,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def check_universality(f, n: int) -> UniversalityReport:
    """Check that every n-vertex member of the class embeds in ``generate(f, n)``.

    For ``w`` the universe is all bipartite graphs (co-bipartite for ``co-w``),
    for ``d`` all split graphs.
    """
    f = as_family(f)
    cap = UNIVERSALITY_CAPS.get(f.name, 7)
    if n > cap:
        raise GraphError(f"universality enumeration for {f.token} capped at n <= {cap}")
    host = generate(f, n)
    pred, universe = _universe_for(f)
    seen: set[bytes] = set()
    for g in labelled_members(pred, n):
        code = canonical_code(g)
        if code in seen:
            continue
        seen.add(code)
        if find_induced(host, g) is None:
            return UniversalityReport(f.token, n, host.n, len(seen), False, to_graph6(g), universe)
    return UniversalityReport(f.token, n, host.n, len(seen), True, None, universe)
