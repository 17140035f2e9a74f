"""Exact graph parameters: clique/independence, complex number and degree,
matching numbers, neighbourhood diversity and the two VC-dimensions."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from .graph import Graph, GraphError, bits, popcount, to_mask
from .matching import maximum_matching

VC_MAX_VERTICES = 20

OPEN = "open"
CLOSED = "closed"


# --- cliques and independent sets -------------------------------------------

def max_clique(g: Graph, within: Optional[int] = None) -> list[int]:
    """Lexicographically least maximum clique of ``g`` inside the vertex mask ``within``."""
    cand0 = g.vertex_mask if within is None else within
    adj = g.adj
    best: list[int] = []

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(clique) > len(best):
                best = clique[:]
            return
        while cand:
            if len(clique) + popcount(cand) <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            clique.append(v)
            expand(clique, cand & adj[v])
            clique.pop()
            cand ^= low

    expand([], cand0)
    return best


def max_independent_set(g: Graph, within: Optional[int] = None) -> list[int]:
    return max_clique(g.complement(), within)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    return len(max_independent_set(g))


def complex_number(g: Graph) -> int:
    return min(independence_number(g), clique_number(g))


# --- degrees -----------------------------------------------------------------

def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def max_codegree(g: Graph) -> int:
    return max((g.n - 1 - d for d in g.degrees()), default=0)


def complex_degree(g: Graph) -> int:
    return max((min(d, g.n - 1 - d) for d in g.degrees()), default=0)


# --- matchings ----------------------------------------------------------------

def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def co_matching_number(g: Graph) -> int:
    return len(maximum_matching(g.complement()))


def c_matching_number(g: Graph) -> int:
    return min(matching_number(g), co_matching_number(g))


# --- similarity -------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityPartition:
    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def similar(g: Graph, x: int, y: int) -> bool:
    """No third vertex is adjacent to exactly one of ``x`` and ``y``."""
    return (g.adj[x] & ~(1 << y)) == (g.adj[y] & ~(1 << x))


def similarity_partition(g: Graph) -> SimilarityPartition:
    """Similarity classes, each listed in increasing order, ordered by least member."""
    classes: list[list[int]] = []
    for v in range(g.n):
        for cls in classes:
            if similar(g, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return SimilarityPartition(tuple(tuple(c) for c in classes))


def neighbourhood_diversity(g: Graph) -> int:
    return len(similarity_partition(g).classes)


nd = neighbourhood_diversity


def similarity_difference(g: Graph) -> int:
    sizes = similarity_partition(g).sizes
    return max(sizes) - min(sizes) if sizes else 0


# --- VC-dimension -----------------------------------------------------------

@dataclass
class ShatterWitness:
    """A shattered set with one witnessing vertex per subset.

    ``witnesses`` maps each subset (sorted tuple) of ``shattered`` to the
    vertex whose open or closed neighbourhood meets ``shattered`` exactly there.
    """

    shattered: tuple[int, ...]
    mode: str
    witnesses: dict[tuple[int, ...], int] = field(default_factory=dict)

    def verify(self, g: Graph) -> bool:
        if not self.shattered and not self.witnesses:
            # dimension 0 carries no certificate
            return True
        a = to_mask(self.shattered)
        if len(self.witnesses) != 1 << len(self.shattered):
            return False
        for subset, v in self.witnesses.items():
            if not set(subset) <= set(self.shattered):
                return False
            nb = g.adj[v] | (1 << v if self.mode == CLOSED else 0)
            if self.mode == OPEN and a >> v & 1:
                return False
            if nb & a != to_mask(subset):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "shattered": list(self.shattered),
            "mode": self.mode,
            "witnesses": [[list(s), v] for s, v in sorted(self.witnesses.items())],
        }


def _traces(g: Graph, amask: int, mode: str) -> dict[int, int]:
    """Map each realised trace (a mask within ``amask``) to its least witness."""
    out: dict[int, int] = {}
    for v in range(g.n):
        if mode == OPEN:
            if amask >> v & 1:
                continue
            t = g.adj[v] & amask
        else:
            t = (g.adj[v] | 1 << v) & amask
        if t not in out:
            out[t] = v
    return out


def shatter_witness(g: Graph, vs, mode: str = OPEN) -> Optional[ShatterWitness]:
    """Witness that ``vs`` is shattered in the given mode, or None."""
    if mode not in (OPEN, CLOSED):
        raise ValueError(f"mode must be 'open' or 'closed', not {mode!r}")
    a = tuple(sorted(set(vs)))
    amask = to_mask(a)
    traces = _traces(g, amask, mode)
    if len(traces) != 1 << len(a):
        return None
    wit = {tuple(bits(t)): v for t, v in traces.items()}
    return ShatterWitness(a, mode, dict(sorted(wit.items())))


def is_shattered(g: Graph, vs, mode: str = OPEN) -> bool:
    amask = to_mask(vs)
    return len(_traces(g, amask, mode)) == 1 << popcount(amask)


def _max_shattered(g: Graph, mode: str, cap: int) -> tuple[int, ...]:
    if g.n > cap:
        raise GraphError(f"VC-dimension search capped at n <= {cap}, got {g.n}")
    n = g.n
    best: tuple[int, ...] = ()
    if mode == OPEN and n == 0:
        return best

    def dfs(amask: int, chosen: list[int], start: int) -> None:
        nonlocal best
        for v in range(start, n):
            size = len(chosen) + 1
            budget = n - size if mode == OPEN else n
            if (1 << size) > budget:
                return
            a2 = amask | 1 << v
            if len(_traces(g, a2, mode)) == 1 << size:
                chosen.append(v)
                if size > len(best):
                    best = tuple(chosen)
                dfs(a2, chosen, v + 1)
                chosen.pop()

    dfs(0, [], 0)
    return best


def vc_closed(g: Graph, cap: int = VC_MAX_VERTICES) -> tuple[int, ShatterWitness]:
    """Largest set shattered by closed neighbourhoods, with its witness."""
    a = _max_shattered(g, CLOSED, cap)
    if not a and g.n == 0:
        return 0, ShatterWitness((), CLOSED, {})
    w = shatter_witness(g, a, CLOSED)
    return len(a), w


def vc_open(g: Graph, cap: int = VC_MAX_VERTICES) -> tuple[int, ShatterWitness]:
    """Largest set shattered by open neighbourhoods of vertices outside it."""
    a = _max_shattered(g, OPEN, cap)
    if g.n == 0:
        return 0, ShatterWitness((), OPEN, {})
    return len(a), shatter_witness(g, a, OPEN)


def _closed_family(g: Graph, amask: int) -> dict[int, int]:
    """Per subset of ``amask``: a witness, preferring one outside the subset."""
    fam: dict[int, int] = {}
    for v in range(g.n):
        t = (g.adj[v] | 1 << v) & amask
        prev = fam.get(t)
        if prev is None or (t >> prev & 1 and not t >> v & 1):
            fam[t] = v
    return fam


def prune_closed_witnesses(g: Graph, vs) -> tuple[int, ...]:
    """Shrink a closed-shattered set until every subset has a witness outside it.

    First drops a vertex forming a closed singleton, then repeatedly replaces a
    closed subset ``B`` (one whose witness lies in ``B``) by its witness alone.
    The result is shattered by open neighbourhoods.
    """
    a = to_mask(vs)
    if not a:
        return ()
    if not is_shattered(g, list(bits(a)), CLOSED):
        raise GraphError("input set is not shattered by closed neighbourhoods")
    while True:
        fam = _closed_family(g, a)
        closed = sorted((t for t, v in fam.items() if t >> v & 1), key=lambda t: (popcount(t), t))
        if not closed:
            return tuple(bits(a))
        t = closed[0]
        if popcount(t) == 1:
            a &= ~t
        else:
            a &= ~(t & ~(1 << fam[t]))


# --- report -------------------------------------------------------------------

@dataclass
class ParameterReport:
    alpha: int
    omega: int
    complex_number: int
    max_degree: int
    max_codegree: int
    complex_degree: int
    matching: int
    co_matching: int
    c_matching: int
    nd: int
    largest_class: int
    smallest_class: int
    similarity_difference: int
    vc_closed: Optional[int]
    vc_open: Optional[int]

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def parameter_report(g: Graph) -> ParameterReport:
    """All parameters of ``g``; VC fields are None above the VC search cap."""
    alpha = independence_number(g)
    omega = clique_number(g)
    mu = matching_number(g)
    comu = co_matching_number(g)
    sizes = similarity_partition(g).sizes
    small_enough = g.n <= VC_MAX_VERTICES
    return ParameterReport(
        alpha=alpha,
        omega=omega,
        complex_number=min(alpha, omega),
        max_degree=max_degree(g),
        max_codegree=max_codegree(g),
        complex_degree=complex_degree(g),
        matching=mu,
        co_matching=comu,
        c_matching=min(mu, comu),
        nd=len(sizes),
        largest_class=max(sizes, default=0),
        smallest_class=min(sizes, default=0),
        similarity_difference=(max(sizes) - min(sizes)) if sizes else 0,
        vc_closed=vc_closed(g)[0] if small_enough else None,
        vc_open=vc_open(g)[0] if small_enough else None,
    )
