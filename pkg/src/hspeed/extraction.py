"""Constructive Ramsey-type extraction with certified witnesses.

Every procedure either returns an :class:`ExtractionResult` naming a pattern
(``kind`` and ``size``, generated by :func:`pattern_graph`) together with the
host vertices playing the pattern's vertices in order, or a :class:`Failure`
naming the stage that ran out of material. Ramsey thresholds are never
enforced; a failure only means this particular search came up short.

All arbitrary choices resolve to the lowest vertex index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence, Union

from . import families
from .families import NINE, edgeless
from .graph import (
    Bipartition,
    Graph,
    GraphError,
    bits,
    find_induced,
    induced_ordered,
    is_embedding,
    popcount,
    to_mask,
)
from .matching import bipartite_maximum_matching, maximum_matching
from .parameters import OPEN, ShatterWitness, max_clique, max_independent_set, similarity_partition, vc_open

VC_EXTRACT_MAX = 4


def pattern_graph(kind: str, size: int) -> Graph:
    """``bbc`` is the bipartite complement of ``B_size`` (2*size isolated vertices)."""
    if kind == "bbc":
        return edgeless(2 * size)
    return families.generate(kind, size)


@dataclass(frozen=True)
class ExtractionResult:
    kind: str
    size: int
    vertices: tuple[int, ...]
    route: str = ""

    ok = True

    @property
    def pattern(self) -> Graph:
        return pattern_graph(self.kind, self.size)

    def verify(self, host: Graph) -> bool:
        return is_embedding(self.pattern, host, self.vertices)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "size": self.size, "vertices": list(self.vertices)}
        if self.route:
            out["route"] = self.route
        return out


@dataclass(frozen=True)
class Failure:
    stage: str
    reason: str = ""

    ok = False

    def verify(self, host: Graph) -> bool:
        return True

    def to_json(self) -> dict:
        return {"failure": self.reason or self.stage, "stage": self.stage}


Outcome = Union[ExtractionResult, Failure]


def _checked(host: Graph, res: ExtractionResult) -> ExtractionResult:
    if not res.verify(host):
        raise AssertionError(f"internal error: unverifiable witness {res}")
    return res


# --- Ramsey searches ---------------------------------------------------------

def _first_clique(adj: Sequence[int], cand: int, size: int) -> Optional[list[int]]:
    """Lexicographically least clique of exactly ``size`` vertices inside ``cand``."""
    if size <= 0:
        return []
    chosen: list[int] = []

    def go(cand: int) -> bool:
        if len(chosen) == size:
            return True
        while cand:
            if len(chosen) + popcount(cand) < size:
                return False
            low = cand & -cand
            v = low.bit_length() - 1
            chosen.append(v)
            if go(cand & adj[v]):
                return True
            chosen.pop()
            cand ^= low
        return False

    return chosen if go(cand) else None


def _colour_graphs(k: int, colour: Callable[[int, int], Hashable]) -> dict[Hashable, list[int]]:
    rows: dict[Hashable, list[int]] = {}
    for i in range(k):
        for j in range(i + 1, k):
            c = colour(i, j)
            r = rows.setdefault(c, [0] * k)
            r[i] |= 1 << j
            r[j] |= 1 << i
    return rows


def _colour_fn(items: Sequence, colour) -> Callable[[int, int], Hashable]:
    if callable(colour):
        return lambda i, j: colour(items[i], items[j])
    def look(i, j):
        a, b = items[i], items[j]
        if (a, b) in colour:
            return colour[(a, b)]
        if (b, a) in colour:
            return colour[(b, a)]
        return colour[frozenset((a, b))]
    return look


def monochromatic_pair_subset(items: Sequence, colour, target: int) -> Optional[list]:
    """A ``target``-subset of ``items`` whose pairs all share one colour.

    ``colour`` is a function of two items or a mapping keyed by item pairs.
    Colours are tried in sorted order; within a colour the lexicographically
    least subset (by position in ``items``) is returned.
    """
    k = len(items)
    if target > k:
        return None
    if target <= 1:
        return list(items[:target])
    rows = _colour_graphs(k, _colour_fn(items, colour))
    for c in sorted(rows, key=repr):
        found = _first_clique(rows[c], (1 << k) - 1, target)
        if found is not None:
            return [items[i] for i in found]
    return None


def _cross_biclique(g: Graph, left: Sequence[int], right: Sequence[int], s: int,
                    complemented: bool) -> Optional[tuple[list[int], list[int]]]:
    """``s`` vertices of ``left`` and ``s`` of ``right`` with every cross pair
    adjacent (or, if ``complemented``, every cross pair non-adjacent)."""
    rmask = to_mask(right)
    rows = {v: (rmask & ~g.adj[v]) if complemented else (g.adj[v] & rmask) for v in left}
    left = sorted(left)
    chosen: list[int] = []

    def go(start: int, common: int) -> Optional[int]:
        if popcount(common) < s:
            return None
        if len(chosen) == s:
            return common
        for idx in range(start, len(left)):
            if len(chosen) + len(left) - idx < s:
                return None
            v = left[idx]
            chosen.append(v)
            got = go(idx + 1, common & rows[v])
            if got is not None:
                return got
            chosen.pop()
        return None

    common = go(0, rmask)
    if common is None:
        return None
    return chosen[:], list(bits(common))[:s]


def bipartite_ramsey_witness(b: Bipartition, s: int) -> Outcome:
    """An induced ``B_s`` across the parts, else ``2s`` independent vertices split evenly."""
    g = b.graph
    for complemented, kind in ((False, "b"), (True, "bbc")):
        found = _cross_biclique(g, b.part_a, b.part_b, s, complemented)
        if found:
            x, y = found
            return _checked(g, ExtractionResult(kind, s, tuple(x + y)))
    return Failure("bipartite-ramsey", f"no {s}+{s} biclique or co-biclique across the parts")


# --- complex number ------------------------------------------------------------

def extract_complex(g: Graph, n: int) -> Outcome:
    """``S_n`` or its complement, from a maximum clique and independent set."""
    clique = max_clique(g)
    indep = max_independent_set(g)
    shared = set(clique) & set(indep)
    for v in shared:
        if len(clique) > len(indep):
            clique.remove(v)
        else:
            indep.remove(v)
    if min(len(clique), len(indep)) < n:
        return Failure("complex-number", f"complex number below {n}")
    found = _cross_biclique(g, clique, indep, n, complemented=True)
    if found:
        x, y = found
        return _checked(g, ExtractionResult("s", n, tuple(x + y)))
    found = _cross_biclique(g, clique, indep, n, complemented=False)
    if found:
        x, y = found
        return _checked(g, ExtractionResult("co-s", n, tuple(y + x)))
    return Failure("bipartite-ramsey", "clique/independent-set cross graph has no homogeneous n+n block")


# --- matchings -------------------------------------------------------------------

def _pair_colour(g: Graph, pairs: Sequence[tuple[int, int]], i: int, j: int) -> int:
    xi, yi = pairs[i]
    xj, yj = pairs[j]
    a = g.has_edge(xi, yj)
    c = g.has_edge(yi, xj)
    if not a and not c:
        return 1
    if a and c:
        return 2
    return 3 if a else 4


def extract_from_bipartite_matching(b: Bipartition, s: Optional[int] = None, t: Optional[int] = None,
                                    matching: Optional[Sequence[tuple[int, int]]] = None) -> Outcome:
    """Induced ``M_s`` or ``B_t`` read off a large matching.

    Matched pairs ``(x_i, y_i)`` (x in part A, ordered by x) are 4-coloured by
    which of ``x_i y_j``, ``y_i x_j`` are edges. A colour-1 set gives ``M_s``,
    a colour-2 set gives ``B_t``; a colour-3/4 set of ``2t-1`` pairs induces a
    chain graph whose corner is a ``B_t``.
    """
    g = b.graph
    if matching is None:
        pairs = bipartite_maximum_matching(g, list(b.part_a), list(b.part_b))
    else:
        aset = set(b.part_a)
        pairs = sorted((x, y) if x in aset else (y, x) for x, y in matching)
        for x, y in pairs:
            if not g.has_edge(x, y):
                raise GraphError(f"{x}-{y} is not an edge")
        if len({v for p in pairs for v in p}) != 2 * len(pairs):
            raise GraphError("matching pairs overlap")
    q = len(pairs)
    if not q:
        return Failure("matching", "no edges across the parts")
    rows = _colour_graphs(q, lambda i, j: _pair_colour(g, pairs, i, j))
    full = (1 << q) - 1

    def mono(c: int, size: int) -> Optional[list[int]]:
        if size <= 1:
            return list(range(size)) if size <= q else None
        return _first_clique(rows.get(c, [0] * q), full, size)

    if s:
        idx = mono(1, s)
        if idx is not None:
            return _checked(g, ExtractionResult("m", s, tuple([pairs[i][0] for i in idx] + [pairs[i][1] for i in idx])))
    if t:
        idx = mono(2, t)
        if idx is not None:
            return _checked(g, ExtractionResult("b", t, tuple([pairs[i][0] for i in idx] + [pairs[i][1] for i in idx])))
        for c in (3, 4):
            idx = mono(c, 2 * t - 1)
            if idx is None:
                continue
            xs = [pairs[i][0] for i in idx]
            ys = [pairs[i][1] for i in idx]
            # colour 3: x_a ~ y_b iff a <= b; colour 4: iff a >= b
            if c == 3:
                xsel, ysel = xs[:t], ys[t - 1:]
            else:
                xsel, ysel = xs[t - 1:], ys[:t]
            return _checked(g, ExtractionResult("b", t, tuple(xsel + ysel)))
    # the colouring argument needs far more pairs than small inputs have; fall
    # back to a direct search so a present pattern is never missed
    for kind, size in (("m", s), ("b", t)):
        if size:
            emb = find_induced(g, families.generate(kind, size))
            if emb is not None:
                return _checked(g, ExtractionResult(kind, size, emb.mapping, route="direct"))
    return Failure("monochromatic", f"no homogeneous set among {q} matched pairs and no direct copy")


def extract_from_matching(g: Graph, s: Optional[int] = None, t: Optional[int] = None,
                          p: Optional[int] = None) -> Outcome:
    """Induced ``M_s``, induced ``B_t`` or a clique ``K_p`` around a maximum matching.

    Lower endpoints of matching edges are white, upper ones black. A ``K_p``
    among the whites wins outright; otherwise a maximum independent set of
    whites, then of their black partners, leaves a bipartite graph with a
    perfect matching that goes to :func:`extract_from_bipartite_matching`.
    If that starves, any ``K_p`` on the matched vertices is returned.
    """
    pairs = maximum_matching(g)
    if not pairs:
        return Failure("matching", "graph has no edges")
    partner = {}
    for u, v in pairs:
        partner[u], partner[v] = v, u
    whites = to_mask(u for u, _ in pairs)
    if p:
        k = _first_clique(g.adj, whites, p)
        if k is not None:
            return _checked(g, ExtractionResult("k", p, tuple(k)))
    a = max_independent_set(g, whites)
    blacks = to_mask(partner[v] for v in a)
    if p:
        k = _first_clique(g.adj, blacks, p)
        if k is not None:
            return _checked(g, ExtractionResult("k", p, tuple(k)))
    a1 = max_independent_set(g, blacks)
    a2 = [partner[v] for v in a1]
    order = a2 + a1
    h = induced_ordered(g, order)
    r = len(a2)
    bip = Bipartition(h, tuple(range(r)), tuple(range(r, 2 * r)))
    res = extract_from_bipartite_matching(bip, s, t, matching=[(i, r + i) for i in range(r)])
    if res.ok:
        return _checked(g, ExtractionResult(res.kind, res.size, tuple(order[v] for v in res.vertices), res.route))
    if p:
        k = _first_clique(g.adj, whites | to_mask(partner.values()), p)
        if k is not None:
            return _checked(g, ExtractionResult("k", p, tuple(k), route="direct"))
    return Failure(res.stage, res.reason)


# --- skew matchings -----------------------------------------------------------------

@dataclass(frozen=True)
class SkewMatching:
    """Pairs ``(x_i, y_i)``; ``y_i`` misses every later ``x_j``.

    With ``complemented`` the same holds in the bipartite complement:
    ``x_i`` misses ``y_i`` and ``y_i`` sees every later ``x_j``.
    """

    pairs: tuple[tuple[int, int], ...]
    complemented: bool = False

    ok = True

    def verify(self, g: Graph) -> bool:
        vs = [v for p in self.pairs for v in p]
        if len(set(vs)) != len(vs):
            return False
        want = not self.complemented
        for i, (x, y) in enumerate(self.pairs):
            if g.has_edge(x, y) != want:
                return False
            for xj, _ in self.pairs[i + 1:]:
                if g.has_edge(y, xj) == want:
                    return False
        return True

    def to_json(self) -> dict:
        return {"kind": "co-skew" if self.complemented else "skew", "size": len(self.pairs),
                "pairs": [list(p) for p in self.pairs]}


def _skew_rounds(g: Graph, d: Sequence[int], others: Sequence[int],
                 stop_at: Optional[int] = None) -> list[tuple[int, int, bool]]:
    """Big/small rounds over a set ``d`` of pairwise distinguished vertices.

    Each round takes the least ``y`` in ``others`` with both a neighbour and a
    non-neighbour in ``d``. A small ``y`` (at most half of ``d`` adjacent)
    contributes its least neighbour ``x`` and removes its neighbours from
    ``d``; a big ``y`` contributes its least non-neighbour and keeps only its
    neighbours. Returns ``(x, y, big)`` triples; stops when ``d`` can no longer
    be split or ``stop_at`` rounds of one kind have been collected.
    """
    dmask = to_mask(d)
    others = sorted(others)
    rounds: list[tuple[int, int, bool]] = []
    counts = [0, 0]
    while popcount(dmask) >= 2:
        size = popcount(dmask)
        for y in others:
            nb = g.adj[y] & dmask
            if 0 < popcount(nb) < size:
                break
        else:
            break
        k = popcount(nb)
        big = k > size - k
        if big:
            x = (dmask & ~nb & -(dmask & ~nb)).bit_length() - 1
            dmask = nb
        else:
            x = (nb & -nb).bit_length() - 1
            dmask &= ~nb
        rounds.append((x, y, big))
        counts[big] += 1
        if stop_at is not None and counts[big] >= stop_at:
            break
    return rounds


def _distinct_neighbourhood_reps(g: Graph, part: Sequence[int]) -> list[int]:
    seen = set()
    reps = []
    for v in sorted(part):
        if g.adj[v] not in seen:
            seen.add(g.adj[v])
            reps.append(v)
    return reps


def _skew_sides(b: Bipartition) -> list[tuple[list[int], list[int]]]:
    """(D, distinguishers) for both parts, the part with more distinct neighbourhoods first."""
    g = b.graph
    sides = [(_distinct_neighbourhood_reps(g, b.part_a), list(b.part_b)),
             (_distinct_neighbourhood_reps(g, b.part_b), list(b.part_a))]
    return sides if len(sides[0][0]) >= len(sides[1][0]) else sides[::-1]


def find_skew_matching(b: Bipartition, m: int) -> Union[SkewMatching, Failure]:
    """Skew matching of size ``m`` or its complement, via big/small rounds.

    ``D`` is one vertex per distinct neighbourhood in the richer part. At
    least ``2**(2m)/2`` such vertices guarantee success.
    """
    if m <= 0:
        return SkewMatching(())
    d, others = _skew_sides(b)[0]
    rounds = _skew_rounds(b.graph, d, others, stop_at=m)
    small = [(x, y) for x, y, big in rounds if not big]
    large = [(x, y) for x, y, big in rounds if big]
    if len(small) >= m:
        return SkewMatching(tuple(small[:m]), False)
    if len(large) >= m:
        return SkewMatching(tuple(large[:m]), True)
    return Failure("skew-matching", f"D exhausted after {len(rounds)} rounds")


def _colour_classes(g: Graph, pairs: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Adjacency rows over pair indices: colour 1 (x_i !~ y_j) and colour 2 (x_i ~ y_j), i < j."""
    k = len(pairs)
    r1, r2 = [0] * k, [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            rows = r2 if g.has_edge(pairs[i][0], pairs[j][1]) else r1
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return r1, r2


def _z_vertices(xs: Sequence[int], ys: Sequence[int], p: int) -> tuple[int, ...]:
    # host x_a ~ y_b iff a <= b; pattern x_i ~ y_j iff j <= i, so reverse both sides
    return tuple(xs[::-1]) + tuple(ys[::-1])


def _nd_bipartite_candidates(g: Graph, rounds, p: int) -> list[ExtractionResult]:
    small = [(x, y) for x, y, big in rounds if not big]
    large = [(x, y) for x, y, big in rounds if big]
    found: dict[str, ExtractionResult] = {}
    if len(small) >= p:
        r1, r2 = _colour_classes(g, small)
        full = (1 << len(small)) - 1
        idx = _first_clique(r1, full, p) if p > 1 else list(range(p))
        if idx is not None:
            found["m"] = ExtractionResult("m", p, tuple([small[i][0] for i in idx] + [small[i][1] for i in idx]))
        idx = _first_clique(r2, full, p) if p > 1 else list(range(p))
        if idx is not None:
            found.setdefault("z", ExtractionResult("z", p, _z_vertices([small[i][0] for i in idx],
                                                                      [small[i][1] for i in idx], p)))
    if len(large) >= p:
        # colour 1 here: x_i ~ y_j, i.e. non-adjacent in the bipartite complement
        r_nonadj, r_adj = _colour_classes(g, large)
        full = (1 << len(large)) - 1
        idx = _first_clique(r_adj, full, p) if p > 1 else list(range(p))
        if idx is not None:
            found["mbc"] = ExtractionResult("mbc", p, tuple([large[i][0] for i in idx] + [large[i][1] for i in idx]))
        if len(large) >= p + 1:
            idx = _first_clique(r_nonadj, full, p + 1)
            if idx is not None and "z" not in found:
                # host x_a ~ y_b iff a > b; dropping x_1 and y_{p+1} leaves
                # x'_a ~ y_b iff a >= b, which reads as a <= b after reversing both
                xs = [large[i][0] for i in idx][1:]
                ys = [large[i][1] for i in idx][:p]
                found["z"] = ExtractionResult("z", p, _z_vertices(xs[::-1], ys[::-1], p))
    return [found[k] for k in ("m", "z", "mbc") if k in found]


def extract_nd_bipartite(b: Bipartition, p: int) -> Outcome:
    """Induced ``M_p``, ``Z_p`` or ``Mbc_p`` (in that priority) from a skew matching.

    The rounds start from the part with more distinct neighbourhoods; if that
    side yields nothing, the other part is tried.
    """
    g = b.graph
    starved = True
    for d, others in _skew_sides(b):
        rounds = _skew_rounds(g, d, others)
        if max(sum(1 for r in rounds if r[2]), sum(1 for r in rounds if not r[2])) < p:
            continue
        starved = False
        cands = _nd_bipartite_candidates(g, rounds, p)
        if cands:
            return _checked(g, cands[0])
    if starved:
        return Failure("skew-matching", f"fewer than {p} big or small rounds from either part")
    return Failure("monochromatic", "skew matching has no homogeneous p-subset")


def _distinct_trace_reps(g: Graph, vs: Sequence[int], on: int) -> list[int]:
    seen = set()
    reps = []
    for v in sorted(vs):
        t = g.adj[v] & on
        if t not in seen:
            seen.add(t)
            reps.append(v)
    return reps


def extract_nd_general(g: Graph, p: int) -> Outcome:
    """One of the nine patterns M, Mbc, Z, their complements, M*, co-M*, Z* of size ``p``.

    Takes one vertex per similarity class, a homogeneous subset ``A`` of them
    (independent first, then clique), runs big/small rounds of ``A`` against
    the rest, and for each homogeneous cross structure picks the vertices on
    the non-``A`` side forming a clique or independent set. The assembled
    vertex set is then searched for the nine patterns in order. If ``A`` as
    the split set yields nothing, the rounds are rerun with the rest split by
    ``A``.
    """
    reps = [c[0] for c in similarity_partition(g).classes]
    if len(reps) < 2:
        return Failure("similarity", "fewer than two similarity classes")
    rmask = to_mask(reps)
    options = []
    ind = max_independent_set(g, rmask)
    cl = max_clique(g, rmask)
    for a in (ind, cl):
        if len(a) >= 2 and a not in options:
            options.append(a)
    patterns = [(k, families.generate(k, p)) for k in NINE]
    co_adj = g.complement().adj
    for a in options:
        amask = to_mask(a)
        rest = [v for v in range(g.n) if not amask >> v & 1]
        runs = [(a, rest, 1), (_distinct_trace_reps(g, rest, amask), a, 0)]
        for d, others, refine in runs:
            rounds = _skew_rounds(g, d, others)
            groups = [[(x, y) for x, y, big in rounds if not big], [(x, y) for x, y, big in rounds if big]]
            for pairs in groups:
                if len(pairs) < p:
                    continue
                r1, r2 = _colour_classes(g, pairs)
                for rows in (r1, r2):
                    hom = _max_clique_rows(rows)
                    if len(hom) < p:
                        continue
                    chosen = [pairs[i] for i in hom]
                    side = to_mask(pair[refine] for pair in chosen)
                    for size in sorted({min(len(chosen), p + 1), p}, reverse=True):
                        for sel in (_first_clique(g.adj, side, size), _first_clique(co_adj, side, size)):
                            if sel is None:
                                continue
                            sel_set = set(sel)
                            use = [pair for pair in chosen if pair[refine] in sel_set]
                            u = [x for x, _ in use] + [y for _, y in use]
                            sub = induced_ordered(g, u)
                            for kind, pat in patterns:
                                emb = find_induced(sub, pat)
                                if emb is not None:
                                    return _checked(g, ExtractionResult(kind, p, tuple(u[i] for i in emb.mapping)))
    return Failure("nine-patterns", "no homogeneous structure of the requested size")


def _max_clique_rows(rows: list[int]) -> list[int]:
    return max_clique(Graph._trusted(len(rows), rows))


# --- VC-dimension ---------------------------------------------------------------------

def reverse_shatter(g: Graph, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], ShatterWitness]:
    """Given ``a`` shattering ``b`` (open neighbourhoods, ``|b| = 2**n``), find
    ``n`` vertices of ``a`` that ``b`` shatters.

    The k-th vertex of sorted ``b`` stands for the binary vector of ``k``; the
    i-th returned vertex is the least one of ``a`` whose trace on ``b`` is the
    i-th coordinate function.
    """
    bl = sorted(set(b))
    al = sorted(set(a))
    if set(al) & set(bl):
        raise GraphError("shattering set must be disjoint from the shattered set")
    size = len(bl)
    if size == 0 or size & (size - 1):
        raise GraphError(f"|b| = {size} is not a power of two")
    n = size.bit_length() - 1
    bmask = to_mask(bl)
    traces: dict[int, int] = {}
    for v in al:
        traces.setdefault(g.adj[v] & bmask, v)
    if len(traces) != 1 << size:
        raise GraphError("first set does not shatter the second")
    star = []
    for i in range(n):
        coord = to_mask(bl[k] for k in range(size) if k >> i & 1)
        star.append(traces[coord])
    witnesses = {}
    for alpha in range(1 << n):
        subset = tuple(sorted(star[i] for i in range(n) if alpha >> i & 1))
        witnesses[subset] = bl[alpha]
    w = ShatterWitness(tuple(sorted(star)), OPEN, dict(sorted(witnesses.items())))
    return tuple(star), w


_VC_KINDS = (("w", False, False), ("co-w", True, True), ("d", True, False), ("co-d", False, True))


def _pick_traces(g: Graph, xs: Sequence[int], pool: int, y_clique: bool,
                 complement_traces: bool) -> Optional[list[int]]:
    """One vertex from ``pool`` per trace on ``xs``, pairwise homogeneous.

    Entry ``k`` of the result has trace ``{xs[i] : bit i of k}`` (or its
    complement within ``xs``).
    """
    n = len(xs)
    xmask = to_mask(xs)
    pool &= ~xmask
    want = []
    for k in range(1 << n):
        t = to_mask(xs[i] for i in range(n) if k >> i & 1)
        want.append(xmask & ~t if complement_traces else t)
    cands = [to_mask(v for v in bits(pool) if g.adj[v] & xmask == t) for t in want]
    if not all(cands):
        return None
    picked: list[int] = []

    def go(k: int, allowed: int) -> bool:
        if k == len(want):
            return True
        for v in bits(cands[k] & allowed):
            picked.append(v)
            nxt = allowed & ~(1 << v) & (g.adj[v] if y_clique else ~g.adj[v])
            if go(k + 1, nxt):
                return True
            picked.pop()
        return False

    return picked if go(0, pool) else None


def _vc_assemble(g: Graph, xs: Sequence[int], x_clique: bool, pool: int, n: int) -> Optional[ExtractionResult]:
    for kind, xc, yc in _VC_KINDS:
        if xc != x_clique:
            continue
        ys = _pick_traces(g, xs, pool, yc, kind.startswith("co-"))
        if ys is not None:
            return ExtractionResult(kind, n, tuple(xs) + tuple(ys))
    return None


def _homogeneous_subsets(g: Graph, within: int, size: int):
    """Least independent then least clique ``size``-subsets inside ``within``."""
    ind = _first_clique(g.complement().adj, within, size)
    if ind is not None:
        yield ind, False
    cl = _first_clique(g.adj, within, size)
    if cl is not None:
        yield cl, True


def extract_vc(g: Graph, n: int) -> Outcome:
    """Induced ``W_n``, ``co-W_n``, ``D_n`` or ``co-D_n``.

    First the shattering route: a maximum open-shattered set, a homogeneous
    ``2**k``-subset of it, reverse shattering onto ``k`` witnesses, and a
    homogeneous ``n``-subset of those. If that starves, a direct search over
    homogeneous ``n``-sets with homogeneous trace witnesses.
    """
    if not 1 <= n <= VC_EXTRACT_MAX:
        raise GraphError(f"extract_vc supports 1 <= n <= {VC_EXTRACT_MAX}")
    if g.n < n + (1 << n):
        return Failure("size", f"fewer than {n + (1 << n)} vertices")
    if g.n <= 20:
        res = _vc_shatter_route(g, n)
        if res is not None:
            return _checked(g, res)
    for kind, xc, yc in _VC_KINDS:
        adj = g.adj if xc else g.complement().adj
        for xs in _combinations_homogeneous(adj, g.n, n):
            ys = _pick_traces(g, xs, g.vertex_mask, yc, kind.startswith("co-"))
            if ys is not None:
                return _checked(g, ExtractionResult(kind, n, tuple(xs) + tuple(ys), route="direct"))
    return Failure("vc-direct", f"no homogeneous shattered {n}-set with homogeneous witnesses")


def _combinations_homogeneous(adj: Sequence[int], nv: int, size: int):
    """All cliques of ``size`` in the given adjacency, in lexicographic order."""
    chosen: list[int] = []

    def go(cand: int):
        if len(chosen) == size:
            yield list(chosen)
            return
        while cand:
            if len(chosen) + popcount(cand) < size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            chosen.append(v)
            yield from go(cand & adj[v])
            chosen.pop()
            cand ^= low

    yield from go((1 << nv) - 1)


def _vc_shatter_route(g: Graph, n: int) -> Optional[ExtractionResult]:
    k, wit = vc_open(g)
    if k < 1 << n:
        return None
    a = to_mask(wit.shattered)
    shatterers = sorted(set(wit.witnesses.values()))
    for sub, _ in _homogeneous_subsets_max(g, a):
        kk = len(sub).bit_length() - 1
        if kk < n:
            continue
        a2 = sub[: 1 << kk]
        bprime, _ = reverse_shatter(g, shatterers, a2)
        for xs, x_clique in _homogeneous_subsets(g, to_mask(bprime), n):
            res = _vc_assemble(g, xs, x_clique, to_mask(a2), n)
            if res is not None:
                return res
    return None


def _homogeneous_subsets_max(g: Graph, within: int):
    yield max_independent_set(g, within), False
    yield max_clique(g, within), True
