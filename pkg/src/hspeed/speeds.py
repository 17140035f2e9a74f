"""Labelled speeds of hereditary classes, closed-form counts, entropy, index and
the layer classifier.

Exhaustive counting handles n <= 7 (2**21 labelled graphs). Classes given by a
finite forbidden set are counted by a vectorised scan over every adjacency
bitmask; other classes are grown vertex by vertex with their membership test.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import families
from .families import (
    NINE,
    Builtin,
    ClassSpec,
    Family,
    FamilyId,
    Forbidden,
    as_family,
    in_eij,
    labelled_members,
)
from .graph import Graph, GraphError, canonical_code, complement, to_graph6

log = logging.getLogger(__name__)

COUNT_MAX_N = 7
CACHE_ENV = "HSPEED_CACHE"
THREADS_ENV = "HSPEED_THREADS"

LAYERS = ("constant", "polynomial", "exponential", "superexponential-entropy-0", "positive-entropy")
CONSTANT_KILLERS = ("r", "co-r", "e1", "co-e1")
POLYNOMIAL_KILLERS = ("b", "s", "q", "m", "co-b", "co-s", "co-q", "co-m")
EXPONENTIAL_KILLERS = NINE
ENTROPY0_KILLERS = ("w", "co-w", "d")
ALL_KILLERS = CONSTANT_KILLERS + POLYNOMIAL_KILLERS + EXPONENTIAL_KILLERS + ENTROPY0_KILLERS


# --- cache -----------------------------------------------------------------------

class CountCache:
    """Append-only JSON-lines store of counts keyed by (class description, n)."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.hits = 0
        self._lock = threading.Lock()
        self._data: dict[tuple[str, int], int] = {}
        if self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    try:
                        rec = json.loads(line)
                        self._data[(str(rec["class"]), int(rec["n"]))] = int(rec["count"])
                    except (ValueError, KeyError, TypeError):
                        log.warning("ignoring corrupt cache line %d in %s", lineno, self.path)

    def get(self, key: str, n: int) -> Optional[int]:
        got = self._data.get((key, n))
        if got is not None:
            self.hits += 1
        return got

    def put(self, key: str, n: int, count: int) -> None:
        with self._lock:
            if self._data.get((key, n)) == count:
                return
            self._data[(key, n)] = count
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps({"class": key, "n": n, "count": str(count)}) + "\n")


_env_caches: dict[str, CountCache] = {}


def _resolve_cache(cache) -> Optional[CountCache]:
    if cache is False:
        return None
    if isinstance(cache, CountCache):
        return cache
    if cache is None:
        path = os.environ.get(CACHE_ENV)
        if not path:
            return None
    else:
        path = str(cache)
    if path not in _env_caches:
        _env_caches[path] = CountCache(path)
    return _env_caches[path]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# --- exhaustive counting --------------------------------------------------------------

def _pos(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def _copies_on(h: Graph, subset: tuple[int, ...]) -> set[int]:
    """Pair masks of every labelled copy of ``h`` on the vertex set ``subset``."""
    edges = h.edges()
    out = set()
    for perm in itertools.permutations(subset):
        m = 0
        for u, v in edges:
            m |= 1 << _pos(perm[u], perm[v])
        out.add(m)
    return out


def _forbidden_tests(spec: Forbidden, n: int) -> list[tuple[int, np.ndarray]]:
    """Per vertex subset: (mask of its pairs, sorted pair masks of forbidden copies)."""
    by_subset: dict[tuple[int, ...], set[int]] = {}
    for h in spec.graphs:
        if h.n > n:
            continue
        for subset in itertools.combinations(range(n), h.n):
            by_subset.setdefault(subset, set()).update(_copies_on(h, subset))
    tests = []
    for subset, copies in sorted(by_subset.items()):
        pmask = 0
        for i, j in itertools.combinations(subset, 2):
            pmask |= 1 << _pos(i, j)
        tests.append((pmask, np.array(sorted(copies), dtype=np.int64)))
    return tests


def _count_range(tests, lo: int, hi: int) -> int:
    masks = np.arange(lo, hi, dtype=np.int64)
    bad = np.zeros(masks.shape, dtype=bool)
    for pmask, copies in tests:
        bad |= np.isin(masks & pmask, copies)
    return int(masks.size - np.count_nonzero(bad))


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // parts)
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)]


def count_forbidden_vectorised(spec: Forbidden, n: int, workers: Optional[int] = None) -> int:
    """Count labelled n-vertex graphs avoiding every forbidden graph by scanning all masks."""
    if n > COUNT_MAX_N:
        raise GraphError(f"exhaustive counting capped at n <= {COUNT_MAX_N}")
    if any(h.n == 0 for h in spec.graphs):
        return 0
    tests = _forbidden_tests(spec, n)
    total = 1 << (n * (n - 1) // 2)
    workers = workers or _workers()
    if workers == 1 or total < 1 << 12:
        return _count_range(tests, 0, total)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda r: _count_range(tests, *r), _ranges(total, workers)))


def count_by_extension(spec: ClassSpec, n: int) -> int:
    """Count labelled members by growing them one vertex at a time."""
    return sum(1 for _ in labelled_members(spec.contains, n))


def count_labelled(spec: ClassSpec, n: int, cache=None) -> int:
    """Exact number of labelled graphs on ``n`` vertices in the class.

    ``cache`` may be a :class:`CountCache`, a path, ``None`` (use the
    environment variable ``HSPEED_CACHE`` if set) or ``False`` (no cache).
    Named families with an exact closed form are counted by formula above the
    enumeration cap.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > COUNT_MAX_N:
        if isinstance(spec, Family):
            fv = formula_count(spec.family, n)
            if fv.exact:
                return fv.value
        raise GraphError(f"exhaustive counting capped at n <= {COUNT_MAX_N}")
    store = _resolve_cache(cache)
    key = spec.description()
    if store is not None:
        got = store.get(key, n)
        if got is not None:
            return got
    if isinstance(spec, Forbidden):
        value = count_forbidden_vectorised(spec, n)
    elif isinstance(spec, Builtin) and spec.name == "all":
        value = 1 << (n * (n - 1) // 2)
    else:
        value = count_by_extension(spec, n)
    if store is not None:
        store.put(key, n, value)
    return value


# --- closed forms ---------------------------------------------------------------------

@dataclass(frozen=True)
class FormulaValue:
    value: int
    exact: bool = True
    note: str = ""

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "note": self.note}


FORMULA_FAMILIES = ("s", "b", "q", "e1", "r", "m")


def formula_count(f, n: int) -> FormulaValue:
    """Closed-form labelled count for the class of a named family (or its complement).

    ``m`` only has a lower bound; ``r`` holds from n = 3 on.
    """
    f = as_family(f)
    if n < 1:
        raise GraphError("formula counts need n >= 1")
    name = f.name
    if name == "s":
        return FormulaValue(2 ** n - n)
    if name == "b":
        return FormulaValue(2 ** (n - 1))
    if name == "q":
        return FormulaValue(n * 2 ** (n - 1) - n * (n + 1) // 2 + 1)
    if name == "e1":
        return FormulaValue(math.comb(n, 2) + 1)
    if name == "r":
        if n <= 2:
            return FormulaValue(n + 1, False, "formula holds for n >= 3")
        return FormulaValue(n + 1)
    if name == "m":
        return FormulaValue(math.factorial(n // 2), False, "lower bound")
    raise GraphError(f"no closed form for family {f.token!r}")


# --- entropy and index -------------------------------------------------------------------

def entropy_of_count(count: int, n: int) -> float:
    if n < 2:
        raise GraphError("entropy estimate needs n >= 2")
    if count <= 0:
        raise GraphError("class has no n-vertex members")
    return math.log2(count) / math.comb(n, 2)


def entropy_estimate(spec: ClassSpec, n: int, cache=None) -> float:
    """``log2(P_n) / C(n, 2)``."""
    return entropy_of_count(count_labelled(spec, n, cache), n)


def entropy_from_index(k: Optional[int]) -> Optional[float]:
    if k is None or k < 1:
        return None
    return 1 - 1 / k


def index_of(spec: Forbidden) -> int:
    """Largest ``i + j`` such that no forbidden graph lies in ``E(i, j)``.

    A graph on ``v`` vertices lies in every ``E(i, j)`` with ``i + j >= v``,
    and ``E(i, j)`` only grows with ``i`` and ``j``, so the search stops at the
    first infeasible sum.
    """
    if not isinstance(spec, Forbidden):
        raise GraphError("index_of needs a Forbidden spec")
    k = 0
    while True:
        s = k + 1
        if not any(all(not in_eij(h, i, s - i) for h in spec.graphs) for i in range(s + 1)):
            return k
        k = s


# --- layer classification --------------------------------------------------------------

@dataclass
class LayerVerdict:
    """``witnesses`` maps each minimal class token to the graph6 of a forbidden
    graph (or failed universal graph) excluding it, or None when contained."""

    layer: str
    index: Optional[int] = None
    entropy: Optional[float] = None
    witnesses: dict[str, Optional[str]] = field(default_factory=dict)
    evidence_only: bool = False

    @property
    def contained(self) -> list[str]:
        return [t for t, w in self.witnesses.items() if w is None]

    def to_json(self) -> dict:
        return {
            "layer": self.layer,
            "index": self.index,
            "entropy": self.entropy,
            "evidence_only": self.evidence_only,
            "contained": self.contained,
            "witnesses": self.witnesses,
        }


def decide_layer(witnesses: dict[str, Optional[str]]) -> str:
    """Layer from the containment pattern alone (a None witness means contained)."""
    def none_contained(tokens):
        return all(witnesses[t] is not None for t in tokens)

    if none_contained(CONSTANT_KILLERS):
        return "constant"
    if none_contained(POLYNOMIAL_KILLERS):
        return "polynomial"
    if none_contained(EXPONENTIAL_KILLERS):
        return "exponential"
    if none_contained(ENTROPY0_KILLERS):
        return "superexponential-entropy-0"
    return "positive-entropy"


EVIDENCE_MAX_VERTICES = 12
EVIDENCE_INDEX_MAX = 4
EVIDENCE_EIJ_VERTICES = 5


def _evidence_witness(spec: ClassSpec, token: str) -> Optional[str]:
    """First universal graph of the family (up to the size cap) outside the class."""
    f = FamilyId.parse(token)
    m = 1
    while True:
        g = families.generate(f, m)
        if g.n > EVIDENCE_MAX_VERTICES:
            return None
        if not spec.contains(g):
            return to_graph6(g)
        m += 1


def _small_graphs(n: int) -> list[Graph]:
    seen = set()
    out = []
    for mask in range(1 << (n * (n - 1) // 2)):
        g = Graph.from_pair_mask(n, mask)
        code = canonical_code(g)
        if code not in seen:
            seen.add(code)
            out.append(g)
    return out


def _evidence_index(spec: ClassSpec) -> Optional[int]:
    """Largest ``i + j <= EVIDENCE_INDEX_MAX`` whose small E(i, j) members all belong."""
    graphs = [g for v in range(1, EVIDENCE_EIJ_VERTICES + 1) for g in _small_graphs(v)]
    outside = [g for g in graphs if not spec.contains(g)]
    k = 0
    while k < EVIDENCE_INDEX_MAX:
        s = k + 1
        if not any(all(not in_eij(g, i, s - i) for g in outside) for i in range(s + 1)):
            return k
        k = s
    return None


def classify_layer(spec: ClassSpec) -> LayerVerdict:
    """Place the class in one of the five lowest layers.

    Exact for ``Forbidden`` specs: a minimal class is contained iff none of the
    forbidden graphs belongs to it. Other specs get evidence-only verdicts from
    membership of the minimal classes' universal graphs up to a size cap.
    """
    if isinstance(spec, Forbidden):
        witnesses = {}
        for t in ALL_KILLERS:
            h = families.family_killer(spec, t)
            witnesses[t] = None if h is None else to_graph6(h)
        evidence = False
    else:
        witnesses = {t: _evidence_witness(spec, t) for t in ALL_KILLERS}
        evidence = True
    layer = decide_layer(witnesses)
    verdict = LayerVerdict(layer, witnesses=witnesses, evidence_only=evidence)
    if layer == "positive-entropy":
        k = index_of(spec) if isinstance(spec, Forbidden) else _evidence_index(spec)
        verdict.index = k
        verdict.entropy = entropy_from_index(k)
    return verdict


# --- reports ----------------------------------------------------------------------------------

@dataclass
class SpeedReport:
    class_description: str
    counts: dict[int, int]
    entropy_estimates: dict[int, float]
    formula_deltas: dict[int, tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "class": self.class_description,
            "counts": {str(n): str(c) for n, c in self.counts.items()},
            "entropy_estimates": {str(n): e for n, e in self.entropy_estimates.items()},
            "formula_deltas": {str(n): list(d) for n, d in self.formula_deltas.items()},
        }


def speed_report(spec: ClassSpec, ns, cache=None) -> SpeedReport:
    counts, ent, deltas = {}, {}, {}
    for n in ns:
        c = count_labelled(spec, n, cache)
        counts[n] = c
        if n >= 2 and c > 0:
            ent[n] = entropy_of_count(c, n)
        if isinstance(spec, Family) and spec.family.name in FORMULA_FAMILIES and n >= 1:
            deltas[n] = (formula_count(spec.family, n).value, c)
    return SpeedReport(spec.description(), counts, ent, deltas)


def complement_spec(spec: ClassSpec) -> ClassSpec:
    """The class of complements of members."""
    if isinstance(spec, Forbidden):
        return Forbidden(tuple(complement(h) for h in spec.graphs))
    if isinstance(spec, Family):
        return Family(spec.family.complemented())
    swap = {"bipartite": "co-bipartite", "co-bipartite": "bipartite", "chain": "co-chain", "co-chain": "chain"}
    if spec.name == "e":
        return Builtin("e", spec.j, spec.i)
    return Builtin(swap.get(spec.name, spec.name))


# --- similarity-based counts -------------------------------------------------------------

def _similarity_matrix(masks: np.ndarray, n: int) -> dict[tuple[int, int], np.ndarray]:
    bit = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                bit[i, j] = (masks >> _pos(i, j)) & 1
    sim = {}
    for u in range(n):
        for v in range(u + 1, n):
            s = np.ones(masks.shape, dtype=bool)
            for w in range(n):
                if w != u and w != v:
                    s &= bit[u, w] == bit[v, w]
            sim[u, v] = sim[v, u] = s
    return sim


def _all_masks(n: int) -> np.ndarray:
    if n > COUNT_MAX_N:
        raise GraphError(f"exhaustive counting capped at n <= {COUNT_MAX_N}")
    return np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)


def nd_counts(n: int) -> np.ndarray:
    """Neighbourhood diversity of every labelled n-vertex graph, indexed by pair mask."""
    masks = _all_masks(n)
    sim = _similarity_matrix(masks, n)
    nd = np.zeros(masks.shape, dtype=np.int64)
    for v in range(n):
        fresh = np.ones(masks.shape, dtype=bool)
        for u in range(v):
            fresh &= ~sim[u, v]
        nd += fresh
    return nd


def largest_class_sizes(n: int) -> np.ndarray:
    """Largest similarity-class size of every labelled n-vertex graph."""
    masks = _all_masks(n)
    if n == 0:
        return np.zeros(masks.shape, dtype=np.int64)
    sim = _similarity_matrix(masks, n)
    best = np.ones(masks.shape, dtype=np.int64)
    for v in range(n):
        size = np.ones(masks.shape, dtype=np.int64)
        for u in range(n):
            if u != v:
                size += sim[u, v]
        best = np.maximum(best, size)
    return best


@dataclass(frozen=True)
class CountCheck:
    param: int
    n: int
    count: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.count <= self.bound

    def to_json(self) -> dict:
        return {"param": self.param, "n": self.n, "count": self.count, "bound": self.bound, "holds": self.holds}


def nd_count_bound_check(k: int, n: int) -> CountCheck:
    """Labelled n-vertex graphs with at most ``k`` similarity classes against
    ``k**n * 2**(C(k,2) + k)``."""
    if not 1 <= k <= 3:
        raise GraphError("nd bound check supports 1 <= k <= 3")
    count = int(np.count_nonzero(nd_counts(n) <= k))
    return CountCheck(k, n, count, k ** n * 2 ** (math.comb(k, 2) + k))


def polynomial_count_check(c: int, n: int) -> CountCheck:
    """Labelled n-vertex graphs with a similarity class of size at least ``n - c``
    against ``C(n, c) * 2**(C(c+1, 2) + 1)``."""
    if not 0 <= c <= 2:
        raise GraphError("polynomial count check supports 0 <= c <= 2")
    if n < 1:
        raise GraphError("need n >= 1")
    count = int(np.count_nonzero(largest_class_sizes(n) >= n - c))
    return CountCheck(c, n, count, math.comb(n, c) * 2 ** (math.comb(c + 1, 2) + 1))
