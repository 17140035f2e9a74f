"""Maximum cardinality matching on general graphs (Edmonds' blossom algorithm)."""
from __future__ import annotations

from collections import deque

from .graph import Graph, bits


def _augmenting_tree(adj: list[list[int]], match: list[int], root: int) -> tuple[int, list[int]]:
    """Grow an alternating tree from ``root``; return (exposed endpoint or -1, parent)."""
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] < 0:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] < 0:
                parent[to] = v
                if match[to] < 0:
                    return to, parent
                used[match[to]] = True
                q.append(match[to])
    return -1, parent


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Return a maximum matching as sorted pairs ``(u, v)`` with ``u < v``.

    Deterministic: starts from a greedy matching in vertex order, then grows
    augmenting paths from exposed vertices in increasing order.
    """
    n = g.n
    adj = [list(bits(r)) for r in g.adj]
    match = [-1] * n
    for v in range(n):
        if match[v] < 0:
            for w in adj[v]:
                if match[w] < 0:
                    match[v], match[w] = w, v
                    break
    for root in range(n):
        if match[root] >= 0 or not adj[root]:
            continue
        end, parent = _augmenting_tree(adj, match, root)
        v = end
        while v >= 0:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return sorted((v, match[v]) for v in range(n) if match[v] > v)


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def bipartite_maximum_matching(g: Graph, left: list[int], right: list[int]) -> list[tuple[int, int]]:
    """Maximum matching of the cross edges between ``left`` and ``right``.

    Pairs come back as ``(x, y)`` with ``x`` in ``left``, ordered by ``x``.
    Kuhn's augmenting-path search, trying partners in increasing order.
    """
    rmask = 0
    for v in right:
        rmask |= 1 << v
    owner: dict[int, int] = {}

    def try_kuhn(x: int, seen: set[int]) -> bool:
        for y in bits(g.adj[x] & rmask):
            if y in seen:
                continue
            seen.add(y)
            if y not in owner or try_kuhn(owner[y], seen):
                owner[y] = x
                return True
        return False

    for x in sorted(left):
        try_kuhn(x, set())
    return sorted((x, y) for y, x in owner.items())
