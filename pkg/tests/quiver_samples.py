"""Small acyclic quivers shared by the Hochschild and acceptance tests."""
import itertools

from tiltcover.quiver import Quiver


def _canonical(n, edges):
    best = None
    for p in itertools.permutations(range(n)):
        key = tuple(sorted((p[i], p[j]) for i, j in edges))
        if best is None or key < best:
            best = key
    return best


def _connected(n, edges):
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for i, j in edges:
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == n


def connected_acyclic_quivers(max_vertices=5, max_arrows=5):
    """Connected quivers with arrows i -> j for i < j, one per isomorphism class."""
    out = []
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for m in range(n - 1, max_arrows + 1):
            for edges in itertools.combinations_with_replacement(pairs, m):
                if not _connected(n, edges):
                    continue
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                arrows = [(f"x{k}", str(i + 1), str(j + 1)) for k, (i, j) in enumerate(key)]
                out.append(Quiver([str(v + 1) for v in range(n)], arrows))
    return out


def path_count(q, s, t):
    order = q.topological_order()
    ways = {v: 0 for v in q.vertices}
    ways[s] = 1
    for v in order:
        for a in q.out_arrows(v):
            ways[a.target] += ways[v]
    return ways[t]


def hh1_path_algebra_formula(q):
    """1 - n + sum over arrows of the number of paths parallel to the arrow."""
    return 1 - len(q.vertices) + sum(path_count(q, a.source, a.target) for a in q.arrows)
