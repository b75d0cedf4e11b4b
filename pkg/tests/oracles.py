"""Independent oracle implementations used to cross-check production code.

Everything here works from the raw Graph fields (vertex/edge tuples, omega
pairs) with its own traversal logic, so that agreement with the production
modules is meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from leavitt_lab.graph import Graph


def _raw_out(g: Graph) -> dict[str, list[tuple[str, str]]]:
    out: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for e in g.edges:
        out[e.src].append((e.id, e.dst))
    return out


def _raw_omega_src(g: Graph) -> dict[str, list[str]]:
    om: dict[str, list[str]] = {v: [] for v in g.vertices}
    for s, d in g.omega_pairs:
        om[s].append(d)
    return om


def all_hereditary_saturated_sets(g: Graph) -> list[frozenset[str]]:
    """Every hereditary saturated vertex set, by brute force over all subsets."""
    verts = list(g.vertices)
    out = _raw_out(g)
    om = _raw_omega_src(g)
    regular = [v for v in verts if out[v] and not om[v]]
    result = []
    n = len(verts)
    for mask in range(1 << n):
        subset = frozenset(verts[i] for i in range(n) if mask & (1 << i))
        hereditary = all(
            dst in subset for v in subset for _, dst in out[v]
        ) and all(dst in subset for v in subset for dst in om[v])
        if not hereditary:
            continue
        saturated = all(
            v in subset
            for v in regular
            if all(dst in subset for _, dst in out[v])
        )
        if saturated:
            result.append(subset)
    return result


def oracle_cycles(g: Graph) -> set[tuple[str, ...]]:
    """Cycles (distinct-source closed edge walks) up to rotation, brute force.

    Omega pairs contribute a single representative parallel edge.
    """
    edge_list = [(e.id, e.src, e.dst) for e in g.edges]
    for s, d in g.omega_pairs:
        edge_list.append((f"{s}~{d}^1", s, d))
    by_id = {eid: (src, dst) for eid, src, dst in edge_list}
    cycles: set[tuple[str, ...]] = set()
    max_len = len(g.vertices)
    for length in range(1, max_len + 1):
        for seq in product(list(by_id), repeat=length):
            ok = True
            for i in range(length):
                if by_id[seq[i]][1] != by_id[seq[(i + 1) % length]][0]:
                    ok = False
                    break
            if not ok:
                continue
            sources = [by_id[eid][0] for eid in seq]
            if len(set(sources)) != length:
                continue
            canon = min(seq[i:] + seq[:i] for i in range(length))
            cycles.add(canon)
    return cycles


def oracle_cycle_has_exit(g: Graph, cycle: tuple[str, ...]) -> bool:
    out = _raw_out(g)
    om = _raw_omega_src(g)
    by_id = {e.id: (e.src, e.dst) for e in g.edges}
    for s, d in g.omega_pairs:
        for k in (1, 2):
            by_id[f"{s}~{d}^{k}"] = (s, d)
    for eid in cycle:
        src = by_id[eid][0]
        if any(other != eid for other, _ in out[src]):
            return True
        if om[src]:
            return True
    return False


def oracle_is_simple(g: Graph) -> bool:
    """Simplicity by definition: trivial hereditary saturated lattice plus exits."""
    sets = all_hereditary_saturated_sets(g)
    full = frozenset(g.vertices)
    if any(s not in (frozenset(), full) for s in sets):
        return False
    return all(oracle_cycle_has_exit(g, c) for c in oracle_cycles(g))


def oracle_paths(g: Graph, n: int) -> list[tuple[str, tuple[str, ...]]]:
    """(source, edge sequence) of every length-n path, by filtering raw products."""
    if n == 0:
        return [(v, ()) for v in g.vertices]
    by_id = {e.id: (e.src, e.dst) for e in g.edges}
    found = []
    for seq in product(list(by_id), repeat=n):
        if all(by_id[seq[i]][1] == by_id[seq[i + 1]][0] for i in range(n - 1)):
            found.append((by_id[seq[0]][0], seq))
    return sorted(found, key=lambda t: t[1])


def oracle_monomial_product(
    g: Graph, m1: tuple[tuple[str, ...], tuple[str, ...]], m2
) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """(a·b*)(c·d*) by raw prefix comparison on edge-id sequences."""
    (a, b), (c, d) = m1, m2
    if len(b) <= len(c):
        if c[: len(b)] != b:
            return None
        return (a + c[len(b):], d)
    if b[: len(c)] != c:
        return None
    return (a, d + b[len(c):])


def oracle_column_sum_norm(matrix: list[list[Fraction]]) -> Fraction:
    """Exact maximum column sum of absolute values (entries must be rational)."""
    if not matrix or not matrix[0]:
        return Fraction(0)
    cols = len(matrix[0])
    return max(
        sum((abs(row[j]) for row in matrix), Fraction(0)) for j in range(cols)
    )
