"""The non-backtracking edge operator of a multigraph.

A graph with m geometric edges has 2m oriented edges: index i < m keeps
edge i's stored (u, v) orientation, index m + i is its reversal.  The
operator sends an oriented edge e to the sum of the oriented edges e' with
o(e') = t(e) and e' != reversal(e); its 0/1 matrix A has A[e][e'] = 1
exactly for those pairs, rows indexed by the source edge.  On coefficient
column vectors the operator therefore acts as the transpose of A; every
result downstream (normal forms, kernel rank, cokernel class of the
all-ones vector) is the same for A and its transpose, which is checked
rather than assumed.
"""

from __future__ import annotations

from collections import deque

__all__ = [
    "oriented_edges",
    "reversal",
    "edge_matrix",
    "one_minus_edge_matrix",
    "is_irreducible",
    "is_permutation",
    "matrix_to_json",
    "matrix_to_coordinate_text",
    "matrix_from_coordinate_text",
]

import json


def oriented_edges(G):
    """(origin, terminus) per oriented edge index; loops give two distinct
    indices with equal endpoints."""
    fwd = list(G.edges)
    return fwd + [(v, u) for u, v in fwd]


def reversal(i, m):
    """Index of the reversed oriented edge; an involution without fixed points."""
    return i + m if i < m else i - m


def edge_matrix(G):
    """The 2m x 2m non-backtracking adjacency matrix A."""
    m = len(G.edges)
    ends = oriented_edges(G)
    out_at = [[] for _ in range(G.vertex_count)]
    for k, (o, _) in enumerate(ends):
        out_at[o].append(k)
    A = [[0] * (2 * m) for _ in range(2 * m)]
    for k, (_, t) in enumerate(ends):
        rev = reversal(k, m)
        row = A[k]
        for k2 in out_at[t]:
            if k2 != rev:
                row[k2] = 1
    return A


def one_minus_edge_matrix(G):
    """1 - A for the graph's edge matrix."""
    A = edge_matrix(G)
    n = len(A)
    return [[(1 if i == j else 0) - A[i][j] for j in range(n)] for i in range(n)]


def is_irreducible(A):
    """True when the arc digraph of the matrix is strongly connected.

    Uses two reachability sweeps instead of matrix powers; a single node
    counts only if it carries an arc.
    """
    n = len(A)
    if n == 0:
        return False
    if n == 1:
        return A[0][0] != 0

    def reach(forward):
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            i = queue.popleft()
            for j in range(n):
                hit = A[i][j] if forward else A[j][i]
                if hit and not seen[j]:
                    seen[j] = True
                    count += 1
                    queue.append(j)
        return count

    return reach(True) == n and reach(False) == n


def is_permutation(A):
    """True when every row and every column has exactly one 1."""
    n = len(A)
    if any(sum(row) != 1 for row in A):
        return False
    return all(sum(A[i][j] for i in range(n)) == 1 for j in range(n))


def matrix_to_json(A):
    return json.dumps(A)


def matrix_to_coordinate_text(A):
    """Coordinate-list export: dimension line, then 'row col' per unit entry."""
    lines = [str(len(A))]
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            if v:
                lines.append(f"{i} {j}")
    return "\n".join(lines) + "\n"


def matrix_from_coordinate_text(text):
    lines = [line for line in text.splitlines() if line.strip()]
    n = int(lines[0])
    A = [[0] * n for _ in range(n)]
    for line in lines[1:]:
        i, j = map(int, line.split())
        A[i][j] = 1
    return A
