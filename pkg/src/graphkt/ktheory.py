"""K-theory of the edge operator's Cuntz-Krieger algebra, from graph data.

Both invariant groups are read off 1 - A with exact integer arithmetic:
the cokernel of 1 - A^t gives the degree-zero group, the kernel of the
operator (the right kernel of 1 - A^t, since the operator acts on column
vectors as the transpose of A) gives the degree-one group.  The order of
the unit class is the least positive lam with lam * (1, ..., 1) in the
image of 1 - A.  Identities that must hold between independently computed
quantities are re-verified at runtime and raise TheoremViolation on
mismatch; that always means a bug, never bad input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .edge_operator import (
    edge_matrix,
    is_irreducible,
    is_permutation,
    one_minus_edge_matrix,
    oriented_edges,
)
from .errors import DomainError, TheoremViolation
from .exact_linalg import (
    AbelianGroup,
    cokernel,
    hermite_normal_form,
    kernel_basis,
    mat_vec,
    solve_min_scalar,
    transpose,
)
from .multigraph import betti_number, boundary, contract_edge, cycle_basis

__all__ = [
    "k0",
    "k1",
    "phi",
    "phi_image_equals_kernel",
    "g1_kernel_generators",
    "ReductionTranscript",
    "contraction_reduce",
    "unit_order",
    "unit_class_vector",
    "ClassificationVerdict",
    "classify_stable",
    "classify_strict",
    "boundary_algebra_compatible",
    "KTheoryReport",
    "ktheory_report",
    "report_to_json_dict",
]


def _require_genus(G, minimum, message=None):
    g = betti_number(G)
    if g < minimum:
        raise DomainError(message or f"first Betti number g >= {minimum} required")
    return g


def k0(G):
    """Cokernel of 1 - A^t on Z^(2m), cross-computed from 1 - A."""
    _require_genus(G, 1)
    M = one_minus_edge_matrix(G)
    group = cokernel(transpose(M))
    if group != cokernel(M):
        raise TheoremViolation("cokernel must not depend on the transpose convention")
    return group


def k1(G):
    """(rank, basis) of the kernel lattice of the operator 1 - T.

    The basis rows are in Hermite normal form; the rank is the first Betti
    number for g >= 2 and 2 for g = 1.
    """
    _require_genus(G, 1)
    basis = kernel_basis(transpose(one_minus_edge_matrix(G)))
    return len(basis), basis


def phi(G, cycle):
    """Lift a cycle vector into the kernel of 1 - T: coefficient k on
    geometric edge i becomes +k on oriented index i and -k on its reversal."""
    m = len(G.edges)
    if len(cycle) != m:
        raise DomainError("cycle vector length must equal the edge count")
    if any(boundary(G, cycle)):
        raise DomainError("not a cycle: boundary image is nonzero")
    out = [0] * (2 * m)
    for i, k in enumerate(cycle):
        out[i] = k
        out[m + i] = -k
    if any(mat_vec(transpose(one_minus_edge_matrix(G)), out)):
        raise TheoremViolation("cycle image must be annihilated by 1 - T")
    return out


def phi_image_equals_kernel(G):
    """Whether the lifted cycle lattice equals ker(1 - T), compared through
    Hermite normal forms.  Expected true for every connected g >= 2 graph."""
    _require_genus(G, 2, "the kernel identification is proven only for g >= 2")
    rows = [phi(G, c) for c in cycle_basis(G)]
    H, _ = hermite_normal_form(rows)
    image = [row for row in H if any(row)]
    kernel = kernel_basis(transpose(one_minus_edge_matrix(G)))
    return image == kernel


def g1_kernel_generators(G):
    """Two independent kernel elements for a g = 1 graph: the lifted
    fundamental cycle, and the cycle as oriented edges plus every non-cycle
    edge oriented away from the cycle."""
    g = betti_number(G)
    if g != 1:
        raise DomainError("g = 1 required")
    c = cycle_basis(G)[0]
    m = len(G.edges)
    oriented = [0] * (2 * m)
    for i, k in enumerate(c):
        if k == 1:
            oriented[i] = 1
        elif k == -1:
            oriented[m + i] = 1
        elif k:
            raise TheoremViolation("fundamental cycle with non-unit coefficient")
    lifted = phi(G, c)

    cycle_vertices = set()
    for i, (u, v) in enumerate(G.edges):
        if c[i]:
            cycle_vertices.update((u, v))
    dist = [None] * G.vertex_count
    queue = deque()
    for v in cycle_vertices:
        dist[v] = 0
        queue.append(v)
    while queue:
        u = queue.popleft()
        for i, (a, b) in enumerate(G.edges):
            for x, y in ((a, b), (b, a)):
                if x == u and dist[y] is None:
                    dist[y] = dist[u] + 1
                    queue.append(y)

    second = list(oriented)
    for i, (a, b) in enumerate(G.edges):
        if c[i]:
            continue
        if a == b or dist[a] == dist[b]:
            raise TheoremViolation("found a second independent cycle in a g = 1 graph")
        if dist[a] < dist[b]:
            second[i] += 1
        else:
            second[m + i] += 1

    Mt = transpose(one_minus_edge_matrix(G))
    if any(mat_vec(Mt, second)):
        raise TheoremViolation("outward-oriented generator must be annihilated by 1 - T")
    H, _ = hermite_normal_form([lifted, second])
    if sum(1 for row in H if any(row)) != 2:
        raise TheoremViolation("the two kernel generators must be independent")
    return lifted, second


@dataclass(frozen=True)
class ReductionTranscript:
    """Audit record of the contraction-driven reduction of 1 - A.

    Replaying ``operations`` on 1 - A reproduces ``final_diagonal``;
    replaying only the row operations on the all-ones vector reproduces
    ``ones_image``, whose last ``genus`` entries are zero and whose entry
    just before them equals genus * vertex_count.
    """

    size: int
    vertex_count: int
    genus: int
    operations: tuple
    ones_image: tuple
    final_diagonal: tuple
    contraction_order: tuple


def contraction_reduce(G, rng=None):
    """Diagonalize 1 - A by the contraction schedule, recording every
    elementary operation and the running image of the all-ones vector.

    Each round picks a non-loop edge (lowest index, or drawn from ``rng``),
    adds its two oriented rows to the rows of the edges flowing into their
    respective origins (clearing the two columns), clears the two rows with
    column additions, and continues on the contracted graph; only loops on
    a single vertex then remain and that block is reduced directly.  A final
    permutation sorts the diagonal: units first, then the single entry of
    magnitude g - 1, then the g zero rows.  The resulting diagonal is
    independent of the contraction order.
    """
    n_orig = G.vertex_count
    g = _require_genus(G, 1)
    m = len(G.edges)
    two_m = 2 * m
    M = one_minus_edge_matrix(G)
    b = [1] * two_m
    ops = []

    def row_add(dst, src, k=1):
        M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]
        b[dst] += k * b[src]
        ops.append(("row_add", dst, src, k))

    def col_add(dst, src, k=1):
        for row in M:
            row[dst] += k * row[src]
        ops.append(("col_add", dst, src, k))

    def row_swap(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            b[i], b[j] = b[j], b[i]
            ops.append(("row_swap", i, j))

    def col_swap(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            ops.append(("col_swap", i, j))

    H = G
    orig = list(range(m))  # H edge index -> original edge index
    sizes = [1] * n_orig  # H vertex -> number of original vertices merged in
    frozen = []
    contraction_order = []

    while True:
        nonloops = [j for j, (u, v) in enumerate(H.edges) if u != v]
        if not nonloops:
            break
        j = nonloops[0] if rng is None else rng.choice(nonloops)
        m_h = len(H.edges)
        ends = oriented_edges(H)

        def to_orig(k):
            return orig[k] if k < m_h else orig[k - m_h] + m

        gamma, gamma_bar = to_orig(j), to_orig(j + m_h)
        u, v = H.edges[j]
        for k, (_, t) in enumerate(ends):
            if k == j or k == j + m_h:
                continue
            if t == u:
                row_add(to_orig(k), gamma)
            elif t == v:
                row_add(to_orig(k), gamma_bar)
        for source in (gamma, gamma_bar):
            for f in range(two_m):
                if f != source and M[source][f]:
                    col_add(f, source, -M[source][f])
        frozen.extend((gamma, gamma_bar))
        contraction_order.append(gamma)

        lo, hi = (u, v) if u < v else (v, u)
        sizes[lo] += sizes[hi]
        del sizes[hi]
        H = contract_edge(H, j)
        orig.pop(j)
        _assert_contraction_state(M, b, H, orig, m, frozen, sizes)

    # single-vertex block: surviving loops, both orientations
    loops = orig
    loops_bar = [x + m for x in loops]
    for i in range(g):
        row_add(loops_bar[i], loops[i], -1)
    for i in range(g):
        col_add(loops_bar[i], loops[i], -1)
    for j in range(1, g):
        col_add(loops[j], loops[0], -1)
    for i in range(g - 1):
        row_add(loops[g - 1], loops[i], 1)
    for i in range(1, g - 1):
        row_add(loops[0], loops[i], 1)
    if g >= 3:
        col_add(loops[0], loops[g - 1], -(g - 2))
    for i in range(1, g - 1):
        col_add(loops[0], loops[i], 1)

    # sort: units, then the generator of the torsion part, then zeros
    row_order = sorted(frozen + loops[: g - 1]) + [loops[g - 1]] + sorted(loops_bar)
    col_order = list(row_order)
    if g >= 2:
        swap = {loops[0]: loops[g - 1], loops[g - 1]: loops[0]}
        col_order = [swap.get(r, r) for r in row_order]

    current = list(range(two_m))
    for p, want in enumerate(row_order):
        q = current.index(want)
        if q != p:
            row_swap(p, q)
            current[p], current[q] = current[q], current[p]
    current = list(range(two_m))
    for p, want in enumerate(col_order):
        q = current.index(want)
        if q != p:
            col_swap(p, q)
            current[p], current[q] = current[q], current[p]

    diag = [M[i][i] for i in range(two_m)]
    assert all(
        M[i][j] == 0 for i in range(two_m) for j in range(two_m) if i != j
    ), "reduction must end diagonal"
    assert all(abs(d) == 1 for d in diag[: two_m - g - 1])
    assert abs(diag[two_m - g - 1]) == g - 1
    assert all(d == 0 for d in diag[two_m - g :])
    assert b[two_m - g - 1] == g * n_orig
    assert all(b[i] == 0 for i in range(two_m - g, two_m))
    return ReductionTranscript(
        size=two_m,
        vertex_count=n_orig,
        genus=g,
        operations=tuple(ops),
        ones_image=tuple(b),
        final_diagonal=tuple(diag),
        contraction_order=tuple(contraction_order),
    )


def _assert_contraction_state(M, b, H, orig, m, frozen, sizes):
    # Frozen rows and columns must be unit vectors; the active submatrix
    # must equal 1 - A of the contracted graph; the running ones-image on
    # an active row counts the original vertices merged into its terminus.
    m_h = len(H.edges)
    ends = oriented_edges(H)
    active = [orig[k] if k < m_h else orig[k - m_h] + m for k in range(2 * m_h)]
    A_h = edge_matrix(H)
    for fr in frozen:
        assert all(M[fr][c] == (1 if c == fr else 0) for c in range(len(M)))
        assert all(M[r][fr] == (1 if r == fr else 0) for r in range(len(M)))
    for k1_, r in enumerate(active):
        for k2_, c in enumerate(active):
            expected = (1 if k1_ == k2_ else 0) - A_h[k1_][k2_]
            assert M[r][c] == expected
    for k, r in enumerate(active):
        assert b[r] == sizes[ends[k][1]]


def _simplicity_flags(G):
    A = edge_matrix(G)
    irreducible = is_irreducible(A)
    permutation = is_permutation(A)
    return irreducible, permutation, irreducible and not permutation


def _unit_position(G):
    """(order, witness) of the unit class, or None when the order is infinite.

    The solver result is cross-checked against the closed form
    (g - 1) / gcd(g - 1, |V|) for g >= 2; for g = 1 no positive multiple of
    the all-ones vector can lie in the image.
    """
    g = _require_genus(G, 1)
    M = one_minus_edge_matrix(G)
    result = solve_min_scalar(M, [1] * len(M))
    if g >= 2:
        expected = (g - 1) // gcd(g - 1, G.vertex_count)
        if result is None or result[0] != expected:
            found = None if result is None else result[0]
            raise TheoremViolation(
                f"unit order solver found {found}, closed form gives {expected}"
            )
    elif result is not None:
        raise TheoremViolation("the unit class must have infinite order when g = 1")
    return result


def unit_order(G):
    """Order of the unit class: least lam > 0 with lam * (1, ..., 1) in the
    image of 1 - A, or None (infinite order, g = 1)."""
    result = _unit_position(G)
    return None if result is None else result[0]


def unit_class_vector(G):
    """Image of the algebra unit in Z^(2m): the all-ones vector."""
    return [1] * (2 * len(G.edges))


EQUIVALENT = "EQUIVALENT"
NOT_EQUIVALENT = "NOT_EQUIVALENT"
ISOMORPHIC = "ISOMORPHIC"
NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class ClassificationVerdict:
    mode: str
    verdict: str
    g: tuple
    k0: tuple
    simple_claim_applicable: tuple
    unit_orders: tuple | None = None
    reason: str | None = None

    def to_json_dict(self):
        out = {
            "mode": self.mode,
            "verdict": self.verdict,
            "g": list(self.g),
            "k0": [
                {"rank": grp.free_rank, "torsion": list(grp.torsion)}
                for grp in self.k0
            ],
            "simple_claim_applicable": list(self.simple_claim_applicable),
        }
        if self.unit_orders is not None:
            out["unit_orders"] = list(self.unit_orders)
        if self.reason is not None:
            out["reason"] = self.reason
        return out


_CLASSIFY_MESSAGE = "classification proven only for g >= 2"


def classify_stable(G1, G2):
    """Stable-isomorphism verdict: equivalent exactly when the Betti
    numbers agree.  The attached flags record whether the simplicity
    hypothesis behind the classification holds for each input."""
    g1 = _require_genus(G1, 2, _CLASSIFY_MESSAGE)
    g2 = _require_genus(G2, 2, _CLASSIFY_MESSAGE)
    groups = (k0(G1), k0(G2))
    if (g1 == g2) != (groups[0] == groups[1]):
        raise TheoremViolation("degree-zero groups must match exactly when g does")
    flags = (_simplicity_flags(G1)[2], _simplicity_flags(G2)[2])
    reason = None
    if not all(flags):
        reason = "simplicity hypothesis fails on an input; verdict carries that caveat"
    return ClassificationVerdict(
        mode="stable",
        verdict=EQUIVALENT if g1 == g2 else NOT_EQUIVALENT,
        g=(g1, g2),
        k0=groups,
        simple_claim_applicable=flags,
        reason=reason,
    )


def classify_strict(G1, G2):
    """Strict-isomorphism verdict: isomorphic exactly when the Betti
    numbers and the unit-class orders agree.  If the simplicity hypothesis
    fails on either side the verdict is INDETERMINATE."""
    g1 = _require_genus(G1, 2, _CLASSIFY_MESSAGE)
    g2 = _require_genus(G2, 2, _CLASSIFY_MESSAGE)
    groups = (k0(G1), k0(G2))
    flags = (_simplicity_flags(G1)[2], _simplicity_flags(G2)[2])
    orders = (unit_order(G1), unit_order(G2))
    if not all(flags):
        return ClassificationVerdict(
            mode="strict",
            verdict=INDETERMINATE,
            g=(g1, g2),
            k0=groups,
            simple_claim_applicable=flags,
            unit_orders=orders,
            reason="simplicity hypothesis fails, so the unit-position criterion does not apply",
        )
    isomorphic = g1 == g2 and orders[0] == orders[1]
    return ClassificationVerdict(
        mode="strict",
        verdict=ISOMORPHIC if isomorphic else NOT_ISOMORPHIC,
        g=(g1, g2),
        k0=groups,
        simple_claim_applicable=flags,
        unit_orders=orders,
    )


def boundary_algebra_compatible(G):
    """Whether the algebra is strictly isomorphic to the one-vertex model of
    the same Betti number: gcd(g - 1, |V|) = 1, equivalently unit order g - 1."""
    g = _require_genus(G, 2)
    compatible = gcd(g - 1, G.vertex_count) == 1
    if compatible != (unit_order(G) == g - 1):
        raise TheoremViolation("coprimality criterion must match the unit order")
    return compatible


@dataclass(frozen=True)
class KTheoryReport:
    g: int
    vertex_count: int
    edge_count: int
    k0: AbelianGroup
    k1_rank: int
    k1_basis: tuple
    unit_order: int | None
    unit_witness: tuple | None
    irreducible: bool
    permutation: bool
    simple_claim_applicable: bool


def ktheory_report(G):
    """Full invariant report with all cross-checks applied."""
    g = _require_genus(G, 1)
    group = k0(G)
    rank, basis = k1(G)
    expected_free = g if g >= 2 else 2
    expected_torsion = (g - 1,) if g >= 3 else ()
    if (group.free_rank, group.torsion) != (expected_free, expected_torsion):
        raise TheoremViolation(f"unexpected degree-zero group {group} for g = {g}")
    if rank != expected_free:
        raise TheoremViolation(f"unexpected kernel rank {rank} for g = {g}")
    position = _unit_position(G)
    order = None if position is None else position[0]
    witness = None if position is None else tuple(position[1])
    if order is not None and (g - 1) % order:
        raise TheoremViolation("the unit order must divide g - 1")
    irreducible, permutation, simple = _simplicity_flags(G)
    return KTheoryReport(
        g=g,
        vertex_count=G.vertex_count,
        edge_count=len(G.edges),
        k0=group,
        k1_rank=rank,
        k1_basis=tuple(tuple(row) for row in basis),
        unit_order=order,
        unit_witness=witness,
        irreducible=irreducible,
        permutation=permutation,
        simple_claim_applicable=simple,
    )


def report_to_json_dict(report):
    return {
        "g": report.g,
        "vertices": report.vertex_count,
        "edges": report.edge_count,
        "k0": {"rank": report.k0.free_rank, "torsion": list(report.k0.torsion)},
        "k1_rank": report.k1_rank,
        "k1_basis": [list(row) for row in report.k1_basis],
        "unit_order": report.unit_order,
        "witnesses": {
            "unit_preimage": None
            if report.unit_witness is None
            else list(report.unit_witness)
        },
        "simplicity": {
            "irreducible": report.irreducible,
            "permutation": report.permutation,
            "simple_claim_applicable": report.simple_claim_applicable,
        },
    }
