"""Polytopes from graphs, posets, and matroids, with closed-form
nearly-Gorenstein criteria.

Every construction here produces a (0,1)-polytope: edge polytopes
conv{e_i + e_j} of simple graphs, order polytopes of posets, stable set
polytopes, and matroid base polytopes.  For each family a combinatorial
characterisation of nearly-Gorensteinness is implemented alongside the
geometric engine of :mod:`ngpoly.analysis`, and the two routes are run
independently and asserted to agree; a disagreement raises
``AssertionError`` rather than silently preferring one route.

The bridge between the families is the product factorisation of
(0,1)-polytopes: every (0,1)-polytope splits, after permuting
coordinates, into a direct product of indecomposable (0,1)-factors, and
an IDP (0,1)-polytope is nearly Gorenstein exactly when every factor is
Gorenstein and the factor codegrees pairwise differ by at most one.
``product_decompose_01`` computes the finest coordinate partition with
the product property and ``ng_01_check`` applies the criterion, checking
the IDP hypothesis factor by factor (a product is IDP exactly when all
factors are).  Factors that are single points (constant coordinates) are
lattice-trivial and are excluded from the codegree comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .analysis import (
    NGVerdict,
    STATUS_GORENSTEIN,
    STATUS_NEARLY,
    STATUS_NOT_NEARLY,
    codegree,
    int_slice,
    is_gorenstein,
    is_idp,
    is_nearly_gorenstein,
)
from .lattice import affine_lattice_projection
from .polytope import Polytope


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Multigraph:
    """Loop-free multigraph on vertices ``0 .. vertex_count - 1``.

    ``edges`` is an ordered tuple of unordered vertex pairs; parallel
    edges are distinct entries and are told apart by their index.
    """

    vertex_count: int
    edges: tuple

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex count must be nonnegative")
        pairs = []
        for e in self.edges:
            u, v = e
            u, v = int(u), int(v)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {(u, v)} has an endpoint out of range")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            pairs.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(pairs))

    @cached_property
    def adjacency(self) -> tuple:
        """Neighbour sets, ignoring multiplicity."""
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)


@dataclass(frozen=True)
class SimpleGraph(Multigraph):
    """Multigraph with no parallel edges."""

    def __post_init__(self):
        super().__post_init__()
        if len(set(self.edges)) != len(self.edges):
            seen = set()
            for e in self.edges:
                if e in seen:
                    raise ValueError(f"duplicate edge {e}")
                seen.add(e)


@dataclass(frozen=True)
class MatroidBases:
    """Basis family of a matroid on the ground set ``0 .. ground_size - 1``.

    The basis exchange axiom is validated on construction: for all bases
    A, B and every a in A minus B some b in B minus A must give a basis
    (A - a) + b.  A violation reports the witnessing triple.
    """

    ground_size: int
    bases: tuple

    def __post_init__(self):
        fam = []
        for B in self.bases:
            s = frozenset(int(x) for x in B)
            if any(not 0 <= x < self.ground_size for x in s):
                raise ValueError(f"basis {sorted(s)} has an element out of range")
            fam.append(s)
        if not fam:
            raise ValueError("at least one basis is required")
        object.__setattr__(self, "bases", tuple(fam))
        fam_set = set(fam)
        for A in fam:
            for B in fam:
                for a in A - B:
                    if not any(A - {a} | {b} in fam_set for b in B - A):
                        raise ValueError(
                            "basis exchange axiom fails: no exchange for "
                            f"element {a} of {sorted(A)} against {sorted(B)}"
                        )


@dataclass(frozen=True)
class Poset:
    """Finite poset on elements ``0 .. size - 1``.

    ``relations`` lists pairs ``(a, b)`` meaning a precedes b; the strict
    transitive closure is computed on construction and a cycle raises.
    """

    size: int
    relations: tuple

    def __post_init__(self):
        pairs = []
        for r in self.relations:
            a, b = int(r[0]), int(r[1])
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise ValueError(f"relation {(a, b)} has an element out of range")
            if a != b:
                pairs.append((a, b))
        object.__setattr__(self, "relations", tuple(pairs))
        below = [0] * self.size
        for a, b in pairs:
            below[b] |= 1 << a
        # Kleene closure on bitsets
        changed = True
        while changed:
            changed = False
            for b in range(self.size):
                mask = below[b]
                extra = 0
                m = mask
                while m:
                    low = m & -m
                    extra |= below[low.bit_length() - 1]
                    m ^= low
                if extra | mask != mask:
                    below[b] = extra | mask
                    changed = True
        for b in range(self.size):
            if below[b] >> b & 1:
                raise ValueError(f"order relation has a cycle through element {b}")
        object.__setattr__(self, "_below", tuple(below))

    def strictly_below(self, a: int, b: int) -> bool:
        return bool(self._below[b] >> a & 1)

    @cached_property
    def covers(self) -> tuple:
        """Cover pairs ``(a, b)``: a below b with nothing in between."""
        out = []
        for b in range(self.size):
            m = self._below[b]
            while m:
                low = m & -m
                a = low.bit_length() - 1
                m ^= low
                if not self._between(a, b):
                    out.append((a, b))
        return tuple(sorted(out))

    def _between(self, a, b):
        # elements strictly between a and b: above a and below b
        between = 0
        for c in range(self.size):
            if self._below[c] >> a & 1 and self._below[b] >> c & 1:
                between |= 1 << c
        return between


@dataclass(frozen=True)
class ProductDecomposition:
    """Coordinate partition under which the vertex set is a direct product.

    ``blocks`` partitions the ambient coordinates; ``factors[i]`` is the
    hull of the projection onto ``blocks[i]``, and the product of the
    factor vertex sets equals the vertex set of the input exactly.
    """

    blocks: tuple
    factors: tuple


# ---------------------------------------------------------------------------
# result records


@dataclass(frozen=True)
class OddCycleResult:
    """``value`` is the odd cycle condition; on failure
    ``violating_pair`` holds two vertex-disjoint odd cycles with no edge
    between them."""

    value: bool
    violating_pair: tuple | None


@dataclass(frozen=True)
class EdgeNGResult:
    """Engine verdict and formula verdict for an edge polytope; the two
    are asserted equal before this record is built."""

    verdict: NGVerdict
    formula: bool
    gorenstein: bool
    polytope: Polytope


@dataclass(frozen=True)
class FactorReport:
    block: tuple
    is_point: bool
    gorenstein: bool
    codegree: int | None


@dataclass(frozen=True)
class Zero1NGResult:
    """Factorisation verdict for an IDP (0,1)-polytope.  ``engine`` is
    the cone engine's verdict on the input itself when its dimension was
    small enough to run, asserted consistent with ``verdict``."""

    verdict: NGVerdict
    decomposition: ProductDecomposition
    factors: tuple
    engine: NGVerdict | None


@dataclass(frozen=True)
class LevelResult:
    """``value`` is True/False when conclusive and None when a new
    generator appeared at the search horizon.  ``generator_degrees``
    lists the degrees up to the bound at which minimal generators of the
    interior slice family occur."""

    value: bool | None
    generator_degrees: tuple
    codegree: int
    horizon: int


@dataclass(frozen=True)
class BlockReport:
    edge_indices: tuple
    bridge: bool
    gorenstein: bool
    codegree: int | None


@dataclass(frozen=True)
class MatroidNGResult:
    """Per-block verdict for a graphic matroid base polytope.
    ``zero_one`` is the product-factorisation cross-check when the total
    dimension was small enough to run."""

    verdict: NGVerdict
    blocks: tuple
    zero_one: Zero1NGResult | None


# ---------------------------------------------------------------------------
# graph helpers


def graph_components(G: Multigraph) -> tuple:
    """Connected components as sorted vertex tuples (isolated vertices
    form their own components)."""
    seen = [False] * G.vertex_count
    comps = []
    for s in range(G.vertex_count):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _require_connected(G):
    comps = graph_components(G)
    if len(comps) > 1:
        raise ValueError(
            f"graph is disconnected: components {[list(c) for c in comps]}"
        )


def _complete_bipartite_parts(G: SimpleGraph):
    """Part sizes ``(n, m)`` with n <= m when G is complete bipartite on a
    connected vertex set, else None."""
    if G.vertex_count == 0:
        return None
    colour = [-1] * G.vertex_count
    colour[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in G.adjacency[u]:
            if colour[w] == -1:
                colour[w] = 1 - colour[u]
                stack.append(w)
            elif colour[w] == colour[u]:
                return None
    if -1 in colour:
        return None
    a = colour.count(0)
    b = colour.count(1)
    if len(G.edges) != a * b:
        return None
    return (min(a, b), max(a, b))


# ---------------------------------------------------------------------------
# edge polytopes


def edge_polytope(G: SimpleGraph):
    """Convex hull of e_i + e_j over the edges of a connected graph.

    Returns ``(polytope, witness)`` where the polytope lives in the full
    dimension of its affine hull and the witness maps its coordinates
    back to the ambient incidence space.
    """
    if not isinstance(G, SimpleGraph):
        raise TypeError("expected a SimpleGraph")
    if not G.edges:
        raise ValueError("graph has no edges")
    _require_connected(G)
    d = G.vertex_count
    points = sorted(
        {tuple(int(k in e) for k in range(d)) for e in G.edges}
    )
    projected, witness = affine_lattice_projection(points)
    return Polytope.from_points(projected), witness


def odd_cycle_condition(G: SimpleGraph, cap: int = 14) -> OddCycleResult:
    """Whether every two vertex-disjoint odd cycles are joined by an edge.

    Enumerates all simple odd cycles by backtracking (each cycle found
    once, rooted at its smallest vertex) and scans the pairs.  Graphs
    with more than ``cap`` vertices are rejected.
    """
    if not isinstance(G, SimpleGraph):
        raise TypeError("expected a SimpleGraph")
    n = G.vertex_count
    if n > cap:
        raise ValueError(f"graph has {n} vertices; odd cycle scan is capped at {cap}")
    adj = G.adjacency
    cycles = []

    def extend(path, on_path):
        u = path[-1]
        for w in adj[u]:
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                if len(path) % 2 == 1:
                    cycles.append(tuple(path))
            elif w > path[0] and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.discard(w)
                path.pop()

    for s in range(n):
        extend([s], {s})
    sets = [frozenset(c) for c in cycles]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if sets[i] & sets[j]:
                continue
            if not any(adj[u] & sets[j] for u in sets[i]):
                return OddCycleResult(False, (cycles[i], cycles[j]))
    return OddCycleResult(True, None)


def ng_edge_polytope(G: SimpleGraph) -> EdgeNGResult:
    """Nearly-Gorenstein decision for the edge polytope of a connected
    graph satisfying the odd cycle condition.

    Formula route: nearly Gorenstein iff the edge polytope is Gorenstein
    or G is a complete bipartite graph with part sizes n and n+1, n >= 2.
    Engine route: the cone criterion on the polytope.  Both run and must
    agree.
    """
    if not isinstance(G, SimpleGraph):
        raise TypeError("expected a SimpleGraph")
    _require_connected(G)
    occ = odd_cycle_condition(G)
    if not occ.value:
        c1, c2 = occ.violating_pair
        raise ValueError(
            f"odd cycle condition fails: cycles {c1} and {c2} are "
            "vertex-disjoint with no edge between them"
        )
    P, _ = edge_polytope(G)
    gor = is_gorenstein(P)
    parts = _complete_bipartite_parts(G)
    unbalanced = parts is not None and parts[0] >= 2 and parts[1] == parts[0] + 1
    formula = gor.value or unbalanced
    verdict = is_nearly_gorenstein(P)
    engine_ng = verdict.status in (STATUS_GORENSTEIN, STATUS_NEARLY)
    if formula != engine_ng or gor.value != (verdict.status == STATUS_GORENSTEIN):
        raise AssertionError(
            "edge polytope formula disagrees with the engine verdict"
        )
    return EdgeNGResult(verdict, formula, gor.value, P)


# ---------------------------------------------------------------------------
# (0,1)-products


def _check_01(P):
    if not isinstance(P, Polytope):
        raise TypeError("expected a Polytope")
    for v in P.vertices:
        if any(x not in (0, 1) for x in v):
            raise ValueError(f"not a (0,1)-polytope: vertex {v}")


def product_decompose_01(P: Polytope) -> ProductDecomposition:
    """Finest coordinate partition with the direct product property.

    Coordinates i, j start in one block when the vertex projection onto
    {i, j} is not the product of the single projections.  The candidate
    blocks are then verified globally: block by block, the joint
    projection must equal the product of the parts seen so far and the
    new block.  On a violation the minimal sub-collection of earlier
    blocks still witnessing it is merged with the new block and the
    verification restarts; the loop terminates because the block count
    drops, at worst at a single block.
    """
    _check_01(P)
    verts = P.vertices
    d = P.ambient_dim
    if d == 0:
        return ProductDecomposition((), ())

    def proj(coords):
        return {tuple(v[i] for i in coords) for v in verts}

    single = [proj((i,)) for i in range(d)]
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(d):
        for j in range(i + 1, d):
            if len(proj((i, j))) != len(single[i]) * len(single[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    blocks = sorted(tuple(sorted(g)) for g in groups.values())

    while True:
        acc = blocks[0]
        acc_set = proj(acc)
        merged = None
        for j in range(1, len(blocks)):
            joint = tuple(sorted(acc + blocks[j]))
            joint_set = proj(joint)
            if len(joint_set) == len(acc_set) * len(proj(blocks[j])):
                acc = joint
                acc_set = joint_set
                continue
            # shrink the earlier blocks to a minimal violating collection
            culprits = list(range(j))
            for b in list(culprits):
                trial = [x for x in culprits if x != b]
                if not trial:
                    continue
                union = tuple(sorted(c for x in trial for c in blocks[x]))
                if len(proj(tuple(sorted(union + blocks[j])))) != len(
                    proj(union)
                ) * len(proj(blocks[j])):
                    culprits = trial
            merged = sorted(set(culprits) | {j})
            break
        if merged is None:
            break
        fused = tuple(sorted(c for x in merged for c in blocks[x]))
        blocks = sorted(
            [b for x, b in enumerate(blocks) if x not in merged] + [fused]
        )

    factors = tuple(
        Polytope.from_points(sorted(proj(b))) for b in blocks
    )
    total = 1
    for f in factors:
        total *= len(f.vertices)
    assert total == len(verts), "factor product does not match the vertex set"
    return ProductDecomposition(tuple(blocks), factors)


def _full_dimensional(P):
    if P.is_full_dimensional:
        return P
    projected, _ = affine_lattice_projection(P.vertices)
    return Polytope.from_points(projected)


def ng_01_check(P: Polytope, engine_cap: int = 8) -> Zero1NGResult:
    """Nearly-Gorenstein decision for an IDP (0,1)-polytope via product
    factorisation.

    Splits P into indecomposable (0,1)-factors, verifies the IDP
    hypothesis factor by factor (P is IDP exactly when all factors are),
    and decides: nearly Gorenstein iff every non-point factor is
    Gorenstein with factor codegrees pairwise within 1; Gorenstein iff
    additionally all codegrees are equal.  Point factors are
    lattice-trivial and excluded from the comparison.  When dim(P) is at
    most ``engine_cap`` the cone engine runs on P itself and the two
    verdicts are asserted consistent.
    """
    dec = product_decompose_01(P)
    reports = []
    for block, F in zip(dec.blocks, dec.factors):
        if F.dim == 0:
            reports.append(FactorReport(block, True, True, None))
            continue
        Ff = _full_dimensional(F)
        idp = is_idp(Ff)
        if not idp.value:
            raise ValueError(
                f"input is not IDP: the factor on coordinates {block} "
                f"fails at dilation {idp.failing_height}"
            )
        g = is_gorenstein(Ff)
        reports.append(FactorReport(block, False, g.value, g.codegree))
    reports = tuple(reports)

    real = [r for r in reports if not r.is_point]
    if not real:
        status, a = STATUS_GORENSTEIN, 1
    else:
        degs = [r.codegree for r in real]
        a = max(degs)
        if all(r.gorenstein for r in real):
            if a == min(degs):
                status = STATUS_GORENSTEIN
            elif a - min(degs) <= 1:
                status = STATUS_NEARLY
            else:
                status = STATUS_NOT_NEARLY
        else:
            status = STATUS_NOT_NEARLY
    verdict = NGVerdict(status, a, reports, 0)

    engine = None
    if 1 <= P.dim <= engine_cap:
        engine = is_nearly_gorenstein(_full_dimensional(P))
        same_ng = (engine.status in (STATUS_GORENSTEIN, STATUS_NEARLY)) == (
            status in (STATUS_GORENSTEIN, STATUS_NEARLY)
        )
        same_gor = (engine.status == STATUS_GORENSTEIN) == (
            status == STATUS_GORENSTEIN
        )
        if not (same_ng and same_gor and engine.codegree == a):
            raise AssertionError(
                "product factorisation disagrees with the engine verdict"
            )
    return Zero1NGResult(verdict, dec, reports, engine)


def is_level(P: Polytope, degree_bound: int | None = None) -> LevelResult:
    """Whether the interior slice family is generated in a single degree.

    A point z of ``int_slice(P, k)`` is a minimal generator when z - p
    lies in no lower interior slice for any lattice point p of P (the
    IDP hypothesis, which is verified first, makes degree-one steps
    sufficient).  Degrees from the codegree up to ``degree_bound``
    (default dim + 1) are scanned; levelness holds when all generators
    share one degree and the slice one past the bound adds none.  A new
    generator at the horizon leaves the answer open: ``value`` is None.
    """
    idp = is_idp(P)
    if not idp.value:
        raise ValueError("levelness test requires an IDP input")
    a = codegree(P)
    bound = P.dim + 1 if degree_bound is None else degree_bound
    if bound < a:
        raise ValueError(f"degree bound {bound} is below the codegree {a}")
    pts = P.lattice_points()
    prev = frozenset()
    degrees = []
    horizon_generator = False
    for k in range(a, bound + 2):
        cur = int_slice(P, k)
        gens = [
            z
            for z in cur
            if all(
                tuple(x - y for x, y in zip(z, p)) not in prev for p in pts
            )
        ]
        if gens:
            if k <= bound:
                degrees.append(k)
            else:
                horizon_generator = True
        prev = frozenset(cur)
    if len(degrees) > 1:
        value = False
    elif horizon_generator:
        value = None
    else:
        value = True
    return LevelResult(value, tuple(degrees), a, bound)


# ---------------------------------------------------------------------------
# order polytopes and stable set polytopes


def order_polytope(poset: Poset) -> Polytope:
    """Convex hull of the characteristic vectors of the poset ideals."""
    if not isinstance(poset, Poset):
        raise TypeError("expected a Poset")
    n = poset.size
    if n == 0:
        raise ValueError("poset is empty")
    if n > 20:
        raise ValueError(f"poset has {n} elements; ideal enumeration is capped at 20")
    pairs = [(a, b) for b in range(n) for a in range(n) if poset.strictly_below(a, b)]
    points = []
    for m in range(1 << n):
        if all(not m >> b & 1 or m >> a & 1 for a, b in pairs):
            points.append(tuple(m >> i & 1 for i in range(n)))
    return Polytope.from_points(points)


def _poset_components(poset):
    parent = list(range(poset.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in poset.covers:
        parent[find(a)] = find(b)
    groups = {}
    for i in range(poset.size):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(sorted(g)) for g in groups.values())


def _maximal_chain_lengths(poset, comp):
    comp_set = set(comp)
    up = {x: [b for a, b in poset.covers if a == x and b in comp_set] for x in comp}
    down = {x: [a for a, b in poset.covers if b == x and a in comp_set] for x in comp}
    lengths = set()

    def walk(x, steps):
        if not up[x]:
            lengths.add(steps)
            return
        for y in up[x]:
            walk(y, steps + 1)

    for x in comp:
        if not down[x]:
            walk(x, 0)
    return lengths


def hibi_ng_formula(poset: Poset, engine_cap: int = 8) -> bool:
    """Nearly-Gorenstein criterion for an order polytope: every connected
    component of the poset is pure (all maximal chains have equal length)
    and component ranks pairwise differ by at most one.  The verdict is
    replayed through ``ng_01_check`` on the order polytope and asserted
    equal."""
    comps = _poset_components(poset)
    ranks = []
    formula = True
    for comp in comps:
        lengths = _maximal_chain_lengths(poset, comp)
        if len(lengths) != 1:
            formula = False
            break
        ranks.append(lengths.pop())
    if formula and ranks and max(ranks) - min(ranks) > 1:
        formula = False
    res = ng_01_check(order_polytope(poset), engine_cap=engine_cap)
    ng = res.verdict.status in (STATUS_GORENSTEIN, STATUS_NEARLY)
    if formula != ng:
        raise AssertionError(
            "poset purity formula disagrees with the factorisation verdict"
        )
    return formula


def stable_set_polytope(G: SimpleGraph) -> Polytope:
    """Convex hull of the characteristic vectors of the stable sets.

    The nearly-Gorenstein formula for this family assumes a perfect
    graph; perfection is asserted by the caller and not verified here.
    """
    if not isinstance(G, SimpleGraph):
        raise TypeError("expected a SimpleGraph")
    n = G.vertex_count
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > 20:
        raise ValueError(f"graph has {n} vertices; stable set enumeration is capped at 20")
    masks = [0] * n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    points = []
    for m in range(1 << n):
        ok = True
        s = m
        while s:
            low = s & -s
            if masks[low.bit_length() - 1] & m:
                ok = False
                break
            s ^= low
        if ok:
            points.append(tuple(m >> i & 1 for i in range(n)))
    return Polytope.from_points(points)


def _maximal_cliques(adj, comp):
    out = []

    def bron(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            bron(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bron(frozenset(), frozenset(comp), frozenset())
    return out


def stab_ng_formula(G: SimpleGraph, engine_cap: int = 8) -> bool:
    """Nearly-Gorenstein criterion for the stable set polytope of a
    perfect graph: within each connected component all maximal cliques
    share one size, and those sizes pairwise differ by at most one
    across components.  Replayed through ``ng_01_check`` on the polytope
    and asserted equal (perfection itself is the caller's assertion)."""
    comps = graph_components(G)
    sizes = []
    formula = True
    for comp in comps:
        cliques = _maximal_cliques(G.adjacency, comp)
        found = {len(c) for c in cliques}
        if len(found) != 1:
            formula = False
            break
        sizes.append(found.pop())
    if formula and sizes and max(sizes) - min(sizes) > 1:
        formula = False
    res = ng_01_check(stable_set_polytope(G), engine_cap=engine_cap)
    ng = res.verdict.status in (STATUS_GORENSTEIN, STATUS_NEARLY)
    if formula != ng:
        raise AssertionError(
            "clique size formula disagrees with the factorisation verdict"
        )
    return formula


# ---------------------------------------------------------------------------
# graphic matroids


def spanning_trees(G: Multigraph, cap: int = 10**6) -> tuple:
    """All spanning trees as frozensets of edge indices, by
    deletion/contraction (parallel edges count separately)."""
    if not isinstance(G, Multigraph):
        raise TypeError("expected a Multigraph")
    _require_connected(G)
    out = []

    def connected(vs, es):
        if not vs:
            return True
        parent = {v: v for v in vs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in es:
            parent[find(u)] = find(v)
        roots = {find(v) for v in vs}
        return len(roots) == 1

    def rec(vs, es, chosen):
        if len(vs) == 1:
            if len(out) >= cap:
                raise ValueError(f"spanning tree count exceeds the cap {cap}")
            out.append(frozenset(chosen))
            return
        if len(es) < len(vs) - 1 or not connected(vs, es):
            return
        u, v, idx = es[0]
        rest = es[1:]
        # contract: merge v into u, dropping loops
        contracted = [
            (u if a == v else a, u if b == v else b, i)
            for a, b, i in rest
            if not (a in (u, v) and b in (u, v))
        ]
        chosen.append(idx)
        rec(vs - {v}, contracted, chosen)
        chosen.pop()
        # delete
        rec(vs, rest, chosen)

    if G.vertex_count == 0:
        raise ValueError("graph has no vertices")
    rec(
        frozenset(range(G.vertex_count)),
        [(u, v, i) for i, (u, v) in enumerate(G.edges)],
        [],
    )
    return tuple(sorted(out, key=sorted))


def base_polytope(X):
    """Base polytope of a matroid, from a validated basis family or from
    the graphic matroid of a connected multigraph.

    Returns ``(polytope, witness)``: the convex hull of the basis
    incidence vectors, projected to the full dimension of its affine
    hull, with the witness mapping back to the incidence space.
    """
    if isinstance(X, Multigraph):
        trees = spanning_trees(X)
        m = len(X.edges)
        vectors = sorted(tuple(int(i in T) for i in range(m)) for T in trees)
    elif isinstance(X, MatroidBases):
        vectors = sorted(
            {tuple(int(i in B) for i in range(X.ground_size)) for B in X.bases}
        )
    else:
        raise TypeError("expected a Multigraph or MatroidBases")
    projected, witness = affine_lattice_projection(vectors)
    return Polytope.from_points(projected), witness


def base_polytope_axiom_check(P: Polytope) -> bool:
    """Whether a (0,1)-polytope is a matroid base polytope: all vertex
    coordinate sums equal and every edge in a direction e_i - e_j."""
    _check_01(P)
    sums = {sum(v) for v in P.vertices}
    if len(sums) > 1:
        return False
    for p, q in P.edges():
        diff = [x - y for x, y in zip(p, q)]
        nonzero = sorted(x for x in diff if x)
        if nonzero != [-1, 1]:
            return False
    return True


def _block_partition(G: Multigraph):
    """Blocks (2-connected components) with their original edge indices,
    vertices relabelled to 0..k-1 in ascending original order."""
    n = G.vertex_count
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(G.edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * n
    low = [0] * n
    estack = []
    raw_blocks = []
    timer = [0]

    def dfs(root):
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer[0]
        timer[0] += 1
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == pe:
                    continue
                if disc[w] == -1:
                    estack.append(ei)
                    disc[w] = low[w] = timer[0]
                    timer[0] += 1
                    stack.append((w, ei, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    estack.append(ei)
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if low[u] >= disc[p]:
                    block = []
                    while True:
                        ei = estack.pop()
                        block.append(ei)
                        if ei == pe:
                            break
                    raw_blocks.append(sorted(block))

    for r in range(n):
        if disc[r] == -1 and adj[r]:
            dfs(r)
    parts = []
    for idxs in sorted(raw_blocks):
        vs = sorted({x for i in idxs for x in G.edges[i]})
        relabel = {v: k for k, v in enumerate(vs)}
        edges = tuple((relabel[G.edges[i][0]], relabel[G.edges[i][1]]) for i in idxs)
        parts.append((Multigraph(len(vs), edges), tuple(idxs)))
    return parts


def blocks(G: Multigraph) -> list:
    """Block decomposition: the 2-connected components, each returned as
    a multigraph on its own compactly relabelled vertex set."""
    if not isinstance(G, Multigraph):
        raise TypeError("expected a Multigraph")
    return [g for g, _ in _block_partition(G)]


def ng_graphic_matroid(G: Multigraph, engine_cap: int = 8) -> MatroidNGResult:
    """Nearly-Gorenstein decision for the base polytope of the graphic
    matroid of G, block by block.

    The base polytope factors into the base polytopes of the blocks, and
    base polytopes are always IDP, so the product criterion applies with
    no hypothesis left to check: nearly Gorenstein iff every block's
    base polytope is Gorenstein (verified with the engine's
    ``is_gorenstein``) with block codegrees pairwise within 1.  Bridges
    contribute point factors and are excluded from the comparison.  When
    the total dimension is at most ``engine_cap`` the verdict is
    replayed through ``ng_01_check`` on the hull of all basis incidence
    vectors and asserted consistent.
    """
    if not isinstance(G, Multigraph):
        raise TypeError("expected a Multigraph")
    if not G.edges:
        raise ValueError("graph has no edges")
    parts = _block_partition(G)
    reports = []
    for bg, idxs in parts:
        if len(bg.edges) == 1:
            reports.append(BlockReport(idxs, True, True, None))
            continue
        B, _ = base_polytope(bg)
        g = is_gorenstein(B)
        reports.append(BlockReport(idxs, False, g.value, g.codegree))
    reports = tuple(reports)

    real = [r for r in reports if not r.bridge]
    if not real:
        status, a = STATUS_GORENSTEIN, 1
    else:
        degs = [r.codegree for r in real]
        a = max(degs)
        if all(r.gorenstein for r in real):
            if a == min(degs):
                status = STATUS_GORENSTEIN
            elif a - min(degs) <= 1:
                status = STATUS_NEARLY
            else:
                status = STATUS_NOT_NEARLY
        else:
            status = STATUS_NOT_NEARLY
    verdict = NGVerdict(status, a, reports, 0)

    cross = None
    total_dim = len(G.edges) - len(parts)
    if total_dim <= engine_cap:
        comps = graph_components(G)
        if len(comps) == 1:
            trees = spanning_trees(G)
        else:
            # maximal forests: one spanning tree from every block
            trees = [frozenset()]
            for bg, idxs in parts:
                sub = spanning_trees(bg)
                trees = [
                    t | {idxs[i] for i in s}
                    for t in trees
                    for s in sub
                ]
        m = len(G.edges)
        raw = Polytope.from_points(
            sorted(tuple(int(i in T) for i in range(m)) for T in trees)
        )
        cross = ng_01_check(raw, engine_cap=engine_cap)
        same_ng = (
            cross.verdict.status in (STATUS_GORENSTEIN, STATUS_NEARLY)
        ) == (status in (STATUS_GORENSTEIN, STATUS_NEARLY))
        same_gor = (cross.verdict.status == STATUS_GORENSTEIN) == (
            status == STATUS_GORENSTEIN
        )
        if not (same_ng and same_gor and cross.verdict.codegree == a):
            raise AssertionError(
                "block formula disagrees with the factorisation verdict"
            )
    return MatroidNGResult(verdict, reports, cross)
