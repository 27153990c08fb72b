import pytest

from ngpoly.lattice import matrix_det
from ngpoly.polytope import Polytope
from ngpoly.analysis import (
    codegree,
    is_gorenstein,
    STATUS_GORENSTEIN,
    STATUS_NEARLY,
    STATUS_NOT_NEARLY,
)
from ngpoly.combinatorics import (
    MatroidBases,
    Multigraph,
    Poset,
    SimpleGraph,
    base_polytope,
    base_polytope_axiom_check,
    blocks,
    edge_polytope,
    graph_components,
    hibi_ng_formula,
    is_level,
    ng_01_check,
    ng_edge_polytope,
    ng_graphic_matroid,
    odd_cycle_condition,
    order_polytope,
    product_decompose_01,
    spanning_trees,
    stab_ng_formula,
    stable_set_polytope,
)
from ngpoly.combinatorics import _block_partition


def complete_graph(n):
    return SimpleGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a, b):
    return SimpleGraph(
        a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n):
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


K3 = complete_graph(3)
K4 = complete_graph(4)
K23 = complete_bipartite(2, 3)
K33 = complete_bipartite(3, 3)
K24 = complete_bipartite(2, 4)
TWO_TRIANGLES = SimpleGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
# two vertex-disjoint triangles joined only through a middle vertex
PATH_JOINED = SimpleGraph(
    7, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)))
K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# K_4 on {0,1,2,3} and a cycle attached at vertex 3
K4_WEDGE_C3 = Multigraph(6, K4_EDGES + ((3, 4), (4, 5), (3, 5)))
K4_WEDGE_C4 = Multigraph(7, K4_EDGES + ((3, 4), (4, 5), (5, 6), (3, 6)))

UNIT_SQUARE = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
UNIT_CUBE = Polytope.from_points(
    [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
XOR = Polytope.from_points([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
SEG_X_TRIANGLE = Polytope.from_points(
    [(x, a, b) for x in (0, 1) for (a, b) in ((0, 0), (1, 0), (0, 1))])
SEG_X_TETRA = Polytope.from_points(
    [(x,) + p for x in (0, 1)
     for p in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))])
STOP_SIGN = Polytope.from_points(
    [(1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1)])
# random scan fixture: interior slice generators in two distinct degrees
NON_LEVEL = Polytope.from_points(
    [(0, 0, 0), (0, 2, 1), (0, 2, 2), (1, 0, 2), (2, 0, 1), (2, 2, 0)])


def incidence_hull(graph):
    m = len(graph.edges)
    trees = spanning_trees(graph)
    return Polytope.from_points(
        sorted(tuple(int(i in T) for i in range(m)) for T in trees))


def rho_hull(graph):
    d = graph.vertex_count
    return Polytope.from_points(
        sorted({tuple(int(k in e) for k in range(d)) for e in graph.edges}))


def kirchhoff_count(graph):
    n = graph.vertex_count
    L = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return int(matrix_det([row[1:] for row in L[1:]]))


def is_spanning_tree(graph, tree):
    if len(tree) != graph.vertex_count - 1:
        return False
    parent = list(range(graph.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in tree:
        u, v = graph.edges[i]
        if find(u) == find(v):
            return False
        parent[find(u)] = find(v)
    return len({find(v) for v in range(graph.vertex_count)}) == 1


class TestGraphTypes:
    def test_loop_rejected(self):
        with pytest.raises(ValueError, match="loop"):
            Multigraph(3, ((0, 0),))

    def test_endpoint_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Multigraph(2, ((0, 2),))

    def test_parallel_edges_allowed(self):
        g = Multigraph(2, ((0, 1), (1, 0)))
        assert g.edges == ((0, 1), (0, 1))

    def test_simple_graph_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            SimpleGraph(2, ((0, 1), (1, 0)))

    def test_adjacency(self):
        assert K3.adjacency == (
            frozenset({1, 2}), frozenset({0, 2}), frozenset({0, 1}))

    def test_components(self):
        assert graph_components(TWO_TRIANGLES) == ((0, 1, 2), (3, 4, 5))
        assert graph_components(Multigraph(3, ((0, 1),))) == ((0, 1), (2,))

    def test_matroid_bases_validated(self):
        m = MatroidBases(3, ({0, 1}, {0, 2}, {1, 2}))
        assert len(m.bases) == 3

    def test_matroid_exchange_violation(self):
        with pytest.raises(ValueError, match="exchange axiom fails"):
            MatroidBases(3, ({0}, {1, 2}))

    def test_matroid_needs_a_basis(self):
        with pytest.raises(ValueError, match="at least one basis"):
            MatroidBases(3, ())

    def test_poset_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            Poset(3, ((0, 1), (1, 2), (2, 0)))

    def test_poset_closure(self):
        p = Poset(3, ((0, 1), (1, 2)))
        assert p.strictly_below(0, 2)
        assert not p.strictly_below(2, 0)
        assert p.covers == ((0, 1), (1, 2))


class TestEdgePolytope:
    def test_triangle_is_unimodular_simplex(self):
        P, _ = edge_polytope(K3)
        assert P.dim == 2
        assert len(P.vertices) == 3
        assert len(P.lattice_points()) == 3

    def test_k23_dimension_and_vertices(self):
        P, _ = edge_polytope(K23)
        assert P.dim == 3
        assert len(P.vertices) == 6

    def test_star_is_simplex(self):
        star = SimpleGraph(4, ((0, 1), (0, 2), (0, 3)))
        P, _ = edge_polytope(star)
        assert P.dim == 2
        assert len(P.vertices) == 3

    def test_single_edge_projects_to_point(self):
        P, witness = edge_polytope(SimpleGraph(2, ((0, 1),)))
        assert P.dim == 0
        assert witness.lift(()) == (1, 1)

    def test_witness_lifts_back_to_incidence_vectors(self):
        P, witness = edge_polytope(K23)
        rho = {tuple(int(k in e) for k in range(5)) for e in K23.edges}
        assert {witness.lift(v) for v in P.vertices} == rho

    def test_disconnected_names_components(self):
        with pytest.raises(ValueError, match=r"\[0, 1, 2\].*\[3, 4, 5\]"):
            edge_polytope(TWO_TRIANGLES)

    def test_no_edges_rejected(self):
        with pytest.raises(ValueError, match="no edges"):
            edge_polytope(SimpleGraph(1, ()))


class TestOddCycleCondition:
    def test_bipartite_has_no_odd_cycles(self):
        r = odd_cycle_condition(K33)
        assert r.value and r.violating_pair is None

    def test_two_disjoint_triangles_fail(self):
        r = odd_cycle_condition(TWO_TRIANGLES)
        assert not r.value
        c1, c2 = r.violating_pair
        assert len(c1) % 2 == 1 and len(c2) % 2 == 1
        assert not set(c1) & set(c2)
        assert not any(
            (min(u, v), max(u, v)) in TWO_TRIANGLES.edges
            for u in c1 for v in c2)

    def test_bridged_triangles_pass(self):
        g = SimpleGraph(6, TWO_TRIANGLES.edges + ((2, 3),))
        assert odd_cycle_condition(g).value

    def test_shared_vertex_triangles_pass(self):
        g = SimpleGraph(5, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)))
        assert odd_cycle_condition(g).value

    def test_complete_graph_passes(self):
        assert odd_cycle_condition(complete_graph(5)).value

    def test_path_joined_triangles_fail(self):
        assert not odd_cycle_condition(PATH_JOINED).value

    def test_vertex_cap(self):
        with pytest.raises(ValueError, match="capped at 14"):
            odd_cycle_condition(SimpleGraph(15, ()))
        assert odd_cycle_condition(SimpleGraph(15, ()), cap=15).value


class TestNGEdgePolytope:
    def test_k23_nearly_but_not_gorenstein(self):
        r = ng_edge_polytope(K23)
        assert r.verdict.status == STATUS_NEARLY
        assert r.formula is True
        assert r.gorenstein is False

    def test_k33_gorenstein(self):
        r = ng_edge_polytope(K33)
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.gorenstein is True

    def test_k24_not_nearly(self):
        r = ng_edge_polytope(K24)
        assert r.verdict.status == STATUS_NOT_NEARLY
        assert r.formula is False

    def test_k34_nearly(self):
        r = ng_edge_polytope(complete_bipartite(3, 4))
        assert r.verdict.status == STATUS_NEARLY

    def test_triangle_gorenstein(self):
        r = ng_edge_polytope(K3)
        assert r.verdict.status == STATUS_GORENSTEIN

    def test_k4_gorenstein(self):
        r = ng_edge_polytope(K4)
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 2

    def test_small_star_gorenstein_despite_part_size_one(self):
        # K_{1,2} has part sizes (1, 2); the n >= 2 clause does not apply
        # but the segment is Gorenstein
        r = ng_edge_polytope(SimpleGraph(3, ((0, 1), (0, 2))))
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.formula is True

    def test_odd_cycle_violation_rejected(self):
        with pytest.raises(ValueError, match="odd cycle condition fails"):
            ng_edge_polytope(PATH_JOINED)

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="disconnected"):
            ng_edge_polytope(TWO_TRIANGLES)


class TestProductDecompose01:
    def test_unit_square_splits(self):
        d = product_decompose_01(UNIT_SQUARE)
        assert d.blocks == ((0,), (1,))
        assert all(len(f.vertices) == 2 for f in d.factors)

    def test_cube_splits_into_three(self):
        assert product_decompose_01(UNIT_CUBE).blocks == ((0,), (1,), (2,))

    def test_xor_set_is_indecomposable(self):
        # pairwise projections all factor; only the global check catches it
        d = product_decompose_01(XOR)
        assert d.blocks == ((0, 1, 2),)
        assert len(d.factors[0].vertices) == 4

    def test_xor_times_segment(self):
        P = Polytope.from_points(
            [p + (t,) for p in XOR.vertices for t in (0, 1)])
        assert product_decompose_01(P).blocks == ((0, 1, 2), (3,))

    def test_k23_raw_hull_splits_into_simplices(self):
        d = product_decompose_01(rho_hull(K23))
        assert d.blocks == ((0, 1), (2, 3, 4))
        assert sorted(len(f.vertices) for f in d.factors) == [2, 3]

    def test_constant_coordinate_becomes_point_factor(self):
        P = Polytope.from_points([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        d = product_decompose_01(P)
        assert d.blocks == ((0,), (1,), (2,))
        assert len(d.factors[2].vertices) == 1

    def test_factor_vertex_counts_multiply(self):
        for P in (UNIT_CUBE, XOR, SEG_X_TRIANGLE, rho_hull(K33)):
            d = product_decompose_01(P)
            total = 1
            for f in d.factors:
                total *= len(f.vertices)
            assert total == len(P.vertices)

    def test_factors_are_the_block_projections(self):
        d = product_decompose_01(SEG_X_TRIANGLE)
        for block, f in zip(d.blocks, d.factors):
            proj = {tuple(v[i] for i in block) for v in SEG_X_TRIANGLE.vertices}
            assert set(f.vertices) == proj

    def test_non_01_rejected(self):
        with pytest.raises(ValueError, match="not a \\(0,1\\)-polytope"):
            product_decompose_01(Polytope.from_points([(0, 0), (2, 0), (0, 1)]))


class TestNG01Check:
    def test_cube_gorenstein(self):
        r = ng_01_check(UNIT_CUBE)
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 2
        assert len(r.factors) == 3
        assert r.engine is not None
        assert r.engine.status == STATUS_GORENSTEIN

    def test_segment_times_triangle_nearly(self):
        r = ng_01_check(SEG_X_TRIANGLE)
        assert r.verdict.status == STATUS_NEARLY
        assert r.verdict.codegree == 3
        assert sorted(f.codegree for f in r.factors) == [2, 3]
        assert r.engine.status == STATUS_NEARLY

    def test_segment_times_tetrahedron_not_nearly(self):
        r = ng_01_check(SEG_X_TETRA)
        assert r.verdict.status == STATUS_NOT_NEARLY
        assert sorted(f.codegree for f in r.factors) == [2, 4]

    def test_point_factor_excluded_from_comparison(self):
        P = Polytope.from_points([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        r = ng_01_check(P)
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 2
        assert [f.is_point for f in r.factors] == [False, False, True]

    def test_lower_dimensional_simplex(self):
        r = ng_01_check(Polytope.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 3

    def test_non_idp_input_rejected(self):
        with pytest.raises(ValueError, match="not IDP"):
            ng_01_check(rho_hull(PATH_JOINED))

    def test_engine_cap_skips_cross_check(self):
        r = ng_01_check(UNIT_CUBE, engine_cap=0)
        assert r.engine is None
        assert r.verdict.status == STATUS_GORENSTEIN


class TestIsLevel:
    def brute_degrees(self, P, bound):
        # independent route: interior points of explicit dilates
        a = codegree(P)
        pts = P.lattice_points()

        def interior(k):
            return frozenset(P.dilate(k).interior_lattice_points()) if k else frozenset()

        degs = []
        for k in range(a, bound + 1):
            prev = interior(k - 1)
            gens = [
                z for z in interior(k)
                if all(tuple(x - y for x, y in zip(z, p)) not in prev
                       for p in pts)
            ]
            if gens:
                degs.append(k)
        return degs

    def test_cube_level(self):
        r = is_level(UNIT_CUBE)
        assert r.value is True
        assert r.generator_degrees == (2,)

    def test_segment_times_triangle_level(self):
        r = is_level(SEG_X_TRIANGLE)
        assert r.value is True
        assert r.generator_degrees == (3,)

    def test_stop_sign_level(self):
        r = is_level(STOP_SIGN)
        assert r.value is True
        assert r.generator_degrees == (1,)

    def test_non_level_fixture(self):
        r = is_level(NON_LEVEL)
        assert r.value is False
        assert r.generator_degrees == (1, 2)

    def test_generator_degrees_match_brute_force(self):
        for P in (UNIT_CUBE, STOP_SIGN, NON_LEVEL, SEG_X_TRIANGLE):
            r = is_level(P)
            assert list(r.generator_degrees) == self.brute_degrees(P, r.horizon)

    def test_horizon_hit_reports_unknown(self):
        r = is_level(NON_LEVEL, degree_bound=1)
        assert r.value is None
        assert r.generator_degrees == (1,)

    def test_degree_bound_below_codegree(self):
        with pytest.raises(ValueError, match="below the codegree"):
            is_level(UNIT_CUBE, degree_bound=1)

    def test_non_idp_input_rejected(self):
        from ngpoly.lattice import affine_lattice_projection
        projected, _ = affine_lattice_projection(rho_hull(PATH_JOINED).vertices)
        with pytest.raises(ValueError, match="IDP"):
            is_level(Polytope.from_points(projected))


class TestOrderPolytope:
    def test_antichain_gives_cube(self):
        P = order_polytope(Poset(2, ()))
        assert len(P.vertices) == 4
        assert P.dim == 2

    def test_chain_gives_simplex(self):
        P = order_polytope(Poset(2, ((0, 1),)))
        assert len(P.vertices) == 3
        P = order_polytope(Poset(4, ((0, 1), (1, 2), (2, 3))))
        assert len(P.vertices) == 5

    def test_ideal_count_of_fence(self):
        # 0 < 2, 1 < 2, 1 < 3: ideals enumerated by brute force
        P = order_polytope(Poset(4, ((0, 2), (1, 2), (1, 3))))
        ideals = 0
        for m in range(16):
            s = {i for i in range(4) if m >> i & 1}
            if all(a in s for a, b in ((0, 2), (1, 2), (1, 3)) if b in s):
                ideals += 1
        assert len(P.vertices) == ideals

    def test_hibi_antichain(self):
        assert hibi_ng_formula(Poset(2, ())) is True

    def test_hibi_rank_gap_one(self):
        assert hibi_ng_formula(Poset(3, ((0, 1),))) is True

    def test_hibi_rank_gap_two(self):
        assert hibi_ng_formula(Poset(4, ((0, 1), (1, 2)))) is False

    def test_hibi_two_chains(self):
        assert hibi_ng_formula(Poset(5, ((0, 1), (1, 2), (3, 4)))) is True

    def test_hibi_impure_component(self):
        # 0 < 1 < 2 and 0 < 3: maximal chains of lengths 2 and 1
        assert hibi_ng_formula(Poset(4, ((0, 1), (1, 2), (0, 3)))) is False

    def test_empty_poset_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            order_polytope(Poset(0, ()))


class TestStableSetPolytope:
    def test_clique_gives_simplex(self):
        P = stable_set_polytope(K3)
        assert len(P.vertices) == 4
        assert P.dim == 3

    def test_path_stable_sets(self):
        P = stable_set_polytope(SimpleGraph(3, ((0, 1), (1, 2))))
        assert len(P.vertices) == 5

    def test_single_clique(self):
        assert stab_ng_formula(K3) is True

    def test_clique_sizes_gap_one(self):
        g = SimpleGraph(5, ((0, 1), (1, 2), (0, 2), (3, 4)))
        assert stab_ng_formula(g) is True

    def test_clique_sizes_gap_two(self):
        g = SimpleGraph(6, K4_EDGES + ((4, 5),))
        assert stab_ng_formula(g) is False

    def test_unequal_maximal_cliques_within_component(self):
        g = SimpleGraph(4, ((0, 1), (1, 2), (0, 2), (2, 3)))
        assert stab_ng_formula(g) is False

    def test_even_cycle(self):
        assert stab_ng_formula(cycle_to_simple(4)) is True


def cycle_to_simple(n):
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


class TestSpanningTrees:
    def test_triangle(self):
        trees = spanning_trees(Multigraph(3, ((0, 1), (1, 2), (0, 2))))
        assert len(trees) == 3
        assert all(len(t) == 2 for t in trees)

    def test_parallel_pair(self):
        assert len(spanning_trees(Multigraph(2, ((0, 1), (0, 1))))) == 2

    def test_theta(self):
        assert len(spanning_trees(Multigraph(2, ((0, 1),) * 3))) == 3

    def test_k4(self):
        k4 = Multigraph(4, K4_EDGES)
        trees = spanning_trees(k4)
        assert len(trees) == 16
        assert all(is_spanning_tree(k4, t) for t in trees)

    def test_k5_cayley(self):
        assert len(spanning_trees(Multigraph(
            5, tuple((i, j) for i in range(5) for j in range(i + 1, 5))))) == 125

    def test_matches_kirchhoff(self):
        graphs = [
            Multigraph(3, ((0, 1), (0, 1), (1, 2), (0, 2))),
            Multigraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2))),
            Multigraph(4, ((0, 1), (0, 1), (1, 2), (2, 3), (1, 3), (0, 3))),
            cycle_graph(5),
        ]
        for g in graphs:
            trees = spanning_trees(g)
            assert len(trees) == kirchhoff_count(g)
            assert len(set(trees)) == len(trees)
            assert all(is_spanning_tree(g, t) for t in trees)

    def test_single_vertex(self):
        assert spanning_trees(Multigraph(1, ())) == (frozenset(),)

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="disconnected"):
            spanning_trees(Multigraph(3, ((0, 1),)))

    def test_cap(self):
        with pytest.raises(ValueError, match="exceeds the cap"):
            spanning_trees(Multigraph(4, K4_EDGES), cap=5)


class TestBasePolytope:
    def test_triangle_gives_simplex(self):
        B, _ = base_polytope(cycle_graph(3))
        assert B.dim == 2
        assert len(B.vertices) == 3
        assert codegree(B) == 3

    def test_k4(self):
        B, _ = base_polytope(Multigraph(4, K4_EDGES))
        assert B.dim == 5
        assert len(B.vertices) == 16
        g = is_gorenstein(B)
        assert g.value and g.codegree == 2

    def test_cycle_codegrees(self):
        for a in (3, 4, 5):
            B, _ = base_polytope(cycle_graph(a))
            assert codegree(B) == a

    def test_uniform_rank_one(self):
        B, _ = base_polytope(MatroidBases(2, ({0}, {1})))
        assert B.dim == 1
        assert len(B.vertices) == 2

    def test_uniform_two_of_four(self):
        bases = tuple(frozenset(b) for b in
                      ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        B, _ = base_polytope(MatroidBases(4, bases))
        assert B.dim == 3
        assert len(B.vertices) == 6
        g = is_gorenstein(B)
        assert g.value and g.codegree == 2

    def test_witness_recovers_incidence_vectors(self):
        c3 = cycle_graph(3)
        B, witness = base_polytope(c3)
        lifted = {witness.lift(v) for v in B.vertices}
        assert lifted == {(0, 1, 1), (1, 0, 1), (1, 1, 0)}

    def test_invalid_bases_rejected(self):
        with pytest.raises(ValueError, match="exchange axiom"):
            base_polytope(MatroidBases(3, ({0}, {1, 2})))


class TestBasePolytopeAxiomCheck:
    def test_graphic_hulls_pass(self):
        assert base_polytope_axiom_check(incidence_hull(Multigraph(4, K4_EDGES)))
        assert base_polytope_axiom_check(incidence_hull(cycle_graph(3)))

    def test_unit_square_fails(self):
        assert not base_polytope_axiom_check(UNIT_SQUARE)

    def test_unit_vector_simplex_passes(self):
        P = Polytope.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert base_polytope_axiom_check(P)

    def test_product_of_base_polytopes_passes(self):
        assert base_polytope_axiom_check(rho_hull(K23))

    def test_constant_sum_with_long_edge_fails(self):
        P = Polytope.from_points([(1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0)])
        assert not base_polytope_axiom_check(P)

    def test_single_vertex_passes(self):
        assert base_polytope_axiom_check(Polytope.from_points([(1, 0)]))

    def test_non_01_rejected(self):
        with pytest.raises(ValueError, match="not a \\(0,1\\)-polytope"):
            base_polytope_axiom_check(Polytope.from_points([(0, 0), (2, 0), (0, 2)]))


class TestBlocks:
    def test_bowtie(self):
        bowtie = Multigraph(5, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)))
        bs = blocks(bowtie)
        assert len(bs) == 2
        assert all(b.vertex_count == 3 and len(b.edges) == 3 for b in bs)

    def test_path_splits_into_bridges(self):
        bs = blocks(Multigraph(4, ((0, 1), (1, 2), (2, 3))))
        assert len(bs) == 3
        assert all(len(b.edges) == 1 for b in bs)

    def test_two_connected_graph_is_one_block(self):
        assert len(blocks(Multigraph(4, K4_EDGES))) == 1

    def test_parallel_pair_is_two_connected(self):
        bs = blocks(Multigraph(2, ((0, 1), (0, 1))))
        assert len(bs) == 1
        assert len(bs[0].edges) == 2

    def test_disconnected(self):
        g = Multigraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
        assert len(blocks(g)) == 2

    def test_block_tree_product_matches_spanning_trees(self):
        whole = set(spanning_trees(K4_WEDGE_C3))
        composed = [frozenset()]
        for bg, idxs in _block_partition(K4_WEDGE_C3):
            subs = spanning_trees(bg)
            composed = [t | {idxs[i] for i in s} for t in composed for s in subs]
        assert set(composed) == whole


class TestNGGraphicMatroid:
    def test_k4_gorenstein(self):
        r = ng_graphic_matroid(Multigraph(4, K4_EDGES))
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 2
        assert r.zero_one is not None

    def test_k4_wedge_c3_nearly(self):
        r = ng_graphic_matroid(K4_WEDGE_C3)
        assert r.verdict.status == STATUS_NEARLY
        assert sorted(b.codegree for b in r.blocks) == [2, 3]
        assert r.zero_one is not None
        assert r.zero_one.verdict.status == STATUS_NEARLY

    def test_k4_wedge_c4_not_nearly(self):
        r = ng_graphic_matroid(K4_WEDGE_C4)
        assert r.verdict.status == STATUS_NOT_NEARLY
        assert sorted(b.codegree for b in r.blocks) == [2, 4]
        assert r.zero_one is not None

    def test_disjoint_union_combines_blocks(self):
        g = Multigraph(7, K4_EDGES + ((4, 5), (5, 6), (4, 6)))
        r = ng_graphic_matroid(g)
        assert r.verdict.status == STATUS_NEARLY
        assert sorted(b.codegree for b in r.blocks) == [2, 3]

    def test_cycle_gap_two(self):
        g = Multigraph(8, ((0, 1), (1, 2), (0, 2),
                           (3, 4), (4, 5), (5, 6), (6, 7), (3, 7)))
        r = ng_graphic_matroid(g)
        assert r.verdict.status == STATUS_NOT_NEARLY
        assert sorted(b.codegree for b in r.blocks) == [3, 5]

    def test_tree_is_trivial(self):
        r = ng_graphic_matroid(Multigraph(4, ((0, 1), (1, 2), (2, 3))))
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 1
        assert all(b.bridge for b in r.blocks)

    def test_bridge_excluded_from_comparison(self):
        g = Multigraph(4, ((0, 1), (1, 2), (2, 3), (1, 3)))
        r = ng_graphic_matroid(g)
        assert r.verdict.status == STATUS_GORENSTEIN
        assert r.verdict.codegree == 3
        assert [b.bridge for b in r.blocks] == [True, False]

    def test_engine_cap_skips_cross_check(self):
        r = ng_graphic_matroid(Multigraph(4, K4_EDGES), engine_cap=-1)
        assert r.zero_one is None
        assert r.verdict.status == STATUS_GORENSTEIN

    def test_no_edges_rejected(self):
        with pytest.raises(ValueError, match="no edges"):
            ng_graphic_matroid(Multigraph(3, ()))
