import pytest

from parkbetti import (
    CharacteristicDisagreement,
    Monomial,
    SimplicialComplex,
    betti_gpw,
    betti_koszul,
    betti_mobius,
    betti_wilmes,
    boundary_matrices,
    crosscut_faces,
    cutset_ideal,
    dual_connected_partition_lattice,
    generate_corpus,
    graph_to_text,
    homology_over_chars,
    interval_homology,
    interval_homology_audit,
    koszul_complex,
    lcm_lattice,
    oriented_cutset_ideal,
    parking_ideal,
    parse_graph,
    rank_over,
    reduced_homology_dims,
    variable_symmetries,
)

from _oracles import betti_wilmes_oracle

RP2 = SimplicialComplex((
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
))


def nonzero(dims):
    return {d: v for d, v in dims.items() if v}


class TestSimplicialComplex:
    def test_facet_canonicalization(self):
        cpx = SimplicialComplex.from_faces([(0, 1), (1,), (0,), (), (1, 0)])
        assert cpx.facets == ((0, 1),)

    def test_void_vs_empty(self):
        assert SimplicialComplex(()).is_void
        empty = SimplicialComplex(((),))
        assert not empty.is_void and empty.dim == -1

    def test_faces_by_dim(self):
        cpx = SimplicialComplex(((0, 1, 2),))
        faces = cpx.faces_by_dim()
        assert faces[-1] == [()]
        assert faces[1] == [(0, 1), (0, 2), (1, 2)]


class TestReducedHomology:
    def test_empty_and_void(self):
        assert reduced_homology_dims(SimplicialComplex(((),)), 2) == {-1: 1}
        assert reduced_homology_dims(SimplicialComplex(()), 2) == {}

    def test_isolated_points(self):
        cpx = SimplicialComplex(((0,), (1,), (2,), (3,)))
        assert nonzero(reduced_homology_dims(cpx, 32003)) == {0: 3}

    def test_circle_sphere_disc(self):
        circle = SimplicialComplex(((0, 1), (1, 2), (0, 2)))
        assert nonzero(reduced_homology_dims(circle, 32003)) == {1: 1}
        sphere = SimplicialComplex(((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))
        assert nonzero(reduced_homology_dims(sphere, 32003)) == {2: 1}
        disc = SimplicialComplex(((0, 1, 2),))
        assert nonzero(reduced_homology_dims(disc, 32003)) == {}

    def test_all_characteristics_agree_on_spheres(self):
        sphere = SimplicialComplex(((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))
        for char in (0, 2, 3, 32003):
            assert nonzero(reduced_homology_dims(sphere, char)) == {2: 1}

    def test_torsion_detected(self):
        assert nonzero(reduced_homology_dims(RP2, 2)) == {1: 1, 2: 1}
        assert nonzero(reduced_homology_dims(RP2, 32003)) == {}
        assert nonzero(reduced_homology_dims(RP2, 0)) == {}
        with pytest.raises(CharacteristicDisagreement):
            homology_over_chars(RP2)

    def test_boundary_matrices_compose_to_zero(self):
        import numpy as np

        mats = boundary_matrices(RP2)
        for d in mats:
            if d + 1 in mats:
                assert not np.any(mats[d] @ mats[d + 1])

    def test_bad_characteristic_rejected(self):
        import numpy as np

        with pytest.raises(ValueError):
            rank_over(np.eye(2, dtype=int), 4)


class TestIntervalMachinery:
    def test_crosscut_matches_order_complex(self, kite):
        # every interval of every kite lattice, both models, all degrees
        for build in (parking_ideal, cutset_ideal, oriented_cutset_ideal):
            ideal = build(kite)
            lat = lcm_lattice(ideal)
            for y in lat.elements:
                if y == lat.bottom:
                    continue
                atoms = [g for g in ideal.generators if g.divides(y)]
                via_crosscut = homology_over_chars(
                    SimplicialComplex.from_faces(
                        f for fs in crosscut_faces(atoms, y).values() for f in fs
                    ),
                    (32003, 2),
                )
                via_chains = homology_over_chars(lat.order_complex(y), (32003, 2))
                assert nonzero(via_crosscut) == nonzero(via_chains)

    def test_interval_homology_matches_full_computation(self, kite, k3):
        for G in (kite, k3):
            ideal = parking_ideal(G)
            lat = lcm_lattice(ideal)
            for y in lat.elements:
                if y == lat.bottom:
                    continue
                dims = interval_homology(lat, y, ideal.generators, len(ideal.variables))
                full = homology_over_chars(lat.order_complex(y), (32003, 2))
                assert nonzero(dims) == nonzero(full)

    def test_kite_top_interval_concentration(self, kite):
        # the dual lattice has height 3, so the top interval is a wedge of
        # |mu| = 4 circles: homology sits in degree rank - 2 = 1
        lat = lcm_lattice(cutset_ideal(kite))
        top_dims = homology_over_chars(lat.order_complex(lat.top), (32003, 2))
        assert lat.rank(lat.top) == 3
        assert nonzero(top_dims) == {1: 4}


class TestBettiPipelines:
    def test_kite_all_methods(self, kite):
        want = (6, 9, 4)
        assert betti_wilmes(kite) == want
        assert betti_mobius(dual_connected_partition_lattice(kite)) == want
        assert betti_gpw(parking_ideal(kite)) == want
        assert betti_gpw(cutset_ideal(kite)) == want
        assert betti_gpw(oriented_cutset_ideal(kite)) == want
        assert betti_koszul(parking_ideal(kite)) == want

    def test_k3(self, k3):
        assert betti_wilmes(k3) == (3, 2)
        assert betti_gpw(parking_ideal(k3)) == (3, 2)
        assert betti_koszul(parking_ideal(k3)) == (3, 2)
        assert betti_mobius(dual_connected_partition_lattice(k3)) == (3, 2)

    def test_single_edge_and_banana(self, banana):
        two = parse_graph("v:2; a 1 2")
        assert betti_wilmes(two) == (1,)
        assert betti_gpw(parking_ideal(two)) == (1,)
        assert betti_koszul(parking_ideal(banana(3))) == (1,)
        assert betti_gpw(cutset_ideal(banana(3))) == (1,)

    def test_c4_against_oracle(self, c4):
        want = betti_wilmes_oracle(c4)
        assert want == (6, 8, 3)
        assert betti_wilmes(c4) == want
        assert betti_gpw(parking_ideal(c4)) == want

    def test_wilmes_matches_oracle_on_corpus(self):
        for G in generate_corpus(4, max_edges=5, include_multi=True):
            assert betti_wilmes(G) == betti_wilmes_oracle(G), graph_to_text(G)

    def test_principal_ideal(self):
        from parkbetti import MonomialIdeal

        principal = MonomialIdeal(("x1",), (Monomial.of({"x1": 5}),), minimalized=True)
        assert betti_gpw(principal) == (1,)
        assert betti_koszul(principal) == (1,)

    def test_symmetries_change_nothing(self, kite, k3):
        for G in (kite, k3):
            for kind, build in (("x", parking_ideal), ("y", cutset_ideal), ("z", oriented_cutset_ideal)):
                ideal = build(G)
                syms = variable_symmetries(G, kind)
                assert betti_gpw(ideal, symmetries=syms) == betti_gpw(ideal)

    def test_bad_symmetry_rejected(self, k3):
        ideal = parking_ideal(k3)
        with pytest.raises(ValueError):
            betti_gpw(ideal, symmetries=({"x1": "x1", "x2": "x1"},))

    def test_wilmes_needs_two_vertices(self):
        with pytest.raises(ValueError):
            betti_wilmes(parse_graph("v:1"))


class TestKoszulComplex:
    def test_principal_degree(self):
        from parkbetti import MonomialIdeal

        ideal = MonomialIdeal(("x1",), (Monomial.of({"x1": 2}),), minimalized=True)
        cpx = koszul_complex(ideal, Monomial.of({"x1": 2}))
        assert cpx.facets == ((),)

    def test_k3_top_degree(self, k3):
        ideal = parking_ideal(k3)
        cpx = koszul_complex(ideal, Monomial.of({"x1": 2, "x2": 2}))
        # both strips stay inside the ideal: a full segment, contractible
        assert nonzero(reduced_homology_dims(cpx, 2)) == {}


class TestAuditAndEuler:
    def test_concentration_on_small_corpus(self):
        for G in generate_corpus(4, max_edges=5, include_multi=True):
            ideal = cutset_ideal(G)
            lat = lcm_lattice(ideal)
            rows = interval_homology_audit(lat)
            for row in rows:
                expected = {row["rank"] - 2: abs(row["mobius"])} if row["mobius"] else {}
                assert row["homology"] == expected, (graph_to_text(G), row)

    def test_euler_characteristic_equals_mobius(self, kite):
        lat = lcm_lattice(cutset_ideal(kite))
        mu = lat.mobius()
        for y in lat.elements:
            if y == lat.bottom:
                continue
            dims = homology_over_chars(lat.order_complex(y), (32003, 2))
            euler = sum((-1) ** d * v for d, v in dims.items())
            assert euler == mu[y]
