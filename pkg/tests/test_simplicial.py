"""Complexes, the degeneracy functors, and their unit/counit."""

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cupi.simplicial import (InvalidComplexError, VertexMap, adjoin,
                             build_complex, core_comparison_is_iso, core_of,
                             counit, forget, identity_map, simplicial_maps,
                             standard_simplex, surjections, unit)

import oracles
from conftest import RP2_FACETS, circle, rp2


class TestBuildComplex:
    def test_triangle_closure(self):
        X = build_complex([(0, 1, 2)])
        assert X.f_vector() == (3, 3, 1)
        assert X.simplices_of_dim(1) == ((0, 1), (0, 2), (1, 2))

    def test_empty(self):
        X = build_complex([])
        assert X.f_vector() == ()
        assert X.dim == -1

    def test_rp2_f_vector_against_bruteforce_closure(self):
        X = rp2()
        assert X.f_vector() == oracles.closure_counts(RP2_FACETS)
        assert X.f_vector() == (6, 15, 10)

    def test_idempotent_on_closed_input(self):
        X = build_complex([(0, 1, 2), (1, 2, 3)])
        again = build_complex(list(X.all_simplices()))
        assert again == X

    def test_rejects_unsorted_facet(self):
        with pytest.raises(InvalidComplexError):
            build_complex([(2, 1)])

    def test_rejects_duplicate_vertices(self):
        with pytest.raises(InvalidComplexError):
            build_complex([(1, 1, 2)])

    def test_face_closure_invariant(self, full_corpus):
        for X in full_corpus:
            for s in X.all_simplices():
                for r in range(1, len(s)):
                    for sub in itertools.combinations(s, r):
                        assert X.has_simplex(sub)


facet_lists = st.lists(
    st.lists(st.integers(min_value=0, max_value=7), min_size=1, max_size=4,
             unique=True).map(lambda v: tuple(sorted(v))),
    min_size=0, max_size=6)


@given(facet_lists)
@settings(max_examples=60, deadline=None)
def test_build_complex_always_face_closed(facets):
    X = build_complex(facets)
    for s in X.all_simplices():
        for i in range(len(s)):
            if len(s) > 1:
                assert X.has_simplex(s[:i] + s[i + 1:])


class TestSurjections:
    def test_counts_match_recursive_oracle(self):
        for m in range(6):
            for n in range(m + 1):
                assert len(surjections(m, n)) == oracles.count_surjections(m, n)
                assert len(surjections(m, n)) == comb(m, n)

    def test_all_are_monotone_surjections(self):
        for theta in surjections(4, 2):
            assert theta[0] == 0 and theta[-1] == 2
            assert all(b - a in (0, 1) for a, b in zip(theta, theta[1:]))


class TestAdjoin:
    def test_point_one_simplex_per_dimension(self):
        dpt = adjoin(standard_simplex(0).to_delta())
        assert [len(dpt.simplices_of_dim(m)) for m in range(6)] == [1] * 6

    def test_interval_dimension_two(self):
        dd1 = adjoin(standard_simplex(1).to_delta())
        assert len(dd1.simplices_of_dim(2)) == 4

    def test_circle_dimension_one(self):
        assert len(adjoin(circle().to_delta()).simplices_of_dim(1)) == 6

    def test_counts_binomial_formula(self, full_corpus):
        for X in full_corpus:
            dX = adjoin(X.to_delta())
            for m in range(6):
                want = sum(comb(m, n) * len(X.simplices_of_dim(n))
                           for n in range(X.dim + 1))
                assert len(dX.simplices_of_dim(m)) == want == dX.count(m)

    def test_simplicial_identities(self, corpus):
        # d_i d_j = d_{j-1} d_i (i<j); s_i s_j = s_{j+1} s_i (i<=j); mixed
        for X in corpus.values():
            dX = adjoin(X.to_delta())
            for m in range(1, 4):
                for s in dX.simplices_of_dim(m):
                    if m >= 2:
                        for j in range(m + 1):
                            for i in range(j):
                                assert dX.face(dX.face(s, j), i) == \
                                    dX.face(dX.face(s, i), j - 1)
                    for j in range(m + 1):
                        for i in range(j + 1):
                            assert dX.degeneracy(dX.degeneracy(s, j), i) == \
                                dX.degeneracy(dX.degeneracy(s, i), j + 1)
                    for j in range(m + 1):
                        for i in range(m + 2):
                            left = dX.face(dX.degeneracy(s, j), i)
                            if i < j:
                                assert left == dX.degeneracy(dX.face(s, i), j - 1)
                            elif i in (j, j + 1):
                                assert left == s
                            else:
                                assert left == dX.degeneracy(dX.face(s, i - 1), j)


class TestForget:
    def test_point_tower(self):
        dpt = adjoin(standard_simplex(0).to_delta())
        f = forget(dpt, 4)
        assert [len(f.cells_of_dim(m)) for m in range(5)] == [1] * 5

    def test_interval_dim1_three_cells(self):
        f = forget(adjoin(standard_simplex(1).to_delta()), 2)
        assert len(f.cells_of_dim(1)) == 3

    def test_cell_count_formula(self, corpus):
        for X in corpus.values():
            dX = adjoin(X.to_delta())
            f = forget(dX, 4)
            for m in range(5):
                want = sum(comb(m, n) * len(X.simplices_of_dim(n))
                           for n in range(X.dim + 1))
                assert len(f.cells_of_dim(m)) == want


class TestCoreAndComparison:
    def test_core_of_adjoin_is_identity(self, full_corpus):
        for X in full_corpus:
            Y = X.to_delta()
            assert core_of(adjoin(Y)).same_as(Y)

    def test_core_of_triangle(self):
        Y = core_of(adjoin(standard_simplex(2).to_delta()))
        assert tuple(len(Y.cells_of_dim(k)) for k in range(3)) == (3, 3, 1)

    def test_comparison_iso_rp2(self):
        assert core_comparison_is_iso(adjoin(rp2().to_delta()), 3)


class TestUnitCounit:
    def test_counit_bijection_on_point(self):
        X = adjoin(standard_simplex(0).to_delta())
        g = counit(X)
        for m in range(4):
            fX = forget(X, m)
            dfX = adjoin(fX)
            image = {g(p) for p in dfX.simplices_of_dim(m)}
            assert image == set(X.simplices_of_dim(m))
            assert len(dfX.simplices_of_dim(m)) >= len(image)

    def test_unit_hits_exactly_nondegenerates(self):
        Y = circle().to_delta()
        X = adjoin(Y)
        iota = unit(Y)
        fdY = forget(X, 1)
        image = {iota(c) for n in Y.cells for c in Y.cells_of_dim(n)}
        nondeg = {s for m in range(2) for s in fdY.cells_of_dim(m)
                  if X.is_nondegenerate(s)}
        assert image == nondeg
        assert len(image) == 6  # 3 vertices + 3 edges

    def test_triangle_identity_fg_iotaf(self):
        # (forget g) . (unit on forget X) = id on forget(adjoin(interval))
        X = adjoin(standard_simplex(1).to_delta())
        fX = forget(X, 2)
        g = counit(X)
        iota = unit(fX)
        for m in range(3):
            for cell in fX.cells_of_dim(m):
                assert g(iota(cell)) == cell

    def test_triangle_identity_gd_diota(self):
        # g_{adjoin Y} . adjoin(unit_Y) = id on adjoin(Y)
        Y = circle().to_delta()
        X = adjoin(Y)
        iota = unit(Y)
        g = counit(X)
        for m in range(3):
            for theta, c in X.simplices_of_dim(m):
                assert g((theta, iota(c))) == (theta, c)

    def test_counit_surjective_unit_injective(self, corpus):
        for X in corpus.values():
            dX = adjoin(X.to_delta())
            g = counit(dX)
            iota = unit(X.to_delta())
            for m in range(3):
                targets = set(dX.simplices_of_dim(m))
                image = {g(p) for p in adjoin(forget(dX, m)).simplices_of_dim(m)}
                assert image == targets
            seen = set()
            for s in X.all_simplices():
                v = iota(s)
                assert v not in seen
                seen.add(v)


class TestSimplicialMaps:
    def test_point(self):
        assert len(simplicial_maps(0, standard_simplex(0))) == 1

    def test_interval(self):
        assert len(simplicial_maps(1, standard_simplex(1))) == 3

    def test_circle_dim2(self):
        maps = simplicial_maps(2, circle())
        assert len(maps) == 9

    def test_against_direct_enumeration(self, corpus):
        for X in corpus.values():
            for n in range(3):
                got = {tuple(vm(i) for i in range(n + 1))
                       for vm in simplicial_maps(n, X)}
                want = set(oracles.monotone_spanning_maps(n, X))
                assert got == want

    def test_maps_are_simplicial_and_monotone(self):
        for vm in simplicial_maps(2, rp2()):
            assert vm.is_order_preserving()
            assert vm.is_simplicial()
