import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltcover.algebra import kronecker_algebra, squid
from tiltcover.cover import (EndCover, check_H3, cover_from_monodromy, covering_property_check, homogeneous_decomposition,
                             homogeneous_pushdown, induced_end_cover, lift_is_module, lift_object,
                             lift_transcript, pull_up, push_down, push_down_iso, stabilizer, straighten,
                             translate, twist)
from tiltcover.derived import chain_hom, resolution_complex
from tiltcover.quiver import FiniteGroup
from tiltcover.rep import (decompose, direct_sum, enumerate_indecomposables, generic_rep, hom_dim, injective_rep, is_isomorphic, projective_rep, regular_rep, simple_rep)
from tiltcover.tilt import mutation_transcript

K = kronecker_algebra()
Z2 = FiniteGroup.cyclic(2)
C = cover_from_monodromy(K, {"a": "0", "b": "1"}, Z2)


def test_kronecker_cover_shape():
    assert len(C.total.quiver.vertices) == 4
    assert C.total.dim == 2 * K.dim
    assert C.fibres == {"1": ["1@0", "1@1"], "2": ["2@0", "2@1"]}
    assert C.total.quiver.is_connected()


def test_squid_cover_shape():
    S = squid(2, (1, 1), ())
    c = cover_from_monodromy(S, {"a1": "1"}, Z2)
    assert len(c.total.quiver.vertices) == 8
    assert c.total.dim == 2 * S.dim


def test_lift_path_ends_in_fibre():
    p, end = C.lift_path("1@1", ["b"])
    assert p == ("b@1",) and end == "2@0"


def test_trivial_group_cover_is_identity():
    c = cover_from_monodromy(K, {}, FiniteGroup.trivial())
    M = generic_rep(K, [2, 3], seed=1)
    assert is_isomorphic(push_down(c, pull_up(c, M)), M)


def test_push_down_projectives_and_simples():
    for v in C.total.quiver.vertices:
        x = C.qcover.vertex_map[v]
        assert is_isomorphic(push_down(C, projective_rep(C.total, v)), projective_rep(K, x))
        assert is_isomorphic(push_down(C, injective_rep(C.total, v)), injective_rep(K, x))
        assert push_down(C, simple_rep(C.total, v)) == simple_rep(K, x)


def test_pull_up_of_simple():
    up = pull_up(C, simple_rep(K, "1"))
    assert sorted(up.dim_vector()) == [0, 0, 1, 1]
    assert all(is_isomorphic(s, simple_rep(C.total, "1@0")) or is_isomorphic(s, simple_rep(C.total, "1@1"))
               for s in decompose(up))


def test_translate_round_trip():
    M = generic_rep(C.total, [1, 2, 1, 1], seed=3)
    for g in Z2.elements:
        assert translate(C, Z2.inv(g), translate(C, g, M)) == M
    assert translate(C, "0", M) == M
    assert translate(C, "1", M).dims["1@1"] == M.dims["1@0"]


def test_push_down_iso_is_iso():
    M = projective_rep(C.total, "1@0")
    for g in Z2.elements:
        iota = push_down_iso(C, g, M)
        assert iota.is_injective() and iota.is_surjective()


def test_adjunction_dimensions():
    # Hom(F M, X) = Hom(M, pull-up X)
    X = generic_rep(K, [1, 2], seed=5)
    for v in C.total.quiver.vertices:
        M = projective_rep(C.total, v)
        assert hom_dim(push_down(C, M), X) == hom_dim(M, pull_up(C, X))


def test_covering_property_small():
    inds = enumerate_indecomposables(C.total, 3)
    for M, N in itertools.product(inds, repeat=2):
        for d, (lhs, rhs) in covering_property_check(C, M, N).items():
            assert lhs == rhs, (M.dim_vector(), N.dim_vector(), d)


def test_stabilizer_trivial_and_nontrivial():
    P = projective_rep(C.total, "1@0")
    assert stabilizer(C, P) == ["0"]
    both = direct_sum([P, translate(C, "1", P)])[0]
    assert stabilizer(C, both) == ["0", "1"]


def test_homogeneous_decomposition_recovers_sum():
    X = resolution_complex(projective_rep(C.total, "2@0"), 0)
    M = resolution_complex(projective_rep(C.total, "1@0"), 0)
    pieces = {}
    for g in Z2.elements:
        B = chain_hom(X, translate(C, g, M)).basis
        assert len(B) == 1
        pieces[g] = homogeneous_pushdown(C, g, B[0])
    u = pieces["0"] + pieces["1"].scale(3)
    dec = homogeneous_decomposition(C, u, X, M)
    assert set(dec) == {"0", "1"}
    rebuilt = homogeneous_pushdown(C, "0", dec["0"]) + homogeneous_pushdown(C, "1", dec["1"])
    H = chain_hom(push_down(C, X), push_down(C, M))
    assert H.is_null_homotopic(rebuilt - u)


def _column_instance():
    X = resolution_complex(projective_rep(C.total, "2@0"), 0)
    M = resolution_complex(projective_rep(C.total, "1@0"), 0)
    d = {g: homogeneous_pushdown(C, g, chain_hom(X, translate(C, g, M)).basis[0]) for g in Z2.elements}
    return X, M, d


@pytest.mark.parametrize("second", ["0", "1"])
def test_straighten_column(second):
    X, M, d = _column_instance()
    res = straighten(C, [d["0"] + d["1"], d[second]], X, [M, M], form="column")
    assert all(g is not None for g in res.degrees)
    assert res.log
    for m in res.maps:
        assert len(homogeneous_decomposition(C, m, X, M)) == 1


def test_straighten_cases_both_occur():
    X, M, d = _column_instance()
    cases = set()
    for second in ("0", "1"):
        for first in (d["0"] + d["1"], d["0"].scale(2) + d["1"]):
            res = straighten(C, [first, d[second]], X, [M, M], form="column")
            cases.update(e["case"] for e in res.log)
    assert cases == {"invertible", "nilpotent"}


def test_straighten_row():
    Y = resolution_complex(injective_rep(C.total, "2@0"), 0)
    M = resolution_complex(projective_rep(C.total, "1@0"), 0)
    e = {g: homogeneous_pushdown(C, g, chain_hom(M, translate(C, g, Y)).basis[0]) for g in Z2.elements}
    cases = set()
    for second in ("0", "1"):
        for first in (e["0"] + e["1"], e["0"] + e["1"].scale(-2)):
            res = straighten(C, [first, e[second]], Y, [M, M], form="row")
            assert all(g is not None for g in res.degrees)
            for m in res.maps:
                assert len(homogeneous_decomposition(C, m, M, Y)) == 1
            cases.update(x["case"] for x in res.log)
    assert cases == {"invertible", "nilpotent"}


def test_straighten_already_homogeneous_is_noop():
    X, M, d = _column_instance()
    res = straighten(C, [d["0"], d["1"]], X, [M, M])
    assert res.log == [] and res.degrees == ["0", "1"]


def test_straighten_rejects_bad_form():
    X, M, d = _column_instance()
    with pytest.raises(ValueError):
        straighten(C, [d["0"]], X, [M], form="diagonal")


def test_lift_along_mutations():
    P1, P2 = projective_rep(K, "1"), projective_rep(K, "2")
    tr = mutation_transcript(K, [P2, P1])
    history = lift_transcript(C, tr)
    assert len(history) == len(tr.steps) + 1
    for row in history:
        for L in row:
            assert is_isomorphic(push_down(C, L.total[0]), L.base[0])
            assert stabilizer(C, L.total[0]) == ["0"]
            assert lift_is_module(C, L)
    dims = sorted(tuple(sorted(L.total[0].dim_vector())) for L in history[-1])
    assert dims == [(1, 1, 1, 2), (1, 2, 2, 2)]
    end = [r for r, _ in tr.end.expanded()]
    assert lift_object(C, (end[0], 0), tr).base[0] is not None


def test_lift_object_rejects_foreign_summand():
    tr = mutation_transcript(K, [projective_rep(K, "2")])
    with pytest.raises(ValueError):
        lift_object(C, (simple_rep(K, "2"), 0), tr)


def test_induced_end_cover_regular_module():
    P = [projective_rep(K, v) for v in "12"]
    lifts = [projective_rep(C.total, "1@0"), projective_rep(C.total, "2@0")]
    ec = induced_end_cover(C, P, lifts)
    assert isinstance(ec, EndCover)
    assert ec.ok, ec.report()
    assert len(ec.cover.total.quiver.vertices) == 4
    assert "endomorphism of tilting module" in ec.base.flags


def test_induced_end_cover_trivial_group():
    c = cover_from_monodromy(K, {}, FiniteGroup.trivial())
    P = [projective_rep(K, v) for v in "12"]
    ec = induced_end_cover(c, P, [projective_rep(c.total, c.fibres[v][0]) for v in "12"])
    assert ec.ok
    assert len(ec.cover.total.quiver.vertices) == 2


def test_twist_and_H3():
    P1 = projective_rep(K, "1")
    psi = {"a": {("a",): 2}, "b": {("b",): 3}}
    assert is_isomorphic(twist(P1, psi), P1)
    assert check_H3(K, psi, [P1, projective_rep(K, "2")])
    mix = {"a": {("a",): 1, ("b",): 1}}
    assert check_H3(K, mix, regular_rep(K))
    with pytest.raises(ValueError):
        check_H3(K, {"a": {("b",): 1}}, P1)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.integers(0, 50))
def test_push_down_commutes_with_translation(d, seed):
    M = generic_rep(C.total, d, seed=seed)
    for g in Z2.elements:
        assert is_isomorphic(push_down(C, translate(C, g, M)), push_down(C, M))
