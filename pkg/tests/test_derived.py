import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltcover.algebra import kronecker_algebra, linear_algebra, squid
from tiltcover.derived import (DMorphism, DObject, NotHereditary, chain_hom, cone, ghom_dim, in_class_T,
                               r_value, resolution_complex, shift, zero_chain_map)
from tiltcover.rep import (enumerate_indecomposables, ext1_dim, hom_basis, projective_rep, regular_rep,
                           simple_rep)

A2 = linear_algebra(2)
A3 = linear_algebra(3)
K = kronecker_algebra()
P1, P2 = projective_rep(A2, "1"), projective_rep(A2, "2")
S1, S2 = simple_rep(A2, "1"), simple_rep(A2, "2")


def D(*items, alg=A2):
    return DObject.from_reps(alg, list(items))


def test_ghom_examples():
    M = D((P1, 0))
    assert ghom_dim(M, M, 0) >= 1
    for X, Y in itertools.product([P1, P2, S1], repeat=2):
        assert ghom_dim(D((X, 0)), D((Y, 0)), 2) == 0
    assert ghom_dim(D((S2, 0)), D((S1, 1)), 0) == ext1_dim(S2, S1)
    assert ghom_dim(D((S1, 0)), D((S2, 1)), 0) == ext1_dim(S1, S2) == 1


def test_ghom_rejects_non_hereditary():
    alg = squid(2, (1, 1), ())
    with pytest.raises(NotHereditary):
        DObject.from_reps(alg, [(simple_rep(alg, "s"), 0)])


def test_class_T_examples():
    assert in_class_T(DObject.from_rep(regular_rep(A2)))
    assert not in_class_T(DObject(A2, [(P1, 0, 2)]))
    assert in_class_T(D((P1, 0), (S1, 1)))
    assert in_class_T(D((S1, 0), (S2, 1)))
    assert not in_class_T(D((S2, 0), (S1, 1)))
    assert not in_class_T(D((P1, 0), (S2, 1)))


def test_r_value_examples():
    assert r_value(D((P1, 0), (P2, 0))) == 0
    T = D((P1, 0), (S1, 1))
    assert r_value(T) == 1 == r_value(shift(T, 1))


def test_cone_examples():
    f = hom_basis(P2, P1)[0]
    c = cone(DMorphism.from_rep_morphism(f))
    assert c.is_module() and c.count() == 1 and c.expanded()[0][0].dim_vector() == (1, 0)
    ident = [g for g in hom_basis(P1, P1) if g.is_iso()][0]
    assert cone(DMorphism.from_rep_morphism(ident)).is_zero()
    X, Y = D((S1, 0)), D((S2, 0))
    zero = DMorphism(X, Y, zero_chain_map(X.complex()[0], Y.complex()[0]))
    assert cone(zero) == D((S2, 0), (S1, 1))


def test_cone_of_short_exact_sequence():
    # 0 -> P2 -> P1 -> S1 -> 0 over A3 analogue: S(2) -> P(2) -> P(2)/S(3)
    P = projective_rep(A3, "2")
    Q = projective_rep(A3, "3")
    f = hom_basis(Q, P)[0]
    c = cone(DMorphism.from_rep_morphism(f))
    assert c == D((simple_rep(A3, "2"), 0), alg=A3)


def test_shift_roundtrip():
    T = D((P1, 0), (S1, 1))
    assert shift(T, 0) == T
    assert shift(shift(T, 1), -1) == T


def test_chain_hom_matches_ghom():
    inds = enumerate_indecomposables(A3, 3)
    for M, N in itertools.product(inds, repeat=2):
        for d in (0, 1):
            CM, CN = resolution_complex(M, 0), resolution_complex(N, d)
            assert chain_hom(CM, CN).dim == ghom_dim(D((M, 0), alg=A3), D((N, 0), alg=A3), d)


shifts = st.lists(st.integers(-1, 2), min_size=3, max_size=3)


@settings(max_examples=30, deadline=None)
@given(shifts, st.integers(-2, 2))
def test_shift_invariance(sh, k):
    inds = enumerate_indecomposables(A3, 3)
    X = DObject.from_reps(A3, list(zip(inds[:3], sh)))
    Y = DObject.from_reps(A3, list(zip(inds[3:], sh)))
    for d in range(-1, 3):
        assert ghom_dim(X, Y, d) == ghom_dim(shift(X, k), shift(Y, k), d)
    assert in_class_T(X) == in_class_T(shift(X, 1))
