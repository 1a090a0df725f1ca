import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltcover.algebra import kronecker_algebra, linear_algebra
from tiltcover.exactla import Matrix, rank
from tiltcover.rep import (add_multiplicities, NonSplitEndomorphismRing, Rep, decompose, direct_sum, enumerate_indecomposables,
                           euler_form, ext1_dim, find_isomorphism, hom_basis, hom_dim, injective_rep,
                           is_indecomposable, is_isomorphic, pd_at_most, projective_rep, projective_resolution,
                           regular_rep, simple_rep, trace_in)

A2 = linear_algebra(2)
A3 = linear_algebra(3)
K = kronecker_algebra()


def test_hom_examples():
    P1, P2 = projective_rep(A2, "1"), projective_rep(A2, "2")
    assert hom_dim(P2, P1) == 1
    assert hom_dim(P1, P2) == 0
    for M in (P1, P2, simple_rep(A2, "1")):
        assert any(f.is_iso() for f in hom_basis(M, M))


def test_hom_across_algebras_rejected():
    with pytest.raises(ValueError):
        hom_dim(simple_rep(A2, "1"), simple_rep(A3, "1"))


def test_resolution_of_simple():
    S1 = simple_rep(A2, "1")
    res = projective_resolution(S1)
    assert [P.dim_vector() for P, _ in res] == [(1, 1), (0, 1)]
    assert pd_at_most(S1, 3) == 1
    assert pd_at_most(projective_rep(A2, "2"), 3) == 0
    assert projective_resolution(projective_rep(A2, "1"))[0][0].dim_vector() == (1, 1)
    assert len(projective_resolution(projective_rep(A2, "1"))) == 1


def test_ext_examples():
    S1, S2 = simple_rep(A2, "1"), simple_rep(A2, "2")
    assert (ext1_dim(S1, S2), ext1_dim(S2, S1)) == (1, 0)
    T1, T2 = simple_rep(K, "1"), simple_rep(K, "2")
    assert (ext1_dim(T1, T2), ext1_dim(T2, T1)) == (2, 0)
    assert ext1_dim(projective_rep(K, "1"), T2) == 0


def test_injectives():
    assert injective_rep(K, "2").dim_vector() == (2, 1)
    assert injective_rep(K, "1").dim_vector() == (1, 0)


def test_indecomposable_examples():
    assert is_indecomposable(simple_rep(A2, "1"))
    S = direct_sum([simple_rep(A2, "1"), simple_rep(A2, "2")], A2)[0]
    assert not is_indecomposable(S)
    M = Rep(K, {"1": 1, "2": 1}, {"a": [[1]], "b": [[0]]})
    assert is_indecomposable(M)


def test_non_split_endomorphisms_reported():
    M = Rep(K, {"1": 2, "2": 2}, {"a": [[1, 0], [0, 1]], "b": [[0, -1], [1, 0]]})
    with pytest.raises(NonSplitEndomorphismRing):
        is_indecomposable(M)


def test_decompose_examples():
    P1 = projective_rep(A2, "1")
    parts = decompose(direct_sum([P1, P1], A2)[0])
    assert len(parts) == 2 and all(is_isomorphic(p, P1) for p in parts)
    reg = sorted(decompose(regular_rep(A2)), key=lambda r: r.dim_vector())
    assert [r.dim_vector() for r in reg] == [(0, 1), (1, 1)]


def test_enumeration_counts():
    assert len(enumerate_indecomposables(A2, 2)) == 3
    assert len(enumerate_indecomposables(A3, 3)) == 6
    inds = enumerate_indecomposables(K, 4)
    assert [r.dim_vector() for r in inds] == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert [tuple(d) for d in inds.infinite_families] == [(1, 1), (2, 2)]


def test_isomorphism_examples():
    S1, S2 = simple_rep(A2, "1"), simple_rep(A2, "2")
    assert is_isomorphic(S1, S1) and not is_isomorphic(S1, S2)
    P = projective_rep(K, "1")
    Q = P.change_basis({"1": Matrix.identity(1), "2": Matrix.from_rows([[0, 1], [1, 0]])})
    f = find_isomorphism(P, Q)
    assert f is not None and f.is_iso()


def test_trace_examples():
    P1, P2 = projective_rep(A2, "1"), projective_rep(A2, "2")
    assert trace_in(P1, P1).dims == P1.dims
    assert trace_in(P2, P1).dim_vector() == (0, 1)
    assert trace_in(simple_rep(A2, "1"), simple_rep(A2, "2")).dim_vector() == (0, 0)


@pytest.mark.parametrize("alg", [A2, A3, K], ids=["A2", "A3", "kronecker"])
def test_euler_form_identity(alg):
    inds = enumerate_indecomposables(alg, 4)
    for M, N in itertools.product(inds, repeat=2):
        assert hom_dim(M, N) - ext1_dim(M, N) == euler_form(alg, M.dim_vector(), N.dim_vector())


def test_decompose_idempotent_and_pd_bound():
    for M in enumerate_indecomposables(A3, 3):
        assert len(decompose(M)) == 1
        assert pd_at_most(M, 2) in (0, 1)
        if pd_at_most(M, 0) == 0:
            assert all(ext1_dim(M, N) == 0 for N in enumerate_indecomposables(A3, 3))


def _random_invertible(n, rng):
    while True:
        m = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank(m) == n:
            return m


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_change_of_basis_roundtrip(seed):
    rng = random.Random(seed)
    inds = enumerate_indecomposables(K, 4)
    parts = [rng.choice(inds) for _ in range(2)]
    S = direct_sum(parts, K)[0]
    T = S.change_basis({v: _random_invertible(S.dims[v], rng) if S.dims[v] else Matrix.identity(0)
                        for v in K.vertices})
    assert is_isomorphic(S, T)
    got = sorted(r.dim_vector() for r in decompose(T))
    assert got == sorted(p.dim_vector() for p in parts)


def test_split_off_brick_fallback(monkeypatch):
    import tiltcover.rep as R
    from tiltcover.algebra import kronecker_algebra
    K = kronecker_algebra()
    X = R.generic_rep(K, [3, 2], seed=4)
    M = R.direct_sum([X, X])[0]
    monkeypatch.setattr(R, "_fitting_split", lambda *a, **k: None)
    R.decompose_with_witness.cache_clear()
    d = R.decompose_with_witness(M)
    assert [s.dim_vector() for s in d.summands] == [(3, 2), (3, 2)]
    assert d.verify()
    R.decompose_with_witness.cache_clear()


def test_add_multiplicities():
    from tiltcover.algebra import kronecker_algebra
    K = kronecker_algebra()
    P1, P2 = projective_rep(K, "1"), projective_rep(K, "2")
    M = direct_sum([P1, P2, P1])[0]
    assert add_multiplicities(M, [P1, P2]) == [2, 1]
    assert add_multiplicities(M, [P2]) is None
