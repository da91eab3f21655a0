import pytest
from hypothesis import assume, given, settings

from builders import small_categories, sv
from finsite.errors import CategoryMismatch, ElementNotFound, NotClosed, ParentMismatch, PresheafError, TooLarge
from finsite.fincat import FIXTURE_NAMES, fixture
from finsite.oracle import brute_largest, smallest_topology
from finsite.presheaf import (
    Presheaf,
    Subpresheaf,
    close_subobject,
    closed_sub_not,
    densifying_topology,
    element_sieve,
    empty_sub,
    enumerate_subpresheaves,
    fixture_presheaves,
    full_sub,
    is_closed_subobject,
    is_dense_mono,
    sieve_to_subpresheaf,
    sub_implies,
    sub_join,
    sub_meet,
    sub_not,
    subpresheaf_to_sieve,
    terminal_presheaf,
    yoneda,
)
from finsite.sieve import enumerate_sieves, maximal_sieve, sieve_count, sieve_implies, sieve_not
from finsite.topology import (
    close_sieve,
    dense_topology,
    enumerate_topologies,
    family_of,
    generate_topology,
    maximal_topology,
    topology_leq,
    trivial_topology,
)


def u_sub(walk):
    """The subpresheaf of y(b) matching the sieve {u}."""
    return Subpresheaf(yoneda(walk, "b"), {"a": {"u"}})


def test_yoneda(walk):
    y = yoneda(walk, "b")
    assert y.values == {"a": ("u",), "b": ("id_b",)}
    assert y.restrict("u", "id_b") == "u"
    TERM = fixture("TERM")
    assert yoneda(TERM, "*").values == {"*": ("id_*",)}
    A = sieve_to_subpresheaf(sv(walk, "b", "u"))
    assert A.chosen == {"a": {"u"}, "b": set()}
    assert A == u_sub(walk)
    assert subpresheaf_to_sieve(A) == sv(walk, "b", "u")


def test_yoneda_is_valid_presheaf(corpus):
    for C in corpus.values():
        for c in C.objects:
            y = yoneda(C, c)
            Presheaf(C, y.values, y.restriction)  # runs the functoriality checks


def test_presheaf_validation(walk):
    with pytest.raises(PresheafError):
        Presheaf(walk, {"a": ["x"], "b": ["p"]}, {"u": {"p": "zzz"}})
    with pytest.raises(PresheafError):
        Presheaf(walk, {"a": ["x"], "b": ["p"]}, {})
    Z2 = fixture("Z2")
    # s must be an involution since s∘s = e
    with pytest.raises(PresheafError):
        Presheaf(Z2, {"*": ["p", "q", "r"]}, {"s": {"p": "q", "q": "r", "r": "p"}})


def test_subpresheaf_validation(walk):
    y = yoneda(walk, "b")
    with pytest.raises(PresheafError):
        Subpresheaf(y, {"b": {"id_b"}})
    with pytest.raises(ElementNotFound):
        Subpresheaf(y, {"a": {"zzz"}})


def test_implies_examples(walk):
    A = u_sub(walk)
    E = A.parent
    assert sub_implies(A, A) == full_sub(E)
    assert sub_implies(full_sub(E), A) == A
    assert sub_implies(A, empty_sub(E)) == empty_sub(E)
    with pytest.raises(ParentMismatch):
        sub_meet(A, empty_sub(yoneda(walk, "a")))


def test_not_examples(walk):
    A = u_sub(walk)
    E = A.parent
    assert sub_not(empty_sub(E)) == full_sub(E)
    assert sub_not(full_sub(E)) == empty_sub(E)
    assert sub_not(A) == empty_sub(E)


def test_element_sieve(walk):
    A = u_sub(walk)
    assert element_sieve(A, "b", "id_b") == sv(walk, "b", "u")
    assert element_sieve(A, "a", "u") == maximal_sieve(walk, "a")
    assert element_sieve(empty_sub(A.parent), "b", "id_b").is_empty
    with pytest.raises(ElementNotFound):
        element_sieve(A, "b", "nope")


def test_element_sieve_maximal_iff_member(corpus):
    for C in corpus.values():
        for E in fixture_presheaves(C):
            for A in enumerate_subpresheaves(E):
                for c in C.objects:
                    for e in E.values[c]:
                        assert element_sieve(A, c, e).is_maximal == (e in A.chosen[c])


def test_close_subobject_examples(walk, d_walk):
    A = u_sub(walk)
    assert close_subobject(d_walk, A) == full_sub(A.parent)
    assert is_dense_mono(d_walk, A)
    for C in (walk, fixture("PAIR"), fixture("M2")):
        T = trivial_topology(C)
        for E in fixture_presheaves(C):
            for B in enumerate_subpresheaves(E):
                assert close_subobject(T, B) == B
            assert close_subobject(T, full_sub(E)) == full_sub(E)


def test_close_subobject_category_mismatch(walk):
    with pytest.raises(CategoryMismatch):
        close_subobject(trivial_topology(fixture("TERM")), u_sub(walk))


def test_densifying_examples(walk, d_walk, trivial_walk):
    A = u_sub(walk)
    assert densifying_topology(trivial_walk, A) == d_walk
    for J in enumerate_topologies(walk):
        assert densifying_topology(J, full_sub(A.parent)) == J
    TERM = fixture("TERM")
    E = yoneda(TERM, "*")
    assert densifying_topology(trivial_topology(TERM), empty_sub(E)) == maximal_topology(TERM)


def test_closed_sub_not_examples(walk, jcov, trivial_walk):
    for E in fixture_presheaves(walk):
        for A in enumerate_subpresheaves(E):
            assert closed_sub_not(trivial_walk, A) == sub_not(A)
        for J in enumerate_topologies(walk):
            assert closed_sub_not(J, full_sub(E)) == close_subobject(J, empty_sub(E))
    # under JCOV the closed bottom of y(b) is {u}, not ∅
    E = yoneda(walk, "b")
    assert close_subobject(jcov, empty_sub(E)) == u_sub(walk)
    closed = [B for B in enumerate_subpresheaves(E) if is_closed_subobject(jcov, B)]
    zero = close_subobject(jcov, empty_sub(E))
    for A in closed:
        oracle = brute_largest(closed, lambda B: sub_meet(A, B) == zero)
        assert closed_sub_not(jcov, A) == oracle
    with pytest.raises(NotClosed):
        closed_sub_not(jcov, empty_sub(E))


def test_enumerate_subpresheaves(walk):
    assert len(enumerate_subpresheaves(yoneda(walk, "b"))) == 3
    DISC2 = fixture("DISC2")
    assert len(enumerate_subpresheaves(terminal_presheaf(DISC2))) == 4
    with pytest.raises(TooLarge):
        enumerate_subpresheaves(yoneda(walk, "b"), bound=1)


def brute_subpresheaves(E):
    from itertools import chain, combinations

    elems = [(c, e) for c in E.values for e in E.values[c]]
    out = set()
    for subset in chain.from_iterable(combinations(elems, r) for r in range(len(elems) + 1)):
        chosen = {c: {e for d, e in subset if d == c} for c in E.values}
        try:
            out.add(Subpresheaf(E, chosen))
        except PresheafError:
            pass
    return out


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_enumeration_matches_subset_filter(name):
    C = fixture(name)
    for E in fixture_presheaves(C):
        subs = enumerate_subpresheaves(E)
        assert len(set(subs)) == len(subs)
        assert set(subs) == brute_subpresheaves(E)


def heyting_laws(E):
    subs = enumerate_subpresheaves(E)
    bottom, top = empty_sub(E), full_sub(E)
    for A in subs:
        N = sub_not(A)
        assert sub_meet(A, N) == bottom
        assert N == brute_largest(subs, lambda B: sub_meet(A, B) == bottom)
        assert A <= sub_not(N)
        assert sub_not(sub_not(N)) == N
        assert sub_implies(A, bottom) == N
        assert sub_implies(A, A) == top
        for B in subs:
            assert sub_meet(A, B) == sub_meet(B, A) and sub_join(A, B) in subs
            I = sub_implies(A, B)
            for U in subs:
                assert (sub_meet(U, A) <= B) == (U <= I)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_heyting_laws(name):
    for E in fixture_presheaves(fixture(name)):
        heyting_laws(E)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_yoneda_bijection_intertwines(name):
    C = fixture(name)
    tops = enumerate_topologies(C)
    for c in C.objects:
        y = yoneda(C, c)
        sieves = enumerate_sieves(C, c)
        assert set(enumerate_subpresheaves(y)) == {sieve_to_subpresheaf(S) for S in sieves}
        for S in sieves:
            A = sieve_to_subpresheaf(S)
            assert sub_not(A) == sieve_to_subpresheaf(sieve_not(S))
            for T in sieves:
                assert sub_implies(A, sieve_to_subpresheaf(T)) == sieve_to_subpresheaf(sieve_implies(S, T))
            for J in tops:
                assert close_subobject(J, A) == sieve_to_subpresheaf(close_sieve(J, S))


def closure_laws(J, E):
    subs = enumerate_subpresheaves(E)
    for A in subs:
        cl = close_subobject(J, A)
        assert A <= cl and close_subobject(J, cl) == cl
        assert is_dense_mono(J, A) == (cl == full_sub(E))
        for B in subs:
            if A <= B:
                assert cl <= close_subobject(J, B)
            assert close_subobject(J, sub_meet(A, B)) == sub_meet(cl, close_subobject(J, B))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_closure_laws(name):
    C = fixture(name)
    for J in enumerate_topologies(C):
        for E in fixture_presheaves(C):
            closure_laws(J, E)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_negation_closed_below_dense(name):
    C = fixture(name)
    D = dense_topology(C)
    for J in enumerate_topologies(C):
        if not topology_leq(J, D):
            continue
        for E in fixture_presheaves(C):
            for A in enumerate_subpresheaves(E):
                assert close_subobject(J, sub_not(A)) == sub_not(A)
                if is_closed_subobject(J, A):
                    assert closed_sub_not(J, A) == sub_not(A)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_densifying_is_minimal(name):
    C = fixture(name)
    tops = enumerate_topologies(C)
    for J in tops:
        for E in fixture_presheaves(C):
            for A in enumerate_subpresheaves(E):
                K = densifying_topology(J, A)
                assert is_dense_mono(K, A) and topology_leq(J, K)
                assert K == smallest_topology(C, tops, lambda L: topology_leq(J, L) and is_dense_mono(L, A))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_representables_suffice(name):
    C = fixture(name)

    def generated(J, presheaves):
        extra = []
        for E in presheaves:
            for A in enumerate_subpresheaves(E):
                X = sub_join(A, sub_not(A))
                extra += [(c, element_sieve(X, c, e)) for c in C.objects for e in E.values[c]]
        return generate_topology(C, family_of(J) + extra)

    everything = fixture_presheaves(C)
    reps = [E for E in everything if E.representing is not None]
    for J in enumerate_topologies(C):
        assert generated(J, reps) == generated(J, everything)


@settings(max_examples=25, deadline=None)
@given(small_categories)
def test_random_presheaf_laws(C):
    assume(sieve_count(C) <= 12)
    tops = enumerate_topologies(C)
    for E in [yoneda(C, c) for c in C.objects] + [terminal_presheaf(C)]:
        heyting_laws(E)
        for J in tops:
            closure_laws(J, E)


def test_file_format(walk):
    E = fixture_presheaves(walk)[-1]
    assert E.name == "walk_pair"
    data = E.to_dict()
    assert data["restriction"]["u"] == {"p": "x", "q": "x"}
    assert Presheaf.from_dict(walk, data) == E
    A = Subpresheaf(E, {"a": {"x"}, "b": {"p"}})
    assert A.to_dict() == {"presheaf": "walk_pair", "chosen": {"a": ["x"], "b": ["p"]}}
    assert Subpresheaf.from_dict(E, A.to_dict()) == A
