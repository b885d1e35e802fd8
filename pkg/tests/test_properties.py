from hypothesis import given, settings, strategies as st

from disordr.disord import (
    compatible,
    extract_bool,
    make_disord,
    reduce,
    replace_bool,
    reverse,
    sort_plain,
)
from disordr.mvp import Monomial, Mvp, coeffs, mvp_from_triples, powers, vars
from disordr.polytext import format_terms, parse_mvp
from disordr.provenance import ProvenanceHash, involute_reverse
from disordr.storage import Shuffle, storage_order

tokens = st.binary(min_size=20, max_size=20).map(ProvenanceHash)
ints = st.integers(-50, 50)
vectors = st.lists(ints, max_size=12)

monomials = st.dictionaries(st.sampled_from("abcxyz"), st.integers(1, 5), max_size=3).map(
    lambda d: Monomial(d.items())
)
polys = st.dictionaries(monomials, st.integers(-9, 9).filter(bool), max_size=5).map(Mvp)
real_polys = st.dictionaries(
    monomials,
    st.one_of(st.integers(-9, 9), st.floats(-100, 100, allow_nan=False).map(lambda x: round(x, 3))),
    max_size=5,
).map(lambda d: Mvp({m: c for m, c in d.items() if c}))


@given(tokens)
def test_reverse_is_an_involution(h):
    assert involute_reverse(involute_reverse(h)) == h
    assert involute_reverse(h) != h


@given(vectors, st.integers(-50, 50))
def test_replace_with_own_extract_is_identity(values, cut):
    d = make_disord(values)
    mask = d < cut
    assert replace_bool(d, mask, extract_bool(d, mask)).identical(d)


@given(vectors)
def test_double_reverse(values):
    d = make_disord(values)
    rr = reverse(reverse(d))
    assert compatible(rr, d) and rr.elements == d.elements


@given(vectors, st.integers(0, 2 ** 32))
def test_answers_do_not_depend_on_storage(values, seed):
    def answers():
        d = make_disord(values)
        e = d * 3 - 1
        d = replace_bool(d, e > 4, extract_bool(e, e > 4))
        return sort_plain(d), reduce("sum", d), reduce("any", d > 7)

    with storage_order(Shuffle(seed)):
        shuffled = answers()
    assert shuffled == answers()


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    zero, one = Mvp(), Mvp.constant(1)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p and (p * zero).is_zero
    assert (p - p).is_zero
    assert (p + q) * (p - q) == p ** 2 - q ** 2


@given(real_polys)
def test_print_parse_round_trip(p):
    assert parse_mvp(format_terms(p)) == p


@given(polys)
def test_triples_reassemble(p):
    assert mvp_from_triples(vars(p), powers(p), coeffs(p)) == p


@given(polys, st.integers(0, 2 ** 32))
def test_polynomial_print_does_not_depend_on_storage(p, seed):
    text = format_terms(p)
    with storage_order(Shuffle(seed)):
        shuffled = Mvp(dict(p.terms))
        assert format_terms(shuffled) == text
        assert sorted(coeffs(shuffled).elements) == sorted(coeffs(p).elements)


@given(polys, polys)
def test_no_stored_zeros(p, q):
    for r in (p + q, p - q, p * q, p - p, 3 * p, p ** 2):
        assert all(c != 0 for c in r.terms.values())
        assert all(e != 0 for m in r.terms for e in m.exponents)
