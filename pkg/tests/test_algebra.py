import itertools
import random

import pytest
from hypothesis import given, strategies as st

from loopbrauer import diagrams as dg
from loopbrauer.algebra import (ONE_PARAM, TWO_PARAM, AlgebraElement, CacheVersionMismatch,
                                CorruptCache, MultTable, check_relations, compute_mult_table,
                                d_diagrams, elem, gen, generated_subalgebra, mult_table,
                                multiply_in_quotient, symmetric_generators, table_path)
from loopbrauer.diagrams import RankMismatch, StrandMismatch
from loopbrauer.scalars import BiLaurent, LaurentPoly

X = LaurentPoly.x()


def basis_elements(n, mode, family="A"):
    return st.sampled_from(dg.enumerate_diagrams(family, n)).map(
        lambda d: AlgebraElement.basis(d, mode))


def combos(n, mode):
    coeffs = st.integers(-3, 3).map(LaurentPoly.const) if mode == ONE_PARAM else \
        st.integers(-3, 3).map(BiLaurent.const)
    return st.lists(st.tuples(st.sampled_from(dg.enumerate_diagrams("A", n)), coeffs),
                    max_size=3).map(lambda items: AlgebraElement(n, items, mode))


def test_product_examples():
    e1 = gen("e", 1, 2)
    assert e1 * e1 == e1.scale(X)
    assert str(e1 * e1) == "x * e1"
    a = elem(dg.enumerate_diagrams("A", 2)[3])
    assert AlgebraElement.one(2) * a == a == a * AlgebraElement.one(2)
    assert gen("u", 2, 2) * e1 == gen("u", 1, 2) * e1


def test_two_param_examples():
    e1 = gen("e", 1, 2, TWO_PARAM)
    u1 = gen("u", 1, 2, TWO_PARAM)
    assert e1 * e1 == e1.scale(BiLaurent.monomial((1, 0)))
    assert str(u1 * u1) == "x2 * u1"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_param_specializes_to_one_param(n):
    basis = dg.enumerate_diagrams("A", n)
    for a, b in itertools.product(basis, repeat=2):
        two = AlgebraElement.basis(a, TWO_PARAM) * AlgebraElement.basis(b, TWO_PARAM)
        assert two.specialize() == elem(a) * elem(b)


@pytest.mark.parametrize("mode", [ONE_PARAM, TWO_PARAM])
@given(data=st.data())
def test_associativity_and_star(mode, data):
    a, b, c = (data.draw(combos(3, mode)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert (a * b).star() == b.star() * a.star()
    assert a * (b + c) == a * b + a * c


@given(basis_elements(3, ONE_PARAM), basis_elements(3, ONE_PARAM))
def test_ideal_property(a, b):
    (da,) = a.support()
    m = da.rank
    for d in (a * b).support() + (b * a).support():
        assert d.rank <= m


@given(basis_elements(3, ONE_PARAM, "L"), basis_elements(3, ONE_PARAM, "L"))
def test_loopless_closure(a, b):
    p = a * b
    assert p.is_monomial()
    assert all(d.in_family("L") for d in p.support())


def test_top_quotient_is_group_algebra():
    n = 3
    perms = list(itertools.permutations(range(n)))
    for p, q in itertools.product(perms, repeat=2):
        a, b = elem(dg.perm_diagram(p)), elem(dg.perm_diagram(q))
        assert multiply_in_quotient(a, b, n) == elem(dg.perm_diagram(dg.perm_compose(p, q)))


def test_quotient_examples():
    u1, e1 = gen("u", 1, 2), gen("e", 1, 2)
    assert multiply_in_quotient(u1, u1, 1) == u1.scale(X)
    assert (e1 * u1).support()[0].rank == 0
    with pytest.raises(RankMismatch):
        multiply_in_quotient(e1, u1, 1)


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        gen("e", 1, 2) * gen("e", 1, 3)


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("mode", [ONE_PARAM, TWO_PARAM])
def test_relations(n, mode):
    results = check_relations(n, mode)
    assert results and all(r.passed for r in results), [r for r in results if not r.passed]


def test_d1_holds_up_to_one_power_of_x():
    res = {r.name.split(" ")[0]: r for r in check_relations(3) if r.x_power is not None}
    assert res["d1"].x_power == 1
    assert all(res[k].x_power == 0 for k in ("d2", "d3", "d4"))


def test_d_diagrams_star():
    d = d_diagrams(4)
    word = gen("u", 4, 4) * gen("g", 3, 4)
    assert elem(dg.star(d["d2"])) == word.star()
    assert dg.star(d["d2"]) != d["d2"]


def test_generated_subalgebra_examples():
    n = 2
    S = symmetric_generators(n)
    assert generated_subalgebra(S, n) == set(dg.enumerate_diagrams("S", n))
    L = generated_subalgebra(S + [gen("u", n, n)], n)
    assert L == set(dg.enumerate_diagrams("L", n)) and len(L) == 7
    A = generated_subalgebra(S + [gen("u", n, n), gen("e", n - 1, n)], n)
    assert len(A) == 10


@pytest.mark.parametrize("family,n,size", [("A", 2, 100), ("L", 3, 1156)])
def test_table_sizes(family, n, size):
    assert len(compute_mult_table(family, n).entries) == size


@pytest.mark.parametrize("mode", [ONE_PARAM, TWO_PARAM])
def test_table_matches_direct_products(mode):
    table = compute_mult_table("A", 2, mode)
    basis = table.basis
    for (i, j) in table.entries:
        direct = AlgebraElement.basis(basis[i], mode) * AlgebraElement.basis(basis[j], mode)
        assert table.product(i, j) == direct


def test_table_cache_round_trip(tmp_path):
    t1 = mult_table("L", 2, TWO_PARAM, tmp_path)
    path = table_path(tmp_path, "L", 2, TWO_PARAM)
    raw = path.read_bytes()
    assert raw.startswith(b"LOOPBRAUER-TABLE v1 L 2 two-param\n") and b"\r" not in raw
    t2 = mult_table("L", 2, TWO_PARAM, tmp_path)
    assert t1 == t2
    assert t2.dumps().encode() == raw
    parallel = compute_mult_table("L", 2, TWO_PARAM, jobs=2)
    assert parallel.dumps().encode() == raw


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("LOOPBRAUER_CACHE", str(tmp_path))
    mult_table("A", 1)
    assert table_path(tmp_path, "A", 1, ONE_PARAM).exists()


def test_cache_mismatch_and_corruption(tmp_path):
    text = compute_mult_table("A", 1).dumps()
    with pytest.raises(CacheVersionMismatch):
        MultTable.loads(text.replace(" v1 ", " v0 "))
    with pytest.raises(CacheVersionMismatch):
        MultTable.loads(text, family="L")
    with pytest.raises(CacheVersionMismatch):
        MultTable.loads(text, n=2)
    with pytest.raises(CorruptCache):
        MultTable.loads(text.rsplit("\n", 2)[0] + "\n")
    with pytest.raises(CorruptCache):
        MultTable.loads(text.replace("-> 0", "-> zz", 1))
    with pytest.raises(CorruptCache):
        MultTable.loads("")
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"\xff\xfe")
    with pytest.raises(CorruptCache):
        MultTable.load(bad)


def test_deleting_cache_keeps_results(tmp_path):
    first = mult_table("L", 2, ONE_PARAM, tmp_path)
    table_path(tmp_path, "L", 2, ONE_PARAM).unlink()
    assert mult_table("L", 2, ONE_PARAM, tmp_path) == first == compute_mult_table("L", 2)


def test_random_triples_seeded():
    rng = random.Random(7)
    basis = dg.enumerate_diagrams("A", 3)
    for _ in range(50):
        a, b, c = (elem(rng.choice(basis)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
