from fractions import Fraction

import pytest

from loopbrauer import analysis
from loopbrauer.analysis import (H2, U, V2, branching_check, central_checks, class_sum_check,
                                 content_identity, ind_res_check, radical_scan)
from loopbrauer.cellmod import cell_module
from loopbrauer.diagrams import Diagram, InvalidT
from loopbrauer.scalars import EvalAtZero, LaurentPoly
from loopbrauer.symgroup import InvalidShapes, contents_sum, partitions_of


def all_lams(n, tmin=1):
    return [lam for t in range(tmin, n + 1) for lam in partitions_of(n - t)]


def test_branching_examples():
    r = branching_check("A", 2, (1,))
    assert (r["dim"], r["sub_restricted"], r["sub_same"], r["quotient"]) == (2, 1, 1, 0)
    r = branching_check("A", 2, ())
    assert (r["dim"], r["sub_restricted"] + r["sub_same"], r["quotient"]) == (2, 1, 1)
    r = branching_check("L", 2, ())
    assert (r["dim"], r["sub_same"], r["quotient"]) == (1, 1, 0)
    with pytest.raises(InvalidT):
        branching_check("A", 2, (2,))


@pytest.mark.parametrize("family,n", [("A", n) for n in range(1, 4)] +
                         [("L", n) for n in range(1, 5)])
def test_branching_everywhere(family, n):
    for lam in all_lams(n):
        r = branching_check(family, n, lam)
        assert r["passed"], r


def test_branching_witness_detects_wrong_map(monkeypatch):
    real = analysis._remove_vertices

    def relabelled(d, top, bottom):
        # correct removal followed by swapping the first two top vertices
        out = real(d, top, bottom)
        swap = {0: 1, 1: 0}
        partner = [0] * (2 * out.n)
        for e, f in enumerate(out.partner):
            partner[swap.get(e, e)] = swap.get(f, f)
        return Diagram(out.n, tuple(partner))

    monkeypatch.setattr(analysis, "_remove_vertices", relabelled)
    r = branching_check("L", 4, (2,))
    assert not r["passed"]
    assert not r["witness"]["equivariant"] or not r["witness"]["bijective"]


def test_ind_res_examples():
    r = ind_res_check("A", 1, (1,), witness=False)
    assert (r["dim"], r["sub"], r["quotient"]) == (6, 4, 2)
    r = ind_res_check("A", 1, (), witness=False)
    assert r["dim"] == 4 and r["sub"] + r["quotient"] == 4
    r = ind_res_check("L", 2, (1,), witness=False)
    assert (r["dim"], r["sub"], r["quotient"]) == (4, 4, 0)
    with pytest.raises(InvalidT):
        ind_res_check("A", 1, (2,))


@pytest.mark.parametrize("family", ["A", "L"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ind_res_everywhere(family, n):
    for lam in all_lams(n, tmin=0):
        assert ind_res_check(family, n, lam)["passed"]


def test_central_elements_shape():
    assert len(U(2, 3).coeffs) == 3
    assert len(V2(3).coeffs) == len(H2(3).coeffs) == 3
    assert U(0, 2) == U(0, 2) * U(0, 2)


@pytest.mark.parametrize("family,n", [("A", 2), ("A", 3), ("L", 2), ("L", 3)])
def test_central_checks(family, n):
    results = central_checks(family, n)
    assert results and all(r["passed"] for r in results), results


def test_central_example_names():
    names = [r["name"] for r in central_checks("L", 3)]
    assert "U_2 = x^2 on M_L(1)" in names
    names = [r["name"] for r in central_checks("A", 3)]
    assert any(nm.startswith("H_2 cap block") and "(1)" in nm for nm in names)


def test_vector_check_rejects_wrong_eigenvalue():
    M = cell_module("A", 2, (1,))
    x2 = LaurentPoly.monomial(2)
    r = analysis._vector_check("wrong", U(1, 2), M, lambda a, k: {M.flat(a, k): x2})
    assert not r["passed"]


def test_content_identity_examples():
    assert content_identity((2,), (), "mixed") == 1
    assert content_identity((1, 1), (), "cap_only") == 2
    for n in range(2, 6):
        lam, mu = (n,), (n - 2,) if n > 2 else ()
        assert content_identity(lam, mu, "cap_only") == 1 - contents_sum(lam) + contents_sum(mu)
    assert content_identity((2, 1), (2,)) == 0
    with pytest.raises(InvalidShapes):
        content_identity((3,), ())
    with pytest.raises(InvalidShapes):
        content_identity((1,), (1,))


def test_content_identity_integer():
    for c in analysis.content_candidates(4):
        assert isinstance(c["x"], Fraction) and c["x"].denominator == 1


def test_radical_scan_examples():
    r = radical_scan("L", 3, ["1", "-1", "1/2", "3"])
    assert not r["flags"]
    seen = [(m["t"], tuple(m["lambda"])) for m in r["modules"]]
    assert sorted(seen) == sorted((t, lam) for t in range(4) for lam in partitions_of(3 - t))
    assert len(set(seen)) == len(seen)
    r = radical_scan("A", 3, ["1/2", "5/2", "-3/2"])
    assert not r["flags"]
    r = radical_scan("A", 2, ["1"])
    assert r["flags"] == [{"t": 2, "lambda": [], "x0": "1", "radical_dim": 1, "integer": True,
                           "content_candidate": True}]
    assert content_identity((2,), (), "mixed") == 1
    with pytest.raises(EvalAtZero):
        radical_scan("A", 2, ["0"])


def test_radical_scan_parallel_matches_serial():
    a = radical_scan("A", 3, ["1", "2"], jobs=1)
    b = radical_scan("A", 3, ["1", "2"], jobs=2)
    a.pop("timings"), b.pop("timings")
    assert a == b


@pytest.mark.parametrize("lam", [lam for m in range(1, 5) for lam in partitions_of(m)])
def test_class_sum_check(lam):
    assert class_sum_check(lam)["passed"]
