import pytest

from conftest import periods
from hopsym import symmetries as sy
from hopsym.hopping import SignSeq, hopping_poly, transfer_trace
from hopsym.polyring import IntPoly, compose
from table_data import COUNTS_2_TO_7, TABLE1

L = IntPoly.x()


@pytest.fixture(scope="module")
def S7():
    return sy.enumerate_S(7)


def test_table_rows_exact(S7):
    rows = S7.rows()
    assert len(rows) == len(TABLE1)
    for (label, entry), (want_label, k, coeffs) in zip(rows, TABLE1):
        assert label == want_label
        assert tuple(entry.k) == k
        assert entry.p.coeffs == coeffs


def test_each_listed_k_maps_to_listed_poly():
    for _, k, coeffs in TABLE1:
        assert hopping_poly(k).coeffs == coeffs


def test_distinct_counts(S7):
    assert tuple(len(S7.distinct(m)) for m in range(2, 8)) == COUNTS_2_TO_7


def test_degree_two_only():
    S = sy.enumerate_S(2)
    assert [(tuple(e.k), e.p) for e in S.all_entries()] == [((-1, 1), L**2)]


def test_degree_six_slice(S7):
    got = set(S7.polynomials(6))
    assert got == {L**6 - 4 * L**4 + 3 * L**2, L**6 - L**2, L**6 + 4 * L**4 + 3 * L**2}
    assert len(S7.degree_entries(7)) >= 8


def test_enumerate_rejects_small_degree():
    with pytest.raises(ValueError):
        sy.enumerate_S(1)


@pytest.mark.parametrize("m", range(2, 10))
def test_membership_matches_brute_force(m):
    # oracle: every sign sequence, swapped tail, transfer-matrix polynomial
    want = set()
    for k in periods(m):
        if tuple(k[-2:]) != (-1, 1):
            continue
        k_hat = SignSeq(tuple(k[:-2]) + (1, -1))
        if transfer_trace(k) == transfer_trace(k_hat):
            want.add(tuple(k))
    S = sy.enumerate_S(m)
    assert {tuple(e.k) for e in S.degree_entries(m)} == want


def test_entries_are_consistent(S15):
    for e in S15.all_entries():
        assert e.p == hopping_poly(e.k) == hopping_poly(e.k_hat)
        assert e.p.is_monic and e.p.degree == len(e.k)
        diff = [i for i, (a, b) in enumerate(zip(e.k, e.k_hat)) if a != b]
        assert diff == [len(e.k) - 2, len(e.k) - 1]
    assert sy.recheck(S15) == []


def test_distinct_counts_up_to_15(S15):
    want = [1, 2, 2, 4, 3, 8, 8, 14, 14, 32, 30, 64, 60, 120]
    assert [len(S15.distinct(m)) for m in range(2, 16)] == want


@pytest.mark.parametrize("m", [2, 3, 9, 12])
def test_trivial_families(S15, m):
    assert sy.trivial_families_present(S15, m)


def test_count_report_examples(S7):
    rows = {r.m: r for r in sy.count_report(S7)}
    assert (rows[5].count, rows[5].conjectured) == (4, 4)
    assert (rows[6].count, rows[6].conjectured) == (3, 4)
    assert (rows[2].count, rows[2].conjectured) == (1, 1)
    assert "6" in sy.format_count_report(list(rows.values()))


def test_closure_examples(S7):
    T = sy.closure_T(S7, 7, 1)
    assert sorted(ce.q.coeffs for ce in T) == sorted(p.coeffs for p in S7.polynomials())
    T2 = sy.closure_T(S7, 6, 2)
    qs = {ce.q for ce in T2}
    assert L**4 in qs
    assert compose(L**3 - L, L**2) == L**6 - L**2 and L**6 - L**2 in qs


def test_closure_is_closed(S7):
    T = sy.closure_T(S7, 12, 3)
    qs = {ce.q for ce in T}
    reps = set(S7.polynomials())
    assert reps <= qs
    for ce in T:
        assert ce.q == _fold(ce.chain)
        assert ce.q.degree <= 12 and len(ce.chain) <= 3
    for a in qs:
        for p in reps:
            c = compose(a, p)
            if c.degree <= 12 and len(_chain_of(T, a)) < 3:
                assert c in qs


def _fold(chain):
    q = chain[-1].p
    for e in reversed(chain[:-1]):
        q = compose(e.p, q)
    return q


def _chain_of(T, q):
    return min((ce.chain for ce in T if ce.q == q), key=len)


def test_table_and_csv_formats(S7):
    text = S7.format_table()
    assert "5.2" in text and "λ^5 - λ^3 + λ" in text
    csv = S7.to_csv(representatives_only=True).splitlines()
    assert csv[0] == "degree,k,coeffs" and len(csv) == 21
