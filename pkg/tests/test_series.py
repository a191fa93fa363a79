import pytest

from pgroupdim.errors import ParameterError
from pgroupdim.group import GroupParams
from pgroupdim.series import (
    SeriesKind,
    center_index_formula,
    center_index_report,
    closed_form_report,
    frattini_bracket,
    frattini_sandwich_report,
    gamma_cap_center,
    gamma_rank_report,
    gamma_term,
    nilpotency_class,
    power_sandwich_report,
    series,
    wreath_quotient_report,
)
from pgroupdim.subgroups import center_subgroup, intersect


def test_series_kind_parse():
    assert SeriesKind.parse("l") is SeriesKind.L
    assert SeriesKind.parse("Pstar") is SeriesKind.PSTAR
    with pytest.raises(ParameterError):
        SeriesKind.parse("Q")


@pytest.mark.parametrize("kind", list(SeriesKind))
def test_series_terms_descend_and_validate(kind, p31):
    ser = series(kind, p31)
    assert ser.terms[0].is_full()
    assert ser.terms[-1].is_trivial()
    for a, b_ in zip(ser.terms, ser.terms[1:]):
        assert a.contains_subgroup(b_)
        assert a.log_order > b_.log_order
        b_.validate()
    # indices beyond the tail read as trivial
    assert ser.term(len(ser.terms) + ser.start_index + 5).is_trivial()


def test_gamma_class(p31, p32, p51):
    assert nilpotency_class(p31) == 5
    assert nilpotency_class(p32) == 17
    assert nilpotency_class(p51) == 9


@pytest.mark.parametrize(
    "pk,ranks,total",
    [
        ((3, 1), [2, 1, 2, 1, 1], 7),
        ((3, 2), [3, 1, 2, 2, 3, 3, 4, 4, 5, 4, 4, 3, 3, 2, 2, 1, 1], 47),
        ((5, 1), [2, 1, 2, 2, 3, 2, 2, 1, 1], 16),
    ],
)
def test_gamma_ranks(pk, ranks, total):
    P = GroupParams(*pk)
    rows = gamma_rank_report(P)
    got = [r["computed"] for r in rows if isinstance(r["index"], int)]
    assert got == ranks
    assert sum(got) == total
    assert all(r["pass"] for r in rows)


@pytest.mark.parametrize("kind", [SeriesKind.L, SeriesKind.D])
@pytest.mark.parametrize("pk", [(3, 1), (3, 2)])
def test_closed_forms(kind, pk):
    rows = closed_form_report(kind, GroupParams(*pk))
    assert all(r["pass"] for r in rows)


def test_lower_p_series_length(p31, p32):
    # the lower p-series stays proper for exactly 2n - 1 levels
    for P in (p31, p32):
        ser = series(SeriesKind.L, P)
        assert len(ser.terms) == 2 * P.n


def test_gamma_cap_center(p32):
    Z = center_subgroup(p32)
    # at depth 3 the slice is still everything
    assert gamma_cap_center(3, p32, verify=True) == Z
    cap5 = gamma_cap_center(5, p32, verify=True)
    assert Z.log_order - cap5.log_order == 2
    cap10 = gamma_cap_center(10, p32, verify=True)
    assert Z.log_order - cap10.log_order == 16
    assert center_index_formula(10) == 16
    with pytest.raises(ParameterError):
        gamma_cap_center(1, p32)


def test_center_index_report_range(p31, p32):
    for P, hi in ((p31, 5), (p32, 11)):
        rows = center_index_report(P)
        rng_row = [r for r in rows if r["index"] == "validated_range"][0]
        assert rng_row["computed"] == f"2..{hi}"
        assert rng_row["pass"]
        assert all(r["zspan_equal"] for r in rows if r["index"] != "validated_range")


def test_frattini_sandwich(p31, p32):
    for P in (p31, p32):
        rows = frattini_sandwich_report(P)
        assert rows and all(r["pass"] for r in rows)


def test_frattini_first_term_is_exact(p31, p32):
    # at the first level both companions coincide with the term itself
    for P in (p31, p32):
        lo, hi = frattini_bracket(1, P)
        f1 = series(SeriesKind.F, P).term(1)
        assert lo == f1 and hi == f1


def test_power_sandwich(p32):
    rows = power_sandwich_report(p32, (0, 1, 2))
    assert all(r["pass"] for r in rows)


def test_wreath_quotient_ranks(p31, p32, p51):
    for P in (p31, p32, p51):
        rows = wreath_quotient_report(P)
        assert all(r["pass"] for r in rows)
        got = [r["computed"] for r in rows if isinstance(r["index"], int)]
        assert got == [P.k + 1] + [1] * (P.n - 1)


def test_gamma_center_slices_are_nested(p32):
    Z = center_subgroup(p32)
    prev = Z
    for i in range(2, 19):
        cap = intersect(gamma_term(i, p32), Z)
        assert prev.contains_subgroup(cap)
        prev = cap
    assert prev.is_trivial()
