"""Frieze patterns: the worked tables, soundness checks, failure modes."""

from fractions import Fraction

import pytest

from pentagram_lab.errors import ZeroDenominator
from pentagram_lab.frieze import (
    build_pattern,
    closed_form_oracles,
    diamond_soundness,
    random_a1,
    render_staggered,
    row_from_values,
    verify_T005,
    verify_embedding,
)
from pentagram_lab.projcore import INF, ProjPoint

from conftest import p1


def values(row):
    return tuple(p.p1_value() if p.is_finite else INF for p in row)


def test_full_table_over_7_5_m3():
    pat = build_pattern(row_from_values([7, 5, -3]))
    assert [values(r) for r in pat.rows] == [
        (INF, INF, INF),
        (7, 5, -3),
        (6, 1, 2),
        (Fraction(16, 3), Fraction(23, 3), Fraction(13, 9)),
        (Fraction(34, 9), Fraction(11, 6), Fraction(2, 3)),
        (3, 3, 3),
        (3, 3, 3),
    ]


def test_t005_report_over_7_5_m3():
    rep = verify_T005(row_from_values([7, 5, -3]))
    assert rep.ok
    assert rep.penultimate_constant and rep.last_constant and rep.shift_equal
    assert rep.value == p1(3)
    assert rep.expected == p1(3)


def test_table_with_interior_infinities():
    pat = build_pattern(row_from_values([1, 2, 3, 4]))
    assert len(pat.rows) == 9
    assert [values(r) for r in pat.rows[1:]] == [
        (1, 2, 3, 4),
        (Fraction(3, 2), Fraction(5, 2), Fraction(7, 2), Fraction(5, 2)),
        (Fraction(7, 4), INF, INF, Fraction(13, 4)),
        (2, INF, 3, INF),
        (Fraction(9, 4), INF, INF, Fraction(11, 4)),
        (Fraction(5, 2),) * 4,
        (Fraction(5, 2),) * 4,
        (Fraction(5, 2),) * 4,
    ]
    rep = verify_T005(row_from_values([1, 2, 3, 4]))
    assert rep.ok
    assert rep.value == p1(Fraction(5, 2))


def test_constant_first_row_is_degenerate():
    with pytest.raises(ZeroDenominator) as exc:
        build_pattern(row_from_values([5, 5, 5]))
    assert "row 3" in str(exc.value)


def test_prematurely_constant_row_is_degenerate():
    # A_2 of (1,3,1,3) is constant 2 before the closing rows; continuing by
    # copying would fabricate a limit the recurrence does not produce
    with pytest.raises(ZeroDenominator) as exc:
        build_pattern(row_from_values([1, 3, 1, 3]))
    assert "row 4" in str(exc.value)


def test_diamond_soundness_on_worked_tables():
    assert diamond_soundness(build_pattern(row_from_values([7, 5, -3])))
    assert diamond_soundness(build_pattern(row_from_values([1, 2, 3, 4])))


def test_embedding_matches_orbit_rows():
    rep = verify_embedding(row_from_values([7, 5, -3]))
    assert rep.ok
    assert rep.per_row == (True, True, True)
    assert verify_embedding(row_from_values([1, 2, 3, 4])).ok


def test_column_layout():
    pat = build_pattern(row_from_values([7, 5, -3]))
    # odd rows sit on odd columns, even rows on even, both stepping by 2 mod 2n
    assert [pat.column_of(1, j) for j in range(1, 4)] == [3, 5, 1]
    assert [pat.column_of(2, j) for j in range(1, 4)] == [4, 6, 2]
    assert [pat.column_of(3, j) for j in range(1, 4)] == [3, 5, 1]
    odd = {pat.column_of(1, j) for j in range(1, 4)}
    even = {pat.column_of(2, j) for j in range(1, 4)}
    assert odd | even == set(range(1, 7)) and not odd & even


def test_render_staggered_shape():
    text = render_staggered(build_pattern(row_from_values([7, 5, -3])))
    lines = text.splitlines()
    assert len(lines) == 7
    assert lines[0].lstrip().startswith("inf")
    assert lines[1].startswith("7")
    assert "16/3" in lines[3]


def test_closed_form_oracles():
    rep = closed_form_oracles(trials=120, seed=2)
    assert rep.ok
    assert rep.trials == 120
    assert rep.failures == ()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_survey(n):
    for s in range(10):
        a1 = random_a1(n, seed=7000 + s)
        assert verify_T005(a1).ok
        assert verify_embedding(a1).ok


def test_random_a1_deterministic():
    assert values(random_a1(4, seed=3)) == values(random_a1(4, seed=3))
    assert values(random_a1(4, seed=3)) != values(random_a1(4, seed=4))
