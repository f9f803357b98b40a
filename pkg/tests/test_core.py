import pytest

from mpcompress.core import (
    ChainComplex,
    Grade,
    GradedMatrix,
    Label,
    LabelTable,
    ValidationError,
    add_column,
    chunks,
    colex_normalize,
    complex_from_generators,
    identity_permutation,
    is_local,
    normalize_values,
    pivot,
    sym_diff,
)


def g(x, y):
    return Grade(x, y)


def test_grade_partial_order():
    assert g(0, 0) <= g(1, 2)
    assert not g(1, 0) <= g(0, 1)
    assert not g(0, 1) <= g(1, 0)
    assert g(1, 1) < g(1, 2)
    assert not g(1, 1) < g(1, 1)


def test_grade_equality_ignores_raw_tokens():
    a = Grade(1, 2, ("0.5", "3"))
    b = Grade(1, 2, ("1/2", "3"))
    assert a == b and hash(a) == hash(b)
    assert not a.identical(b)
    assert Grade(4, 5).tokens() == ("4", "5")


def test_sym_diff_and_pivot():
    assert sym_diff([0, 2, 5], [2, 3]) == [0, 3, 5]
    assert sym_diff([], [1, 4]) == [1, 4]
    assert sym_diff([1, 4], [1, 4]) == []
    assert pivot([0, 3, 7]) == 7
    assert pivot([]) is None


def test_add_column_is_an_involution():
    m = GradedMatrix([[0, 1], [1, 2]], [g(1, 1), g(2, 2)], [g(0, 0), g(1, 0), g(1, 1)])
    before = [list(c) for c in m.columns]
    add_column(m, 0, 1)
    assert m.columns[1] == [0, 2]
    add_column(m, 0, 1)
    assert m.columns == before


def test_add_column_rejects_grade_violations():
    m = GradedMatrix([[0], [0]], [g(1, 0), g(0, 1)], [g(0, 0)])
    with pytest.raises(ValueError):
        add_column(m, 0, 1)
    with pytest.raises(ValueError):
        add_column(m, 1, 1)


def test_add_column_does_not_mutate_shared_lists():
    shared = [0]
    m = GradedMatrix([shared, [0, 1]], [g(0, 0), g(1, 1)], [g(0, 0), g(1, 1)])
    snapshot = m.copy()
    add_column(m, 0, 1)
    assert shared == [0]
    assert snapshot.columns[1] == [0, 1]


def test_is_local():
    m = GradedMatrix(
        [[0], [0, 1], []],
        [g(0, 0), g(1, 1), g(2, 2)],
        [g(0, 0), g(1, 0)],
    )
    assert is_local(m, 0)
    assert not is_local(m, 1)  # pivot row (1,0) below column (1,1)
    assert not is_local(m, 2)  # zero column


def test_validate_catches_bad_matrices():
    with pytest.raises(ValidationError):
        GradedMatrix([[1]], [g(0, 0)], [g(0, 0)]).validate()  # index out of range
    with pytest.raises(ValidationError):
        GradedMatrix([[0]], [g(0, 0)], [g(1, 0)]).validate()  # not homogeneous
    with pytest.raises(ValidationError):
        GradedMatrix([[], []], [g(0, 1), g(1, 0)], []).validate()  # not colex
    GradedMatrix([[], []], [g(0, 1), g(1, 0)], []).validate(require_colex=False)


def test_complex_validate_rejects_nonzero_composite():
    d1 = GradedMatrix([[0, 1], [1, 2]], [g(0, 0), g(0, 0)], [g(0, 0)] * 3)
    d2 = GradedMatrix([[0]], [g(0, 0)], [g(0, 0), g(0, 0)])
    with pytest.raises(ValidationError):
        ChainComplex([d2, d1]).validate()


def test_chunks():
    grades = [g(0, 0), g(0, 0), g(1, 0), g(0, 1), g(0, 1)]
    assert chunks(grades) == [(0, 2), (2, 3), (3, 5)]
    assert chunks([]) == []


def test_normalize_values_uses_exact_numeric_order():
    ranks = normalize_values(["0.5", "1/2", "-3", "10", "2"])
    assert ranks == {"0.5": 1, "1/2": 1, "-3": 0, "10": 3, "2": 2}


def test_colex_normalize_swaps_incomparable_grades():
    # an edge listed at (1,2) before one at (2,1) must come second in colex order
    levels = [
        [(("0", "0"), []), (("0", "0"), [])],
        [(("1", "2"), [0, 1]), (("2", "1"), [1])],
    ]
    c = complex_from_generators(levels)
    d1 = c.boundary(1)
    assert [x.key for x in d1.col_grades] == [(2, 1), (1, 2)]
    assert [x.tokens() for x in d1.col_grades] == [("2", "1"), ("1", "2")]
    assert d1.columns == [[1], [0, 1]]


def test_colex_normalize_is_idempotent(running_example):
    again, perms = colex_normalize(running_example)
    assert all(identity_permutation(p) for p in perms)
    assert again.same_as(running_example)


def test_colex_normalize_is_stable():
    levels = [[(("1", "0"), []), (("0", "0"), []), (("1", "0"), [])]]
    c = complex_from_generators(levels + [[(("1", "0"), [0, 2])]])
    # the two (1,0) vertices keep their relative order after the (0,0) one
    assert c.boundary(1).columns == [[1, 2]]


def test_complex_from_generators_rejects_repeated_index():
    with pytest.raises(ValidationError):
        complex_from_generators([[(("0", "0"), [])], [(("0", "0"), [0, 0])]])


def test_label_table_pairs():
    t = LabelTable([3, 2])
    t.pair(1, 1, 2)
    assert t.labels[1][1] == Label.NEGATIVE and t.partner[1][1] == 2
    assert t.labels[0][2] == Label.POSITIVE and t.partner[0][2] == 1
    assert t.counts(0) == {"unlabeled": 2, "global": 0, "positive": 1, "negative": 0}


def test_generator_counts(running_example):
    counts = running_example.generator_counts()
    assert counts[(0, (0, 0))] == 4
    assert counts[(1, (0, 0))] == 4
    assert sum(counts.values()) == 15
