import pytest

from matchpoly.groups import FiniteGroup, GroupFormatError, Permutation, symmetric_group_perms


def test_permutation_basics():
    p = Permutation.from_cycles(3, [(0, 1, 2)])
    assert p.image == (1, 2, 0)
    q = Permutation.from_cycles(3, [(0, 1)])
    assert (p * q)(0) == p(q(0)) == 2
    assert p * p.inverse() == Permutation.identity(3)
    assert str(p) == "(0 1 2)" and str(Permutation.identity(2)) == "()"
    assert q.fixed_points() == [2]
    assert q.matrix() == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_symmetric_group_lex_order():
    perms = symmetric_group_perms(3)
    assert len(perms) == 6
    assert [p.image for p in perms] == sorted(p.image for p in perms)
    assert perms[0] == Permutation.identity(3)


def test_generated_groups():
    S3 = FiniteGroup.from_permutations([Permutation((1, 2, 0)), Permutation((1, 0, 2))])
    assert S3.order == 6
    S3._validate()
    assert FiniteGroup.symmetric(4).order == 24
    Z4 = FiniteGroup.cyclic(4)
    assert Z4.inv(1) == 3 and Z4.identity == 0
    assert Z4.regular_matrix(1)[0] == [0, 1, 0, 0]


def test_group_json():
    G = FiniteGroup.from_json({"order": 2, "table": [[0, 1], [1, 0]]})
    assert G.order == 2
    G = FiniteGroup.from_json({"perm_gens": [[1, 2, 3, 0]]})
    assert G.order == 4


@pytest.mark.parametrize(
    "obj",
    [
        {"table": [[0, 1], [0, 1]]},
        {"table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]},
        {"order": 3, "table": [[0, 1], [1, 0]]},
        {"perm_gens": [[0, 0]]},
        {"something": 1},
    ],
)
def test_invalid_groups(obj):
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_json(obj)


def test_nonassociative_table_rejected():
    # a loop (quasigroup with identity) of order 5 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupFormatError):
        FiniteGroup(table)


def test_order_cap():
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_permutations([Permutation((1, 2, 3, 4, 5, 0)), Permutation((1, 0, 2, 3, 4, 5))])
