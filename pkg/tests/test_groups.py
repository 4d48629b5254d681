import pytest

from crossmod.groups import (
    AbelianCoordinates,
    FiniteGroup,
    GroupError,
    automorphism_permutations,
    cyclic_group,
    direct_product,
    find_isomorphism,
    homomorphisms,
    pullback,
    quotient,
    subgroup,
)
from crossmod.presentations import enumerate_presentation


def test_json_round_trip(s3):
    _, G, _ = s3
    assert FiniteGroup.from_json(G.to_json()) == G


def test_from_json_rejects_non_groups():
    with pytest.raises(GroupError):
        FiniteGroup.from_json({"order": 2, "table": [[0, 1], [1, 1]]})
    with pytest.raises(GroupError):
        FiniteGroup.from_json({"order": 3, "table": [[0, 1], [1, 0]]})


def test_automorphism_counts(corpus):
    counts = {"C2": 1, "C3": 2, "C4": 2, "K4": 6, "C5": 4, "C6": 2, "S3": 6, "D4": 8, "Q8": 24}
    for name, want in counts.items():
        _, G, _ = corpus[name]
        assert len(automorphism_permutations(G)) == want, name


def test_quotient_and_subgroup(s3):
    _, G, _ = s3
    A3 = [g for g in range(6) if G.element_orders[g] in (1, 3)]
    assert G.is_normal(A3)
    q = quotient(G, A3)
    assert q.group.order == 2
    sub = subgroup(G, A3)
    assert sub.group.order == 3 and sub.group.is_abelian()
    a = G.element_orders.index(3)
    with pytest.raises(GroupError):
        subgroup(G, [0, a])


def test_pullback_order():
    C4, C2 = cyclic_group(4), cyclic_group(2)
    f = [a % 2 for a in range(4)]
    pb = pullback(C4, f, C2, [0, 1])
    assert pb.group.order == 4


def test_homomorphism_count():
    # Hom(C4, C4) has 4 elements, Hom(C4, C2) has 2
    assert len(list(homomorphisms(cyclic_group(4), cyclic_group(4)))) == 4
    assert len(list(homomorphisms(cyclic_group(4), cyclic_group(2)))) == 2


def test_isomorphism_detection():
    K4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert find_isomorphism(K4, cyclic_group(4)) is None
    assert find_isomorphism(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)) is not None


def test_abelian_coordinates():
    G = direct_product(cyclic_group(2), cyclic_group(4))
    co = AbelianCoordinates(G, range(G.order))
    assert sorted(co.factors) == [2, 4]
    for a in range(G.order):
        assert co.element(co.coords(a)) == a
    for a in range(G.order):
        for b in range(G.order):
            s = [x + y for x, y in zip(co.coords(a), co.coords(b))]
            assert co.element(s) == G.mul(a, b)


def test_abelian_coordinates_rejects_nonabelian(s3):
    _, G, _ = s3
    with pytest.raises(GroupError):
        AbelianCoordinates(G, range(6))
