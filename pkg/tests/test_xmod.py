import json

import pytest

from crossmod.cohomology import cohomology_class, restrict_cochain
from crossmod.extensions import abstract_kernels, kernel_crossed_module, order_16_groups, small_groups
from crossmod.groups import GroupError, cyclic_group, direct_product, subgroup
from crossmod.xmod import (
    FiniteCrossedModule,
    characteristic_class,
    characteristic_cocycle,
    check_crossed_module,
    inner_crossed_module,
    normal_inclusion,
    power_map_crossed_module,
    restrict_extension,
    trivial_crossed_module,
    two_fold_extension,
)


def normal_subgroups(G):
    subs = {G.generated([a, b]) for a in range(G.order) for b in range(G.order)}
    return sorted(s for s in subs if G.is_normal(s))


def constructed_crossed_modules(corpus):
    out = []
    for name, (_, G, _) in corpus.items():
        out.append(inner_crossed_module(G))
        out.extend(normal_inclusion(G, N) for N in normal_subgroups(G))
    out.append(trivial_crossed_module(cyclic_group(4), cyclic_group(2)))
    out.append(trivial_crossed_module(cyclic_group(3), cyclic_group(2), [[0, 1, 2], [0, 2, 1]]))
    for n in range(2, 7):
        out.append(power_map_crossed_module(n))
        out.append(power_map_crossed_module(n, twisted=False))
    for N in small_groups(6):
        for Q in small_groups(4):
            out.extend(kernel_crossed_module(k) for k in abstract_kernels(N, Q))
    return out


def test_peiffer_and_axioms_exhaustive_on_constructed(corpus):
    cms = constructed_crossed_modules(corpus)
    assert len(cms) > 80
    for cm in cms:
        assert cm.check() == [], cm.name


def test_inner_examples(corpus):
    S3 = corpus["S3"][1]
    cm = inner_crossed_module(S3)
    assert cm.G.order == 6 and cm.kernel() == (0,)
    C2 = cyclic_group(2)
    cm2 = inner_crossed_module(C2)
    assert cm2.G.order == 1 and cm2.kernel() == (0, 1)
    K4 = direct_product(C2, C2)
    cm3 = inner_crossed_module(K4)
    assert cm3.G.order == 6 and set(cm3.kernel()) == set(range(4))


def test_inner_kernel_is_center(corpus):
    for _, (_, G, _) in corpus.items():
        assert set(inner_crossed_module(G).kernel()) == set(G.center)


def test_normal_inclusion_of_a3(corpus):
    S3 = corpus["S3"][1]
    A3 = [g for g in range(6) if S3.element_orders[g] != 2]
    assert normal_inclusion(S3, A3).is_valid()
    with pytest.raises(GroupError):
        normal_inclusion(S3, [0, S3.element_orders.index(2)])


def test_invalid_example_reports_equivariance(corpus):
    S3 = corpus["S3"][1]
    A3 = sorted(g for g in range(6) if S3.element_orders[g] != 2)
    x = A3[1]
    bad = check_crossed_module(cyclic_group(3), S3, (0, x, S3.mul(x, x)), [(0, 1, 2)] * 6)
    assert bad and all(r.startswith("equivariance") or r.startswith("Peiffer") or "omitted" in r for r in bad)


def test_trivial_map_with_nontrivial_action_is_valid():
    cm = trivial_crossed_module(cyclic_group(3), cyclic_group(2), [[0, 1, 2], [0, 2, 1]])
    assert cm.is_valid()


def test_trivial_crossed_module_needs_abelian_source(corpus):
    with pytest.raises(GroupError):
        trivial_crossed_module(corpus["S3"][1], cyclic_group(2))


def test_broken_axioms_are_reported():
    C2 = cyclic_group(2)
    # boundary not a homomorphism
    assert check_crossed_module(cyclic_group(3), C2, (0, 1, 1), [(0, 1, 2)] * 2)
    # action not by automorphisms
    assert check_crossed_module(C2, C2, (0, 0), [(0, 1), (0, 0)])


def test_json_round_trip():
    cm = power_map_crossed_module(3)
    again = FiniteCrossedModule.from_json(json.loads(json.dumps(cm.to_json())))
    assert again.boundary == cm.boundary and again.action == cm.action and again.C == cm.C


def test_two_fold_extension_of_zero_module():
    M, Q = cyclic_group(4), cyclic_group(3)
    ext = two_fold_extension(trivial_crossed_module(M, Q))
    assert ext.check() == []
    assert ext.Q.order == 3 and len(ext.kernel) == 4
    assert characteristic_class(ext).is_zero()


def test_two_fold_extension_power_map():
    for n in range(2, 7):
        ext = two_fold_extension(power_map_crossed_module(n))
        assert ext.check() == []
        assert ext.Q.order == n and len(ext.kernel) == n


def test_inner_s3_has_trivial_ends(corpus):
    ext = two_fold_extension(inner_crossed_module(corpus["S3"][1]))
    assert ext.Q.order == 1 and ext.kernel == (0,)
    assert characteristic_class(ext).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_power_map_class_orders(n):
    assert characteristic_class(power_map_crossed_module(n)).order == n
    assert characteristic_class(power_map_crossed_module(n, twisted=False)).is_zero()


@pytest.mark.parametrize("n", [3, 4, 6])
def test_class_independent_of_section(n):
    cm = power_map_crossed_module(n)
    base = characteristic_class(cm).coordinates
    for seed in (1, 2, 3, 17):
        assert characteristic_class(cm, seed).coordinates == base


def test_injective_boundary_gives_zero_class(corpus):
    S3 = corpus["S3"][1]
    A3 = [g for g in range(6) if S3.element_orders[g] != 2]
    assert characteristic_class(normal_inclusion(S3, A3)).is_zero()


def test_restriction_commutes_with_class():
    cm = power_map_crossed_module(4)
    ext = two_fold_extension(cm)
    z = characteristic_cocycle(ext)
    for elements in ([0], [0, 2], [0, 1, 2, 3]):
        sub = subgroup(ext.Q, elements)
        r = restrict_extension(ext, sub)
        assert r.check() == []
        assert r.crossed_module.is_valid()
        direct = cohomology_class(restrict_cochain(z, sub))
        pulled = characteristic_class(r)
        assert pulled.coordinates == direct.coordinates
    assert characteristic_class(restrict_extension(ext, [0])).is_zero()
    assert characteristic_class(restrict_extension(ext, [0, 2])).order == 2


def test_non_extendible_kernel_has_nonzero_class():
    D8 = next(g for g in order_16_groups() if g.name == "D8")
    classes = [characteristic_class(kernel_crossed_module(k)) for k in abstract_kernels(D8, cyclic_group(2))]
    assert any(not c.is_zero() for c in classes)
