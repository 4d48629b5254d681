import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from crossmod.extensions import (
    AbstractKernel,
    Extension,
    NotExtendible,
    SearchBudgetExceeded,
    abstract_kernels,
    automorphisms,
    baer_act,
    center_subgroup,
    congruent,
    construct_extension,
    enumerate_extensions,
    extension_from_normal_subgroup,
    find_non_extendible,
    is_extendible,
    kernel_crossed_module,
    obstruction,
    oracle_extension,
    order_16_groups,
    realize_all_classes,
    second_cohomology,
    small_groups,
    split_extension,
)
from crossmod.groups import cyclic_group, direct_product, pullback
from crossmod.presentations import S3_PRESENTATION, enumerate_presentation

C1, C2, C3, C4 = (cyclic_group(n) for n in (1, 2, 3, 4))
K4 = direct_product(C2, C2)
LIB = {G.name: G for G in small_groups(8)}


def inversion_kernel():
    return next(k for k in abstract_kernels(C3, C2) if k.out_map[1] != 0)


def s3_extension():
    _, S3, wm = enumerate_presentation(S3_PRESENTATION)
    x = wm.images[0]
    return extension_from_normal_subgroup(S3, [0, x, S3.mul(x, x)], C3, C2)


def d8_kernel():
    D8 = next(g for g in order_16_groups() if g.name == "D8")
    return next(k for k in abstract_kernels(D8, C2) if not is_extendible(k))


def test_automorphism_data():
    a = automorphisms(C3)
    assert a.Aut.order == 2 and a.Inn == (0,) and a.Out.order == 2
    s = automorphisms(LIB["S3"])
    assert s.Aut.order == 6 and s.Out.order == 1
    t = automorphisms(C1)
    assert t.Aut.order == 1 and t.Out.order == 1
    assert automorphisms(LIB["D4"]).Out.order == 2
    assert automorphisms(LIB["Q8"]).Out.order == 6
    for G in small_groups(8):
        d = automorphisms(G)
        assert d.Aut.is_normal(d.Inn)
        assert d.representatives[0] == 0 and d.perms[0] == tuple(range(G.order))


def test_pullback_examples():
    G = LIB["S3"]
    ident = tuple(range(G.order))
    triv = (0,) * G.order
    assert pullback(G, triv, C1, (0,)).group.order == 6
    assert pullback(G, (0,) * 6, C2, (0, 0)).group.order == 12
    k = inversion_kernel()
    assert kernel_crossed_module(k).G.order == 2
    pb = pullback(G, ident, G, ident)
    assert pb.group.order == 6


def test_kernel_json_round_trip():
    k = inversion_kernel()
    again = AbstractKernel.from_json(json.loads(json.dumps(k.to_json())))
    assert again.encoding == k.encoding and again.phi == k.phi


def test_kernel_json_accepts_permutations():
    k = inversion_kernel()
    data = k.to_json()
    data["phi"] = [list(k.alpha(q)) for q in range(k.Q.order)]
    assert AbstractKernel.from_json(data).phi == k.phi
    data["phi"][1] = [0, 0, 0]
    with pytest.raises(ValueError):
        AbstractKernel.from_json(data)


def test_kernel_rejects_non_homomorphism():
    with pytest.raises(ValueError):
        AbstractKernel(C3, C3, (0, 1, 0), automorphisms(C3))


def test_abelian_kernels_are_extendible():
    for N in (C2, C3, C4, K4):
        for Q in (C2, C3, K4):
            for k in abstract_kernels(N, Q):
                assert is_extendible(k)


def test_realized_kernels_are_extendible():
    E = s3_extension()
    k = AbstractKernel.from_out_map(C3, C2, E.induced_out_map())
    assert is_extendible(k)
    assert E.induces(k)


def test_construct_s3():
    E = construct_extension(inversion_kernel())
    assert E.check() == []
    assert congruent(E, s3_extension())


def test_split_case_is_direct_product():
    k = abstract_kernels(C3, C2)[0]
    E = construct_extension(k)
    assert E.E.is_abelian() and E.E.order == 6


def test_construct_induces_kernel_exhaustive():
    for N in small_groups(6):
        for Q in small_groups(4):
            for k in abstract_kernels(N, Q):
                for E in realize_all_classes(k):
                    assert E.check() == [] and E.induces(k)


def test_non_extendible_is_refused():
    k = d8_kernel()
    assert obstruction(k).order == 2
    with pytest.raises(NotExtendible):
        construct_extension(k)
    assert enumerate_extensions(k) == []


def test_enumerate_examples():
    assert len(enumerate_extensions(abstract_kernels(C2, C2)[0])) == 2
    assert len(enumerate_extensions(inversion_kernel())) == 1


def test_enumerate_budget():
    k = abstract_kernels(LIB["D4"], K4)[0]
    with pytest.raises(SearchBudgetExceeded):
        enumerate_extensions(k, budget=10)


def test_oracle_extensions_are_pairwise_non_congruent():
    for N in (C2, C4, LIB["D4"]):
        for k in abstract_kernels(N, C2):
            exts = [oracle_extension(k, c) for c in enumerate_extensions(k)]
            assert len(exts) == second_cohomology(k).order
            for a, b in itertools.combinations(exts, 2):
                assert not congruent(a, b)
            for E in exts:
                assert E.induces(k)


def test_congruence_examples():
    E = s3_extension()
    assert congruent(E, E)
    Z4 = extension_from_normal_subgroup(C4, [0, 2], C2, C2)
    V = split_extension(C2, C2, [[0, 1], [0, 1]])
    assert not congruent(Z4, V)
    assert congruent(construct_extension(inversion_kernel()), construct_extension(inversion_kernel()))


def test_baer_action_on_cyclic_case():
    V = split_extension(C2, C2, [[0, 1], [0, 1]])
    Z4 = extension_from_normal_subgroup(C4, [0, 2], C2, C2)
    once = baer_act(V, Z4)
    assert congruent(once, Z4)
    assert congruent(baer_act(once, Z4), V)
    assert congruent(baer_act(Z4, V), Z4)


def _center_extensions(k):
    """Extensions of Q by Z(N) with the induced action, one per H^2 class."""
    Zs = center_subgroup(k.N)
    Z = Zs.group
    action = []
    for q in range(k.Q.order):
        al = k.alpha(q)
        action.append([Zs.index_of(al[Zs.embedding[z]]) for z in range(Z.order)])
    aut = automorphisms(Z)
    out_map = [aut.out_projection[aut.perms.index(tuple(a))] for a in action]
    zk = AbstractKernel.from_out_map(Z, k.Q, out_map, aut)
    return realize_all_classes(zk)


@pytest.mark.parametrize("name", ["D4", "Q8", "C4"])
def test_baer_action_is_faithful_and_transitive(name):
    N = LIB[name]
    for k in abstract_kernels(N, C2):
        targets = realize_all_classes(k)
        base = targets[0]
        acted = [baer_act(base, e) for e in _center_extensions(k)]
        assert len(acted) == len(targets)
        for a, b in itertools.combinations(acted, 2):
            assert not congruent(a, b)
        for t in targets:
            assert sum(congruent(t, a) for a in acted) == 1


def test_baer_compatible_with_sums():
    V = split_extension(C2, C2, [[0, 1], [0, 1]])
    Z4 = extension_from_normal_subgroup(C4, [0, 2], C2, C2)
    # e then e' equals acting by the sum e + e'
    for e1, e2 in itertools.product([V, Z4], repeat=2):
        assert congruent(baer_act(baer_act(V, e1), e2), baer_act(V, baer_act(e1, e2)))


def test_baer_module_mismatch():
    k = inversion_kernel()
    E = construct_extension(k)
    # the centre of C3 is C3 with the inversion action; the direct product has the wrong action
    wrong = split_extension(C3, C2, [[0, 1, 2], [0, 1, 2]])
    with pytest.raises(ValueError):
        baer_act(E, wrong)


def test_extension_json_round_trip():
    E = s3_extension()
    again = Extension.from_json(json.loads(json.dumps(E.to_json(with_groups=True))))
    assert congruent(E, again)


@settings(max_examples=25)
@given(st.sampled_from([n for n in LIB if LIB[n].order <= 6]), st.sampled_from(["C2", "C3", "C4", "K4"]))
def test_obstruction_agrees_with_oracle(nname, qname):
    for k in abstract_kernels(LIB[nname], LIB[qname]):
        classes = enumerate_extensions(k)
        assert is_extendible(k) == bool(classes)
        if classes:
            assert len(classes) == second_cohomology(k).order


def test_no_non_extendible_kernel_up_to_order_six():
    assert find_non_extendible(max_n=6, max_q=4) is None
