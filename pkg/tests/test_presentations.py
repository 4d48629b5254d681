import pytest
from hypothesis import given, strategies as st

from crossmod.groups import cyclic_group, find_isomorphism
from crossmod.presentations import (
    CORPUS,
    CosetLimitExceeded,
    PresentationSyntaxError,
    cayley_graph,
    enumerate_presentation,
    graph_free_rank,
    parse_presentation,
    todd_coxeter,
)


def test_parse_named_and_unnamed():
    p = parse_presentation("<x,y | r = x^3, s = y^2, t = x*y*x*y>")
    assert p.names == ("r", "s", "t")
    q = parse_presentation("<a | a^4>")
    assert q.names == ("r1",)
    assert str(q) == "<a | r1 = a^4>"


@pytest.mark.parametrize("text", ["x,y | x^2>", "<x | x^>", "<x | y^2>", "<x,x | x>", "<x | x*x^-1>",
                                  "<x | x^2,,x>"])
def test_parse_errors(text):
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(text)


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_orders(n):
    _, G, wm = enumerate_presentation(f"<x | x^{n}>")
    assert G.order == n
    assert find_isomorphism(G, cyclic_group(n)) is not None


def test_s3(s3):
    p, G, wm = s3
    assert G.order == 6
    assert not G.is_abelian()
    for r in p.relators:
        assert wm(r) == 0
    assert sorted(G.element_orders) == [1, 2, 2, 2, 3, 3]


def test_corpus_orders(corpus):
    expected = {"S3": 6, "K4": 4, "C2xC4": 8, "D4": 8, "Q8": 8, "A4": 12, "S3_redundant": 6}
    for name, (_, G, _) in corpus.items():
        want = expected.get(name, int(name[1:]) if name.startswith("C") and name[1:].isdigit() else None)
        assert G.order == want, name
        assert not G.check_axioms()


def test_infinite_group_hits_limit():
    p = parse_presentation("<x,y | x*y*x^-1*y^-1>")
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(p, max_cosets=200)


def test_normal_words_evaluate(corpus):
    for _, (p, G, wm) in corpus.items():
        for g in range(G.order):
            assert wm(wm.word_for(g)) == g


def test_cayley_graph_s3(s3):
    p, G, wm = s3
    g = cayley_graph(G, wm)
    assert g.order == 6 and len(g.edges) == 12
    # each generator contributes a permutation of the vertices
    for gen in range(2):
        targets = sorted(t for s, t, x in g.edges if x == gen)
        assert targets == list(range(6))
    assert graph_free_rank(g) == 7


def test_cayley_graph_cyclic():
    _, G, wm = enumerate_presentation("<x | x^4>")
    g = cayley_graph(G, wm)
    succ = {s: t for s, t, _ in g.edges}
    v, seen = 0, []
    for _ in range(4):
        seen.append(v)
        v = succ[v]
    assert v == 0 and sorted(seen) == [0, 1, 2, 3]


@given(st.sampled_from(sorted(CORPUS)), st.lists(st.integers(0, 3), max_size=10))
def test_word_map_is_homomorphism(name, idx):
    p, G, wm = enumerate_presentation(CORPUS[name])
    A = p.alphabet
    gens = [A.generator(i % len(A)) for i in idx]
    w = A.identity()
    expected = 0
    for g in gens:
        w = w * g
        expected = G.mul(expected, wm(g))
    assert wm(w) == expected
