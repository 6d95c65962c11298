import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higher_skein.algebra import H, LaurentPoly
from higher_skein.diagram import (
    SINGULAR,
    Crossing,
    Diagram,
    DiagramError,
    FormalCombination,
    braid_closure,
    canonical_encode,
    component_count,
    differentiate_combination,
    eight_t_closures,
    eight_t_combination,
    eight_t_diagrams,
    eight_t_diagrams_from_braids,
    format_diagram,
    make_G,
    negative_resolution,
    parse_braid,
    parse_diagram,
    resolution_terms,
    resolve,
    smooth_crossing,
    switch_crossing,
    unknot,
    unlink,
)
from higher_skein.fixtures import load_G, random_diagrams

HOPF = "link hopf\nx + 1>2 3>4\nx + 4>3 2>1\n"
TREFOIL = "x + 1>2 4>5\nx + 3>4 6>1\nx + 5>6 2>3\n"
CURL = Diagram((Crossing(1, 2, 2, 1, "+"),))


def relabel(d, rng):
    arcs = d.arcs()
    perm = dict(zip(arcs, rng.sample(range(100, 200), len(arcs))))
    cs = [Crossing(*(perm[a] for a in c[:4]), c.kind) for c in d.crossings]
    rng.shuffle(cs)
    return Diagram(tuple(cs), d.free_loops)


def test_parse_examples():
    assert component_count(parse_diagram("loops 1")) == 1
    hopf = parse_diagram(HOPF)
    assert hopf.name == "hopf" and component_count(hopf) == 2
    assert component_count(parse_diagram(TREFOIL)) == 1


@pytest.mark.parametrize("text", [
    "x + 1>2 3>4\n",           # arcs 1,3 never leave a crossing as outputs matched
    "x + 1>2 2>1\nx + 1>2 2>1\n",  # duplicate slots
    "",                         # empty
    "x ? 1>2 2>1\n",
    "loops two\n",
])
def test_parse_errors(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_format_roundtrip(links):
    for d in links.values():
        assert parse_diagram(format_diagram(d)) == d


def test_switch_is_involution(links):
    d = links["trefoil"]
    for i in range(3):
        assert canonical_encode(switch_crossing(switch_crossing(d, i), i)) == canonical_encode(d)


def test_switch_rejects_double_points():
    with pytest.raises(DiagramError):
        switch_crossing(make_G(1, 1), 0)
    with pytest.raises(DiagramError):
        switch_crossing(unknot(), 0)


def test_smoothing_examples():
    split = smooth_crossing(CURL, 0)
    assert split.free_loops == 2 and component_count(split) == 2
    assert component_count(smooth_crossing(parse_diagram(HOPF), 0)) == 1


def test_smoothing_changes_components_by_one():
    for d in random_diagrams(40, seed=11):
        for i in range(len(d.crossings)):
            assert abs(component_count(smooth_crossing(d, i)) - component_count(d)) == 1


@pytest.mark.parametrize("l,n", [(l, n) for n in range(7) for l in range(n + 1)])
def test_G_components(l, n):
    d = make_G(l, n)
    assert component_count(d) == n - l + 1
    assert len(d.singular_indices()) == n


def test_G_examples():
    assert make_G(0, 0) == unknot()
    g11 = make_G(1, 1)
    assert len(g11.crossings) == 1 and component_count(g11) == 1
    assert component_count(make_G(0, 2)) == 3
    with pytest.raises(DiagramError):
        make_G(2, 1)


def test_G_fixture_files_match():
    for n in range(7):
        for l in range(n + 1):
            if l + n <= 6:
                assert load_G(l, n) == make_G(l, n)


def test_resolve_nonsingular_is_identity(links):
    comb = resolve(links["trefoil"])
    assert len(comb) == 1 and list(comb.terms.values()) == [LaurentPoly.constant(1)]


def test_resolve_G11():
    terms = resolution_terms(make_G(1, 1))
    assert [str(c) for c, _ in terms] == ["1", "-1", "-h"]
    assert [d.crossings[0].kind for _, d in terms[:2]] == ["+", "-"]
    assert terms[2][1] == unlink(2)


def test_resolve_G02_coefficients():
    terms = resolution_terms(make_G(0, 2))
    coeffs = sorted(str(c) for c, _ in terms)
    assert len(terms) == 9
    assert coeffs.count("h^2") == 1
    assert coeffs.count("1") == 2 and coeffs.count("-1") == 2


@pytest.mark.parametrize("l,n", [(0, 3), (1, 3), (2, 4), (0, 4)])
def test_resolution_size_and_h_zero(l, n):
    terms = resolution_terms(make_G(l, n))
    assert len(terms) == 3 ** n
    for c, d in terms:
        assert not any(x.kind == SINGULAR for x in d.crossings)
        assert c(0) in (0, 1, -1)


def test_negative_resolution_examples():
    g = make_G(1, 1)
    assert negative_resolution(g, [0]).crossings[0].kind == "-"
    assert negative_resolution(g, []) == unlink(2)
    g2 = make_G(0, 2)
    full = negative_resolution(g2, g2.singular_indices())
    assert not full.is_singular()
    with pytest.raises(DiagramError):
        negative_resolution(g2, [1])


def test_differentiate_examples(links):
    a, b = links["trefoil"], links["hopf_pos"]
    assert differentiate_combination(FormalCombination.single(a, H)) == FormalCombination.single(a)
    assert differentiate_combination(FormalCombination.single(a)).is_zero()
    comb = FormalCombination.from_terms([(H ** 2, a), (3, b)])
    assert differentiate_combination(comb) == FormalCombination.single(a, 2 * H)


def test_canonical_encoding(links):
    rng = random.Random(5)
    t = links["trefoil"]
    for _ in range(10):
        assert canonical_encode(relabel(t, rng)) == canonical_encode(t)
    assert canonical_encode(links["hopf_pos"]) != canonical_encode(unlink(2))
    assert canonical_encode(t) == canonical_encode(parse_diagram(TREFOIL))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_canonical_encoding_random_relabel(seed):
    rng = random.Random(seed)
    d = random_diagrams(1, seed=seed, max_crossings=6)[0]
    assert canonical_encode(relabel(d, rng)) == canonical_encode(d)


def test_braid_parse():
    assert parse_braid("1 -2 1* 2") == [(1, "+"), (2, "-"), (1, "*"), (2, "+")]
    with pytest.raises(DiagramError):
        braid_closure([(3, "+")], 3)


def test_eight_t_files_match_braids():
    for c in eight_t_closures():
        assert eight_t_diagrams(c) == eight_t_diagrams_from_braids(c)


def test_eight_t_shape():
    comb = eight_t_combination("s1s2")
    assert not comb.is_zero()
    assert all(not d.is_singular() for d in comb.terms)
    with pytest.raises(DiagramError):
        eight_t_combination("nope")
