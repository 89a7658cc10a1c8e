import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from kanenobu.diagrams import (
    BraidWord,
    KanenobuParams,
    NotAKnot,
    SignedWhiteGraph,
    beta_n,
    build_kanenobu_diagram,
    kanenobu_white_graph,
    white_graph,
)
from kanenobu.intmatrix import knot_determinant
from kanenobu.presentations import (
    EmptyFamily,
    FreeWord,
    GroupPresentation,
    abelianize,
    bbeta_determinant,
    cyclic_canonical,
    cyclicity_criterion,
    enumerate_family,
    family_csv,
    family_rows,
    generic_braid_h1,
    kanenobu_matrix,
    kanenobu_presentation,
    match_generators,
    presentation_from_white_graph,
    residue_count,
    same_relator,
)

# relabelling from diagram regions (in construction order) to e1..e4
DIAGRAM_TO_TEMPLATE = (1, 3, 0, 2)


def test_free_word_reduction():
    w = FreeWord.of((0, 2), (0, -2), (1, 1))
    assert w.letters == ((1, 1),)
    with pytest.raises(ValueError):
        FreeWord(((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        FreeWord(((0, 0),))
    a = FreeWord.of((0, 1), (1, -2))
    assert (a * a.inverse()).letters == ()
    assert (a ** 3).exponent_sum(1) == -6
    assert len(a ** -2) == 6


def test_cyclic_canonical_invariance():
    w = FreeWord.of((0, 1), (1, -2), (2, 1))
    rot = FreeWord.of((1, -2), (2, 1), (0, 1))
    assert same_relator(w, rot)
    assert same_relator(w, w.inverse())
    assert not same_relator(w, FreeWord.of((0, 1), (1, 2), (2, 1)))
    # cyclic reduction
    assert cyclic_canonical(FreeWord.of((3, 1), (0, 1), (3, -1))) == cyclic_canonical(FreeWord.gen(0))


def test_template_relators_at_200():
    rel = presentation_from_white_graph(kanenobu_white_graph(KanenobuParams(2, 0, 0))).relators
    assert same_relator(rel[0], FreeWord.of((1, 1), (0, -2)))
    assert same_relator(rel[3], FreeWord.of((3, 3), (2, -1)))


def test_template_relators_hand_specialised_321():
    want = [
        FreeWord.of((1, 1), (0, -2), (2, 1), (0, -1), (2, 1), (0, -1)),
        FreeWord.of((1, -3), (0, 1), (1, -1), (3, 1), (1, -1)),
        FreeWord.of((2, 2), (3, -1), (0, 1), (2, -1), (0, 1), (2, -1)),
        FreeWord.of((3, 3), (1, 1), (2, -1)),
    ]
    k = KanenobuParams(3, 2, 1)
    got = presentation_from_white_graph(kanenobu_white_graph(k)).relators
    assert all(same_relator(a, b) for a, b in zip(got, want))
    assert all(a == b for a, b in zip(kanenobu_presentation(k).relators, want))


def test_single_vertex_presentation():
    g = SignedWhiteGraph(("a",), "U", (("a", "U", 1),), {"a": [0]})
    pres = presentation_from_white_graph(g)
    assert pres.relators == (FreeWord.gen(0, -1),)
    assert abelianize(pres).tolist() == [[-1]]


def test_abelianize_zero_column():
    pres = GroupPresentation(2, (FreeWord.of((0, 1), (1, 1), (0, -1), (1, -1)), FreeWord.gen(1, 3)))
    assert abelianize(pres).tolist() == [[0, 0], [0, 3]]


def test_diagram_relators_match_template_after_relabelling():
    for n, p, q in [(2, 0, 1), (2, 0, 0), (3, 4, -2), (4, -3, -3), (5, 1, 6)]:
        k = KanenobuParams(n, p, q)
        pres = presentation_from_white_graph(white_graph(build_kanenobu_diagram(k)))
        images = {i: FreeWord.gen(DIAGRAM_TO_TEMPLATE[i]) for i in range(4)}
        renamed = [r.substitute(images) for r in pres.relators]
        want = sorted(cyclic_canonical(r) for r in kanenobu_presentation(k).relators)
        assert sorted(cyclic_canonical(r) for r in renamed) == want


def test_match_generators_finds_relabelling():
    k = KanenobuParams(2, 1, 1)
    pres = presentation_from_white_graph(white_graph(build_kanenobu_diagram(k)))
    assert match_generators(pres, kanenobu_presentation(k)) == DIAGRAM_TO_TEMPLATE


def test_relabelling_commutes_with_presentation():
    g = kanenobu_white_graph(KanenobuParams(3, 2, -1))
    perm = ("e3", "e1", "e4", "e2")
    h = g.relabel({}, order=perm)
    pres_g = presentation_from_white_graph(g)
    pres_h = presentation_from_white_graph(h)
    images = {g.vertices.index(v): FreeWord.gen(k) for k, v in enumerate(perm)}
    renamed = sorted(cyclic_canonical(r.substitute(images)) for r in pres_g.relators)
    assert renamed == sorted(cyclic_canonical(r) for r in pres_h.relators)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(-5, 5), st.integers(-5, 5))
def test_abelianisation_is_displayed_matrix(n, p, q):
    k = KanenobuParams(n, p, q)
    assert abelianize(kanenobu_presentation(k)) == kanenobu_matrix(k)
    assert abelianize(presentation_from_white_graph(kanenobu_white_graph(k))) == kanenobu_matrix(k)
    assert knot_determinant(kanenobu_matrix(k)) == (2 * n + 1) ** 2


def test_cyclicity_examples():
    assert cyclicity_criterion(KanenobuParams(2, 0, 1))
    assert not cyclicity_criterion(KanenobuParams(2, 0, 5))
    assert cyclicity_criterion(KanenobuParams(4, 1, 1))


def test_family_residues():
    spec, members = enumerate_family(2, 0, 1, range(-10, 11))
    assert len(spec.admissible_residues) == 4
    assert all(k.p + k.q == 1 for k in members)
    assert all(cyclicity_criterion(k) for k in members)
    spec, _ = enumerate_family(4, 0, 1, range(0, 1))
    assert len(spec.admissible_residues) == 9 == residue_count(4, 1)
    with pytest.raises(EmptyFamily):
        enumerate_family(4, 0, 3, range(-5, 6))


def test_residue_count_closed_form():
    for n in range(1, 30):
        for s in range(-4, 5):
            m = 2 * n + 1
            brute = sum(1 for r in range(m) if gcd(3 * r + s, m) == 1)
            assert residue_count(n, s) == brute


def test_family_csv():
    _, members = enumerate_family(2, 0, 1, range(0, 2))
    text = family_csv(family_rows(members))
    assert text.splitlines() == ["n,p,q,det,cyclic,h1_order", "2,0,1,25,true,25", "2,1,0,25,true,25"]


def test_generic_braid_h1():
    det, st_ = generic_braid_h1(beta_n(2), 0, 1)
    assert det == 25 and st_.is_cyclic
    for p, q in itertools.product(range(-3, 4), repeat=2):
        det, _ = generic_braid_h1(beta_n(3), p, q)
        assert det == 49 == bbeta_determinant(beta_n(3)) ** 2
    # another 3-braid whose closure pattern still gives a knot
    b = BraidWord.parse(3, [1, 1, 1, -2])
    det, _ = generic_braid_h1(b, 2, -1)
    assert det == bbeta_determinant(b) ** 2


def test_generic_braid_link_rejected():
    with pytest.raises(NotAKnot):
        generic_braid_h1(BraidWord.parse(3, []), 0, 0)
