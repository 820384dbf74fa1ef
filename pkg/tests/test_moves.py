import random

import pytest

from nanophrase.core import HomotopyData, Nanophrase, NanophraseError, PreconditionError, \
    parse_nanophrase, preset
from nanophrase.moves import (H1_INSERT, H1_REMOVE, H2_INSERT, H2_REMOVE, H3_BACKWARD, H3_FORWARD,
                              bounded_equiv, enumerate_insertions, enumerate_reductions,
                              shift, shift_moves)
from nanophrase.sampling import random_move_pair, random_phrase

from conftest import make_data


def kinds(moves):
    return sorted(m.kind for m in moves)


def test_h1_removal(gauss):
    (m,) = enumerate_reductions(parse_nanophrase("AA:a"), gauss)
    assert m.kind == H1_REMOVE
    assert m.result == Nanophrase.trivial(1)


def test_h2_removal_needs_tau():
    swap = HomotopyData.build(("a", "b"), [("a", "b")])
    ident = HomotopyData.build(("a", "b"))
    p = parse_nanophrase("ABBA:ab")
    h2 = [m for m in enumerate_reductions(p, swap) if m.kind == H2_REMOVE]
    assert len(h2) == 1 and h2[0].result.rank == 0
    assert not [m for m in enumerate_reductions(p, ident) if m.kind == H2_REMOVE]


def test_h3_forward_and_back(gauss):
    p = parse_nanophrase("ABACBC:aaa")
    (m,) = enumerate_reductions(p, gauss)
    assert m.kind == H3_FORWARD
    assert m.result.canonical() == parse_nanophrase("BACACB:aaa").canonical()
    back = [x for x in enumerate_reductions(m.result, gauss) if x.kind == H3_BACKWARD]
    assert len(back) == 1 and back[0].result == p


def test_h3_respects_s():
    none = HomotopyData.build(("a",), (), ())
    assert enumerate_reductions(parse_nanophrase("ABACBC:aaa"), none) == []


def test_component_boundary_breaks_adjacency(gauss):
    assert enumerate_reductions(parse_nanophrase("A|A:a"), gauss) == []
    # B|A straddles a separator, so AB...BA is not an H2 site here
    assert kinds(enumerate_reductions(parse_nanophrase("AB|B|A:aa"), gauss)) == []
    assert kinds(enumerate_reductions(parse_nanophrase("AB|BA:aa"), gauss)) == [H2_REMOVE]


def test_insertion_examples(gauss):
    triv = Nanophrase.trivial(1)
    ins = enumerate_insertions(triv, gauss, 1)
    assert {m.result.canonical().text for m in ins} == {"AA:a"}
    assert enumerate_insertions(triv, gauss, 0) == []
    assert enumerate_insertions(parse_nanophrase("AB|AB:ab"), gauss, 2) == []


def test_insertions_respect_tau():
    d = HomotopyData.build(("a", "b"), [("a", "b")])
    for m in enumerate_insertions(Nanophrase.trivial(2), d, 2):
        if m.kind == H2_INSERT:
            x, y = m.site[:2]
            assert m.result.proj[x] == d.tau_of(m.result.proj[y])


def test_shift_examples():
    d = HomotopyData.build(("a", "b"), (), {("a", "a", "a")}, [("a", "b")])
    p = parse_nanophrase("ABAC|BC:aaa")
    assert shift(p, d, 0).to_text() == "BACA|BC:baa"
    assert shift(p, d, 1).to_text() == "ABAC|CB:aaa"
    q = parse_nanophrase("A|A:a")
    assert shift_moves(q, d) == []
    assert shift(q, d, 0) == q


def test_shift_needs_nu(gauss):
    d = HomotopyData.build(("a",))
    with pytest.raises(PreconditionError):
        shift_moves(parse_nanophrase("AA:a"), d)


def test_bounded_equiv_examples(gauss):
    res = bounded_equiv(parse_nanophrase("AA:a"), Nanophrase.trivial(1), gauss, 2)
    assert res.equivalent and res.path_length == 1
    assert str(res) == "EQUIVALENT (1 move)"
    p = parse_nanophrase("ABAB:aa")
    assert bounded_equiv(p, p, gauss, 4).path_length == 0
    with pytest.raises(NanophraseError):
        bounded_equiv(p, Nanophrase.trivial(2), gauss, 4)


def test_bounded_equiv_unknown_for_nontrivial_word(gauss):
    res = bounded_equiv(parse_nanophrase("ABACDCBD:aaaa"), Nanophrase.trivial(1), gauss, 6, 10 ** 6)
    assert not res.equivalent
    assert str(res).startswith("UNKNOWN")


def test_bounded_equiv_finds_planted_moves(vknot):
    rng = random.Random(2)
    for _ in range(20):
        _, p, q = random_move_pair(rng, vknot, 1, rng.randint(0, 2))
        res = bounded_equiv(p, q, vknot, max(p.rank, q.rank), 10 ** 5)
        assert res.equivalent and res.path_length <= 1


def _check_move_properties(p, data, max_rank):
    r = p.n_components
    for m in enumerate_reductions(p, data):
        assert m.result.n_components == r
        if m.kind in (H1_REMOVE, H2_REMOVE):
            back = enumerate_insertions(m.result, data, p.rank)
            assert any(b.result.canonical() == p.canonical() for b in back)
        if m.kind == H2_REMOVE:
            a, b = m.site[:2]
            assert p.proj[a] == data.tau_of(p.proj[b])
        if m.kind in (H3_FORWARD, H3_BACKWARD):
            a, b, c = m.site[:3]
            assert data.in_s(p.proj[a], p.proj[b], p.proj[c])
            opposite = H3_BACKWARD if m.kind == H3_FORWARD else H3_FORWARD
            back = [x for x in enumerate_reductions(m.result, data)
                    if x.kind == opposite and x.site[:3] == (a, b, c)]
            assert any(x.result == p for x in back)
    for m in enumerate_insertions(p, data, max_rank):
        assert m.result.rank <= max_rank
        assert m.kind in (H1_INSERT, H2_INSERT)
        undo = enumerate_reductions(m.result, data)
        assert any(u.result.canonical() == p.canonical() for u in undo)


@pytest.mark.parametrize("seed", range(4))
def test_moves_are_mutually_inverse(seed, vknot):
    rng = random.Random(seed)
    datas = [vknot, make_data(1, 1, "full"), preset("gauss")]
    for _ in range(25):
        data = rng.choice(datas)
        kind, p, q = random_move_pair(rng, data, rng.randint(1, 2), rng.randint(0, 3))
        for x in (p, q):
            _check_move_properties(x, data, x.rank + 2)


def test_reductions_on_random_phrases(vknot):
    rng = random.Random(9)
    for _ in range(100):
        p = random_phrase(rng, vknot, rng.randint(1, 3), rng.randint(0, 5))
        _check_move_properties(p, vknot, p.rank + 1)
