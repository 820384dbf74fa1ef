"""Property-based checks of the structural invariants."""

from hypothesis import given, settings
from hypothesis import strategies as st

from nanophrase.core import DottedNanophrase, Nanophrase, parse_nanophrase, preset, subphrases
from nanophrase.formal import angle_bracket, as_sum, phi, resolve, theta
from nanophrase.invariants import linking_matrix, t_invariant, t_value
from nanophrase.moves import enumerate_insertions, enumerate_reductions, shift_moves

from conftest import make_data

VKNOT = preset("vknot")
MIXED = make_data(1, 1)  # a fixed, (p P) free, S diagonal


@st.composite
def phrases(draw, data=VKNOT, max_rank=5, max_r=3):
    n = draw(st.integers(0, max_rank))
    r = draw(st.integers(1, max_r))
    word = draw(st.permutations([x for x in range(n) for _ in range(2)]))
    cuts = sorted(draw(st.lists(st.integers(0, 2 * n), min_size=r - 1, max_size=r - 1)))
    bounds = [0] + cuts + [2 * n]
    comps = [word[bounds[i]:bounds[i + 1]] for i in range(r)]
    labels = draw(st.lists(st.sampled_from(data.alpha), min_size=n, max_size=n))
    return Nanophrase(comps, dict(zip(range(n), labels)))


@given(phrases())
def test_subphrase_count_and_ranks(p):
    subs = subphrases(p)
    assert len(subs) == 2 ** p.rank
    for q in subs:
        assert q.n_components == p.n_components
        assert q.rank < p.rank or q == p


@given(phrases(), st.randoms(use_true_random=False))
def test_canonical_form_ignores_renaming(p, rnd):
    target = rnd.sample(range(26), p.rank)
    q = p.rename(dict(zip(p.letters, target)))
    assert q.canonical() == p.canonical()
    assert parse_nanophrase(p.canonical().text, VKNOT).canonical() == p.canonical()


@given(phrases(max_rank=4))
def test_theta_phi_inverse(p):
    x = as_sum(p)
    assert phi(theta(x)) == x
    assert theta(phi(x)) == x


@given(phrases(max_rank=4), st.data())
def test_resolution_augmentation(p, data):
    dots = data.draw(st.sets(st.sampled_from(p.letters))) if p.rank else set()
    d = DottedNanophrase(p, frozenset(dots))
    total = resolve(d).augmentation()
    assert total == (0 if dots else 1)


@given(phrases(max_rank=3), phrases(max_rank=4))
def test_bracket_identities(q, p):
    if q.n_components != p.n_components:
        return
    assert angle_bracket(p, p) == 1
    assert angle_bracket(Nanophrase.trivial(p.n_components), p) == 1
    assert angle_bracket(q, p) == theta(p).coefficient(q)


@settings(max_examples=60)
@given(phrases(max_rank=4, max_r=2))
def test_move_results_are_valid(p):
    moves = enumerate_reductions(p, VKNOT) + enumerate_insertions(p, VKNOT, p.rank + 1)
    moves += shift_moves(p, VKNOT)
    for m in moves:
        # constructing through the validating constructor re-checks the Gauss condition
        Nanophrase(m.result.components, m.result.proj)
        assert m.result.n_components == p.n_components


@given(phrases())
def test_linking_matrix_symmetric(p):
    L = linking_matrix(p, VKNOT)
    for i in range(L.size):
        assert L[i, i].is_zero()
        for j in range(L.size):
            assert L[i, j] == L[j, i]


@given(phrases(data=MIXED, max_rank=5))
def test_t_symmetry(p):
    tau = MIXED.tau_of
    T = t_invariant(p, MIXED)
    for (i, a, b), v in T.values.items():
        assert t_value(p, MIXED, i, tau(a), b) == -v
        assert t_value(p, MIXED, i, tau(a), tau(b)) == v
