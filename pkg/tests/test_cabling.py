import pytest
from hypothesis import given
from hypothesis import strategies as st

from spheresect.braid import BraidWord, Permutation, permutation_of, relation_word, strand_positions
from spheresect.cabling import (
    CablingVector,
    cable,
    cabled_relation_target,
    exponent_ledger,
    relation_check,
    relation_vector,
    trivial_vector,
)
from spheresect.garside import equal_in_artin


def random_vector(rng, n, k):
    """phi uses generators that keep strand k fixed: s_1..s_{k-2} and s_{k-1}^2."""
    ints = []
    for _ in range(rng.integers(1, 4)):
        if k > 2 and rng.random() < 0.6:
            g = int(rng.integers(1, k - 1))
            ints.append(g * int(rng.choice([-1, 1])))
        else:
            s = int(rng.choice([-1, 1]))
            ints += [s * (k - 1)] * 2
    a = tuple(int(x) for x in rng.integers(-2, 3, size=n - 1))
    return CablingVector(BraidWord.from_ints(k, ints), a, int(rng.integers(-2, 3)), int(rng.integers(-2, 3)), n)


def embedded(perm: Permutation, offset: int, size: int) -> Permutation:
    im = list(range(size))
    for j, x in enumerate(perm.images):
        im[offset + j] = offset + x
    return Permutation(tuple(im))


def expected_generator_perm(v: CablingVector, i: int) -> Permutation:
    """Diagonal phi-powers on each block, then the swap of blocks i and i+1."""
    n, k = v.n, v.k
    size = n * k
    pphi = permutation_of(v.phi)
    diag = Permutation.identity(size)
    for block in range(1, n + 1):
        diag = diag * embedded(pphi ** v.exponent(i, block), (block - 1) * k, size)
    swap = list(range(size))
    for j in range(k):
        p, q = (i - 1) * k + j, i * k + j
        swap[p], swap[q] = q, p
    return diag * Permutation(tuple(swap))


def test_vector_validation():
    with pytest.raises(ValueError):
        CablingVector(BraidWord.from_ints(3, [2]), (0, 0), 0, 0, 3)
    with pytest.raises(ValueError):
        CablingVector(BraidWord.from_ints(3, [1]), (0,), 0, 0, 3)


def test_empty_word():
    v = relation_vector(3)
    assert cable(v, BraidWord(3, ())).letters == ()
    assert exponent_ledger(v, BraidWord(3, ())) == [0, 0, 0]


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 2), (4, 3)])
def test_generator_permutation_by_hand(rng, n, k):
    for _ in range(5):
        v = random_vector(rng, n, k)
        for i in range(1, n):
            got = permutation_of(cable(v, BraidWord.generator(n, i)))
            assert got == expected_generator_perm(v, i)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6), st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6))
def test_cable_is_letterwise_homomorphism(x, y):
    v = relation_vector(3)
    w1, w2 = BraidWord.from_ints(3, x), BraidWord.from_ints(3, y)
    assert cable(v, w1 * w2) == cable(v, w1) * cable(v, w2)


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 2), (4, 3)])
def test_relations_preserved(rng, n, k):
    for _ in range(5):
        v = random_vector(rng, n, k)
        for i in range(1, n - 1):
            lhs = cable(v, BraidWord.from_ints(n, [i, i + 1, i]))
            rhs = cable(v, BraidWord.from_ints(n, [i + 1, i, i + 1]))
            assert equal_in_artin(lhs, rhs)
        for i in range(1, n - 2):
            for j in range(i + 2, n):
                assert equal_in_artin(cable(v, BraidWord.from_ints(n, [i, j])),
                                      cable(v, BraidWord.from_ints(n, [j, i])))


def test_cabling_is_not_trivially_equal():
    v = relation_vector(3)
    assert not equal_in_artin(cable(v, BraidWord.from_ints(3, [1, 2])), cable(v, BraidWord.from_ints(3, [2, 1])))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_relation_ledger(n):
    v = relation_vector(n)
    assert v.t == 2 * n - 4 and v.c == -1
    led = exponent_ledger(v, relation_word(n))
    assert led[0] == (n - 1) * v.t == 2 * (n - 1) * (n - 2)
    assert led[1:] == [0] * (n - 1)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8),
       st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-3, 3), st.integers(-3, 3))
def test_ledger_additivity(x, y, a, c, t):
    v = CablingVector(BraidWord.from_ints(3, [1]), tuple(a), c, t, 4)
    w1, w2 = BraidWord.from_ints(4, x), BraidWord.from_ints(4, y)
    l1, l2, l12 = exponent_ledger(v, w1), exponent_ledger(v, w2), exponent_ledger(v, w1 * w2)
    pos = strand_positions(w1)
    assert l12 == [l1[j] + l2[pos[j] - 1] for j in range(4)]


def test_relation_target_shape():
    tgt = cabled_relation_target(3, 3)
    assert tgt.strands == 9
    v = relation_vector(3)
    assert permutation_of(tgt) == permutation_of(cable(v, relation_word(3)))
    # the untwisted part alone is a different braid
    plain = cable(trivial_vector(3, 3), relation_word(3))
    assert not equal_in_artin(plain, tgt)


def test_relation_exact_n3():
    r = relation_check(3)
    assert r["k"] == 3 and r["strands"] == 9
    assert r["ledger"] == [4, 0, 0]
    assert r["exact_equal"] and r["permutation_match"] and r["ledger_match"]


def test_relation_exact_n4():
    r = relation_check(4)
    assert r["k"] == 7 and r["ledger"] == [12, 0, 0, 0]
    assert r["exact_equal"]


def test_relation_with_nonzero_a():
    r = relation_check(3, 1, a=(1, -1))
    assert r["ledger_match"] and r["exact_equal"]
