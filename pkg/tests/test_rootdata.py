"""Root data, Weyl combinatorics, and the classification gate.

The oracles here are deliberately naive: brute-force word enumeration,
the definitional inversion set, and the subword test for Bruhat order.
The library's recursions must agree with them on whole groups.
"""

import itertools

import pytest

from torushecke.rootdata import (
    CartanMatrix,
    CartanMatrixError,
    RootDatumError,
    all_positive_roots,
    bruhat_leq,
    build_datum,
    canonicalize_word,
    classify_cartan,
    coroot_of_root,
    highest_root,
    inverse_elt,
    inversion_set,
    left_descents,
    multiply_elts,
    positive_real_roots_up_to_height,
    preset_datum,
    real_roots_up_to_height,
    reduced_words,
    reflection_of_root,
    weyl_ball,
)


def _brute_reduced_words(datum, w):
    return [
        word
        for word in itertools.product(datum.labels, repeat=w.length)
        if canonicalize_word(datum, word) == w
    ]


def _act_inverse_coords(w, coords):
    n = len(coords)
    return tuple(
        sum(w.matinv[k][j] * coords[j] for j in range(n)) for k in range(n)
    )


def test_cartan_matrix_validation():
    CartanMatrix([[2, -1], [-1, 2]])
    with pytest.raises(CartanMatrixError):
        CartanMatrix([[2, -1]])
    with pytest.raises(CartanMatrixError):
        CartanMatrix([[1]])
    with pytest.raises(CartanMatrixError):
        CartanMatrix([[2, 1], [1, 2]])
    with pytest.raises(CartanMatrixError):
        CartanMatrix([[2, -1], [0, 2]])


def test_classify_cartan():
    assert classify_cartan(CartanMatrix([[2]])) == "finite"
    assert classify_cartan(CartanMatrix([[2, -3], [-1, 2]])) == "finite"
    assert classify_cartan(CartanMatrix([[2, -2], [-2, 2]])) == "affine"
    with pytest.raises(CartanMatrixError):
        classify_cartan(CartanMatrix([[2, -5], [-1, 2]]))
    # wrong border for an affinization of A1
    with pytest.raises(CartanMatrixError):
        classify_cartan(CartanMatrix([[2, -1], [-4, 2]]))


def test_group_orders_and_longest_words():
    for name, order, l0 in (("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6)):
        datum = preset_datum(name)
        ball = weyl_ball(datum, l0)
        assert len(ball) == order
        longest = max(ball, key=lambda w: w.length)
        assert longest.length == l0
        # the two alternating words are the only reduced ones in rank 2
        assert len(reduced_words(datum, longest)) == 2
        assert len(weyl_ball(datum, l0 + 2)) == order


def test_canonical_words_against_brute_force():
    for name, l0 in (("A2", 3), ("B2", 4)):
        datum = preset_datum(name)
        for w in weyl_ball(datum, l0):
            words = _brute_reduced_words(datum, w)
            assert w.word == min(words)
            assert sorted(reduced_words(datum, w)) == sorted(words)


def test_canonical_word_affine():
    datum = preset_datum("A1aff")
    for w in weyl_ball(datum, 4):
        words = _brute_reduced_words(datum, w)
        assert w.word == min(words)
        # the infinite dihedral group has unique reduced words
        assert len(words) == 1


def test_inversion_sets_definitional():
    for name in ("A2", "B2", "G2"):
        datum = preset_datum(name)
        positives = all_positive_roots(datum)
        l0 = len(positives)
        for w in weyl_ball(datum, l0):
            expected = {
                r
                for r in positives
                if all(c <= 0 for c in _act_inverse_coords(w, r.coords))
            }
            got = inversion_set(datum, w)
            assert set(got) == expected
            assert len(got) == w.length


def test_inversion_sets_affine():
    datum = preset_datum("A1aff")
    candidates = positive_real_roots_up_to_height(datum, 12)
    for w in weyl_ball(datum, 4):
        expected = {
            r
            for r in candidates
            if all(c <= 0 for c in _act_inverse_coords(w, r.coords))
        }
        got = inversion_set(datum, w)
        assert set(got) == expected
        assert len(got) == w.length


def test_bruhat_order_subword_oracle():
    for name, l0 in (("A2", 3), ("B2", 4), ("G2", 6)):
        datum = preset_datum(name)
        ball = weyl_ball(datum, l0)
        for w in ball:
            below = set()
            for k in range(len(w.word) + 1):
                for pick in itertools.combinations(range(len(w.word)), k):
                    sub = tuple(w.word[p] for p in pick)
                    y = canonicalize_word(datum, sub)
                    if y.length == len(sub):
                        below.add(y)
            for y in ball:
                assert bruhat_leq(datum, y, w) == (y in below)


def test_group_operations_consistency():
    datum = preset_datum("B2")
    ball = weyl_ball(datum, 4)
    for w in ball:
        assert multiply_elts(datum, w, inverse_elt(datum, w)) == datum.identity
        naive = [
            lab
            for lab in datum.labels
            if multiply_elts(
                datum, canonicalize_word(datum, (lab,)), w
            ).length < w.length
        ]
        assert left_descents(datum, w) == naive


def test_highest_roots_frozen():
    assert highest_root(preset_datum("A2")).coords == (1, 1)
    assert highest_root(preset_datum("B2")).coords == (1, 2)
    assert highest_root(preset_datum("G2")).coords == (3, 2)
    assert len(all_positive_roots(preset_datum("G2"))) == 6
    with pytest.raises(RootDatumError):
        all_positive_roots(preset_datum("A1aff"))


def test_affine_real_roots_frozen():
    datum = preset_datum("A1aff")
    pos = positive_real_roots_up_to_height(datum, 3)
    assert [r.coords for r in pos] == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert len(real_roots_up_to_height(datum, 3)) == 8
    assert all(r.height <= 3 for r in pos)
    # null-root multiples never appear: every listed root is real
    delta = datum.affine.delta_char
    for r in positive_real_roots_up_to_height(datum, 9):
        assert r.char != delta and r.char != tuple(2 * c for c in delta)


def test_affine_invariants_frozen():
    a1 = preset_datum("A1aff")
    assert a1.affine.marks == (1, 1)
    assert a1.affine.comarks == (1, 1)
    assert a1.affine.theta.coords == (0, 1)
    assert a1.affine.delta_char == (0, 0, 1)
    alpha0 = a1.simple_root_obj(0)
    assert alpha0.char == tuple(
        d - t for d, t in zip(a1.affine.delta_char, a1.affine.theta.char)
    )
    a2 = preset_datum("A2aff")
    assert a2.affine.marks == (1, 1, 1)
    assert a2.affine.theta.coords == (0, 1, 1)
    assert any(a2.affine.delta_char)
    for datum in (a1, a2):
        for j in range(datum.n):
            assert (
                datum.pairing(datum.affine.c_cochar, datum.simple_roots[j]) == 0
            )


def test_derived_realization():
    datum = preset_datum("A1aff-der")
    assert datum.relaxed
    assert datum.rank == datum.n
    assert not any(datum.affine.delta_char)


def test_reflection_of_root_frozen():
    datum = preset_datum("B2")
    root = datum.root_from_coords((1, 1))
    assert reflection_of_root(datum, root).word == (1, 2, 1)
    assert coroot_of_root(datum, root) == (2, 1)
    # long root: coroot coefficients shrink by the squared-length ratio
    long_root = datum.root_from_coords((1, 2))
    assert coroot_of_root(datum, long_root) == (1, 1)


def test_act_on_character_matches_root_matrices():
    from torushecke.rootdata import act_on_character

    for name in ("A2", "B2"):
        datum = preset_datum(name)
        for w in weyl_ball(datum, 4):
            for lab in datum.labels:
                root = datum.simple_root_obj(lab)
                moved = datum.apply_root_matrix(w, root)
                assert act_on_character(datum, w, root.char) == moved.char


def test_build_datum_choices():
    a1 = CartanMatrix([[2]])
    explicit = build_datum(a1, {"roots": [[2]], "coroots": [[1]]})
    assert explicit.kind == "finite"
    with pytest.raises(RootDatumError):
        build_datum(a1, {"roots": [[1, -1]], "coroots": [[1, -1]]})
    with pytest.raises(RootDatumError):
        build_datum(a1, "derived")
    with pytest.raises(RootDatumError):
        build_datum(a1, "weights")
    with pytest.raises(RootDatumError):
        preset_datum("X7")
    with pytest.raises(RootDatumError):
        preset_datum("A2-dual")
