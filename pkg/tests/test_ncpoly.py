import random

import pytest

from cdx.errors import (
    DegreeMismatch,
    InvalidAlphabet,
    InvalidParams,
    NegativeFlag,
    NoCdForm,
    NotCdEquivalent,
)
from cdx.ncpoly import (
    A,
    B,
    C,
    D,
    FlagFVector,
    NcPoly,
    ab_to_cd,
    cd_to_ab,
    cd_to_flag_f,
    emve,
    emve_mixed,
    expand_ab,
    flag_to_ab,
    flag_to_cd,
    g_cd,
    normalize_mixed,
    word_degree,
)

# (a-b)^2 = c^2 - 2d, b(a-b) = d - cb, a - b = c - 2b as ab expansions
E = A - B


def test_word_degree():
    assert word_degree("") == 0
    assert word_degree("abc") == 3
    assert word_degree("d") == 2
    assert word_degree("cdc") == 4


def test_noncommutative_mul():
    p = (C + D) * (C - D)
    assert p == NcPoly({"cc": 1, "cd": -1, "dc": 1, "dd": -1})
    assert C * D != D * C


def test_scalar_and_pow():
    assert 3 * C - C == 2 * C
    assert (C - C) == NcPoly.zero()
    assert E**2 == NcPoly({"aa": 1, "ab": -1, "ba": -1, "bb": 1})
    assert C**0 == NcPoly.one()


def test_letter_identities():
    # the letter algebra used everywhere downstream
    assert expand_ab(C * C - 2 * D) == E * E
    assert expand_ab(D - C * B) == B * E
    assert expand_ab(C - 2 * B) == E
    # [b, (a-b)^2] = [d, c]
    assert B * E**2 - E**2 * B == expand_ab(D * C - C * D)


def test_invalid_alphabet():
    with pytest.raises(InvalidAlphabet):
        NcPoly({"cx": 1})
    with pytest.raises(InvalidAlphabet):
        cd_to_ab(A + C)
    with pytest.raises(InvalidAlphabet):
        ab_to_cd(C)


def test_cd_to_ab_basics():
    assert cd_to_ab(C) == A + B
    assert cd_to_ab(D) == A * B + B * A
    assert cd_to_ab(NcPoly.one()) == NcPoly.one()


def test_ab_to_cd_basics():
    assert ab_to_cd(A + B) == C
    assert ab_to_cd(A * B + B * A) == D
    assert ab_to_cd(E * E) == C * C - 2 * D
    assert ab_to_cd(NcPoly({"": 5})) == NcPoly({"": 5})


def test_ab_to_cd_rejects():
    with pytest.raises(NoCdForm):
        ab_to_cd(A)
    with pytest.raises(NoCdForm):
        ab_to_cd(A * A)
    with pytest.raises(NoCdForm):
        ab_to_cd(A * B)  # not symmetric
    with pytest.raises(NoCdForm):
        ab_to_cd(cd_to_ab(D) + A * B)  # 2ab + ba
    with pytest.raises(NoCdForm):
        ab_to_cd(expand_ab(C**3) - A * B * A - B * A * B)
    # aa + bb is symmetric and does land in the cd algebra
    assert ab_to_cd(A * A + B * B) == C * C - D


def test_roundtrip_small():
    for p in [C, D, C * C, C * D + 3 * D * C, (C + D) ** 3, NcPoly.one()]:
        assert ab_to_cd(cd_to_ab(p)) == p


def test_roundtrip_random():
    rng = random.Random(7)
    cd_words = {0: [""]}
    for deg in range(1, 11):
        ws = ["c" + w for w in cd_words[deg - 1]]
        if deg >= 2:
            ws += ["d" + w for w in cd_words[deg - 2]]
        cd_words[deg] = ws
    for _ in range(120):
        deg = rng.randint(1, 10)
        ws = cd_words[deg]
        p = NcPoly({w: rng.randint(-9, 9) for w in rng.sample(ws, min(len(ws), 5))})
        assert ab_to_cd(cd_to_ab(p)) == p


def test_mirror_symmetry_of_cd_expansion():
    rng = random.Random(11)
    for _ in range(40):
        words = ["c" * rng.randint(0, 2) + "d" + "c" * rng.randint(0, 2) for _ in range(3)]
        p = NcPoly({w: rng.randint(1, 5) for w in words})
        ab = cd_to_ab(p)
        assert ab.mirror() == ab


def test_g_cd_first_values():
    assert g_cd(0) == B
    assert g_cd(1) == D - C * B
    assert g_cd(2) == (C * C - 2 * D) * B + D * C - C * D


def test_g_cd_matches_ab_definition():
    for t in range(13):
        assert expand_ab(g_cd(t)) == B * E**t


def test_g_cd_invalid():
    with pytest.raises(InvalidParams):
        g_cd(-1)


def test_emve():
    assert emve(0, 1) == NcPoly.one()
    assert emve(1, 2) == A + B
    assert emve(4, 10) == E**4 + 10 * (B * E**3)
    with pytest.raises(InvalidParams):
        emve(-1, 1)
    with pytest.raises(InvalidParams):
        emve(2, 0)


def test_emve_mixed_agrees():
    for dim in range(9):
        for nv in (1, 2, 7):
            assert expand_ab(emve_mixed(dim, nv)) == expand_ab(emve(dim, nv))


def test_normalize_mixed():
    assert normalize_mixed(D - C * B + C * B) == D
    assert normalize_mixed(C) == C
    assert normalize_mixed(C + D) == C + D
    # segment: EmVe(1, 2) = (c-2b) + 2b
    assert normalize_mixed(emve_mixed(1, 2)) == C
    with pytest.raises(NotCdEquivalent):
        normalize_mixed(B)
    with pytest.raises(NotCdEquivalent):
        normalize_mixed(C * B * C)  # b stuck in the middle
    # a-letter input falls back to full expansion
    assert normalize_mixed(A + B) == C
    assert normalize_mixed(emve(1, 2), debug=True) == C


def test_normalize_mixed_debug_path():
    assert normalize_mixed(D - C * B + C * B, debug=True) == D


def test_text_form():
    p = NcPoly({"cccc": 1, "ccd": 8, "cdc": 20, "dcc": 8, "dd": 14})
    assert p.text() == "cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd"
    assert (C * C + 2 * D).text() == "cc + 2*d"
    assert NcPoly.zero().text() == "0"
    assert NcPoly.one().text() == "1"
    assert (C - D).text() == "c - d"
    assert (-C).text() == "-c"
    assert (NcPoly({"": -3})).text() == "-3"


def test_text_order_is_graded_then_lex():
    p = NcPoly({"dd": 1, "cccc": 1, "cdc": 1, "dcc": 1, "ccd": 1, "cc": 1, "d": 1})
    assert p.words() == ["cc", "d", "cccc", "ccd", "cdc", "dcc", "dd"]


def test_from_text():
    for p in [C, C * C + 2 * D, NcPoly({"cdc": 20, "dd": -3}), NcPoly.one(), NcPoly.zero()]:
        assert NcPoly.from_text(p.text()) == p
    assert NcPoly.from_text("cc + 2*d") == C * C + 2 * D
    assert NcPoly.from_text("a + -2*b") == A - 2 * B
    assert NcPoly.from_text("3") == NcPoly({"": 3})
    with pytest.raises(InvalidParams):
        NcPoly.from_text("c^4")
    with pytest.raises(InvalidParams):
        NcPoly.from_text("2*")
    with pytest.raises(InvalidAlphabet):
        NcPoly.from_text("cxc")


def test_flag_segment():
    fv = cd_to_flag_f(C, 1)
    assert fv.f(()) == 1
    assert fv.f({0}) == 2
    assert fv.f_vector() == (2,)


def test_flag_triangle():
    fv = cd_to_flag_f(C * C + D, 2)
    assert fv.f_vector() == (3, 3)
    assert fv.f({0, 1}) == 6


def test_flag_octahedron():
    # cd-index of the octahedron, derived by hand from the stratified sum
    p = C**3 + 6 * C * D + 4 * D * C
    fv = cd_to_flag_f(p, 3)
    assert fv.f_vector() == (6, 12, 8)
    assert fv.f({0, 1}) == 24
    assert fv.f({0, 2}) == 24
    assert fv.f({1, 2}) == 24
    assert fv.f({0, 1, 2}) == 48


def test_flag_roundtrip():
    for p, dim in [(NcPoly.one(), 0), (C, 1), (C * C + D, 2), (C**3 + 6 * C * D + 4 * D * C, 3)]:
        fv = cd_to_flag_f(p, dim)
        assert flag_to_cd(fv) == p
        assert ab_to_cd(flag_to_ab(fv)) == p


def test_flag_errors():
    with pytest.raises(DegreeMismatch):
        cd_to_flag_f(C, 2)
    with pytest.raises(DegreeMismatch):
        cd_to_flag_f(C + NcPoly.one(), 1)
    with pytest.raises(NegativeFlag):
        cd_to_flag_f(-C, 1)
    with pytest.raises(InvalidParams):
        FlagFVector(1, {frozenset(): 2})
    with pytest.raises(NegativeFlag):
        FlagFVector(1, {frozenset(): 1, frozenset({0}): -1})


def test_flag_fvector_api():
    fv = FlagFVector(2, {frozenset(): 1, frozenset({0}): 3, frozenset({1}): 3, frozenset({0, 1}): 6})
    assert fv.f({0}) == 3
    assert fv == cd_to_flag_f(C * C + D, 2)
