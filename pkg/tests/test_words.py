import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equisurf.words import (
    BaseSpace,
    Selector,
    SurgeryStep,
    SurgeryWord,
    WordParseError,
    parse_word,
    print_word,
)


@pytest.mark.parametrize("text", [
    "S(1) +R(1) +R(1) #M(2)",
    "Poly(2,1) +TR(ribbon-south:1)",
    "N2free(1) +R(1)",
    "N1_1(2) +TR(base-point) -R",
    "M1free #M(0)",
    "S(2) +FMB(base-south) +MBF -TR",
])
def test_parse_print_round_trip(text):
    word = parse_word(text, 3)
    assert print_word(word) == text
    assert parse_word(print_word(word), 3) == word


def test_parse_error_position():
    with pytest.raises(WordParseError) as exc:
        parse_word("S(1) +R(1) bogus", 3)
    assert exc.value.position == 11


@pytest.mark.parametrize("text", [
    "",
    "S(0)",
    "S(3)",
    "Poly(0,1)",
    "S(1) +R(0)",
    "S(1) #N(0)",
    "S(1) +TR(nowhere)",
])
def test_rejects(text):
    with pytest.raises(WordParseError):
        parse_word(text, 3)


@st.composite
def words(draw):
    p = draw(st.sampled_from([3, 5]))
    basekind = draw(st.sampled_from(["S", "M1free", "N2free", "N1_1", "Poly"]))
    i = draw(st.integers(1, p - 1))
    if basekind == "M1free":
        base = BaseSpace("M1free")
    elif basekind == "Poly":
        base = BaseSpace("Poly", i=i, n=draw(st.integers(1, 3)))
    else:
        base = BaseSpace(basekind, i=i)
    steps = []
    for _ in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from(["+R", "-R", "+TR", "-TR", "+FMB", "+MBF", "#M", "#N"]))
        if kind == "+R":
            steps.append(SurgeryStep("+R", i=draw(st.integers(1, p - 1))))
        elif kind in ("+TR", "+FMB"):
            role = draw(st.sampled_from(["base-north", "base-south", "poly-vertex", "ribbon-south", "tr-vertex"]))
            idx = draw(st.integers(1, 3)) if role in ("ribbon-south", "tr-vertex") else None
            steps.append(SurgeryStep(kind, selector=Selector(role, idx)))
        elif kind in ("#M", "#N"):
            steps.append(SurgeryStep(kind, genus=draw(st.integers(1, 3))))
        else:
            steps.append(SurgeryStep(kind))
    return SurgeryWord(p, base, tuple(steps))


@given(words())
@settings(max_examples=200)
def test_print_parse_identity(word):
    assert parse_word(print_word(word), word.p) == word
