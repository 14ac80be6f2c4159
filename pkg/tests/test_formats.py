import pytest

from seminf.algebra import derive_addition
from seminf.errors import FormatError
from seminf.formats import format_algebra, load_algebra, parse_algebra, save_algebra
from seminf.rook import mk_algebra

SMALL = """\
%algebra AND   # two-element semilattice
%elements 0 1
%mul
0 0
0 1
"""


def test_round_trip_generated(b21_gen, c2_gen):
    for gen in (b21_gen, c2_gen):
        text = format_algebra(gen.base, gen.reps)
        parsed = parse_algebra(text)
        assert parsed.algebra.same_tables(gen.base)
        assert parsed.reps == gen.reps
        assert format_algebra(parsed.algebra, parsed.reps) == text


def test_round_trip_with_addition(b21, tmp_path):
    S = b21.with_addition(derive_addition(b21, 2))
    path = tmp_path / "b21.alg"
    save_algebra(path, S)
    again = load_algebra(path).algebra
    assert (again.add == S.add).all()
    assert format_algebra(again) == path.read_text()


def test_round_trip_subalgebra(c2_gen):
    M = mk_algebra(2, 2, c2_gen)
    assert format_algebra(parse_algebra(format_algebra(M)).algebra) == format_algebra(M)


def test_parse_minimal_with_comments():
    S = parse_algebra(SMALL).algebra
    assert S.name == "AND" and S.elements == ("0", "1")
    assert S.mul.tolist() == [[0, 0], [0, 1]]
    assert S.inv is None


@pytest.mark.parametrize("text, needle", [
    ("%elements a\n", "missing %mul"),
    ("%mul\na\n", "missing %elements"),
    (SMALL + "%bogus\n", "unknown directive"),
    (SMALL + "%mul\n", "repeated directive"),
    ("%elements a b\n%mul\na a\n", "needs 2 rows"),
    ("%elements a b\n%mul\na a\na\n", "row needs 2 entries"),
    ("%elements a b\n%mul\na c\na a\n", "unknown element"),
    ("%elements a b\n%mul\nb b\na a\n", "invalid multiplication"),
    ("%elements a a\n%mul\na a\na a\n", "duplicate element"),
    (SMALL + "%inv 0 0\n", "not the unique-inverse map"),
    ("%elements a b\n%mul\na a\nb b\n%inv a b\n", "%inv given but"),
    ("stray\n" + SMALL, "outside a table"),
    (SMALL + "%matrices\n0:\n1: 1-2\n", "bad pair"),
    (SMALL + "%matrices\n0:\n", "lists 1 of 2"),
    (SMALL + "%matrices\n0: 1->1\n1: 1->1\n", "share a matrix"),
    (SMALL + "%matrices\n0: 1->1\n1:\n", "disagrees with matrices"),
])
def test_format_errors(text, needle):
    with pytest.raises(FormatError) as info:
        parse_algebra(text)
    assert needle in str(info.value)


def test_error_carries_line_number():
    with pytest.raises(FormatError) as info:
        parse_algebra("%elements a b\n%mul\na a\na x\n")
    assert info.value.line == 4
