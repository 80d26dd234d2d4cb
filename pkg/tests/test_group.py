"""
群上下文测试
"""

import pytest

from core.errors import ElementSyntaxError, MixedContextError
from core.group import (
    FreeGroup,
    IntegerGroup,
    cayley_distance,
    context_from_tag,
    format_element,
    parse_element,
    word_dist,
)


class TestIntegerGroup:
    def test_basic_operations(self):
        z = IntegerGroup()
        a, b = z.parse("3"), z.parse("-5")
        assert z.op(a, b).value == -2
        assert z.inverse(a).value == -3
        assert z.delay(a, b).value == -8
        assert z.norm(b) == 5
        assert z.power(a, 4).value == 12
        assert z.is_identity(z.identity)
        assert z.tag() == "Z"

    def test_positive_means_non_negative(self):
        z = IntegerGroup()
        assert z.is_positive(z.element(0))
        assert z.is_positive(z.element(7))
        assert not z.is_positive(z.element(-1))

    def test_parse_element_accepts_int(self):
        z = IntegerGroup()
        assert parse_element(z, 4).value == 4
        assert parse_element(z, "-2").value == -2
        with pytest.raises(ElementSyntaxError):
            parse_element(z, True)
        with pytest.raises(ElementSyntaxError):
            parse_element(z, "x")

    def test_negative_power_rejected(self):
        z = IntegerGroup()
        with pytest.raises(ValueError):
            z.power(z.element(1), -1)


class TestFreeGroup:
    def test_reduction(self, free_ab):
        x = free_ab.parse("a b b' a")
        assert free_ab.format(x) == "a a"
        assert free_ab.is_identity(free_ab.parse("a a'"))

    def test_inverse_and_delay(self, free_ab):
        x = free_ab.parse("a b")
        assert free_ab.format(free_ab.inverse(x)) == "b' a'"
        y = free_ab.parse("a b a")
        assert free_ab.format(free_ab.delay(x, y)) == "a"
        assert free_ab.norm(free_ab.delay(y, x)) == 1

    def test_positive(self, free_ab):
        assert free_ab.is_positive(free_ab.word(["a", "b"]))
        assert free_ab.is_positive(free_ab.identity)
        assert not free_ab.is_positive(free_ab.parse("a b'"))

    def test_unknown_letter(self, free_ab):
        with pytest.raises(ElementSyntaxError):
            free_ab.parse("c")
        with pytest.raises(ElementSyntaxError):
            free_ab.word(["z"])

    def test_letters(self, free_ab):
        assert free_ab.letters(free_ab.parse("a b'")) == [("a", 1), ("b", -1)]

    def test_canonical_order(self, free_ab):
        values = [free_ab.parse(t) for t in ["b", "a a", "", "a'", "a"]]
        ordered = [free_ab.format(v) for v in sorted(values)]
        assert ordered == ["", "a", "b", "a'", "a a"]

    def test_duplicate_alphabet_rejected(self):
        with pytest.raises(ElementSyntaxError):
            FreeGroup(("a", "a"))

    def test_mixed_contexts_rejected(self, free_ab):
        z = IntegerGroup()
        with pytest.raises(MixedContextError):
            free_ab.op(free_ab.identity, z.identity)


class TestTags:
    def test_round_trip(self):
        assert isinstance(context_from_tag("Z"), IntegerGroup)
        assert context_from_tag("free:ab") == FreeGroup(("a", "b"))
        assert context_from_tag("free:x,yy").alphabet == ("x", "yy")
        assert context_from_tag("free:ab").tag() == "free:ab"

    def test_unknown_tag(self):
        with pytest.raises(ElementSyntaxError):
            context_from_tag("Q")


class TestDistances:
    def test_word_dist(self):
        assert word_dist(("a", "b"), ("a", "c", "c")) == 3
        assert word_dist((), ("a",)) == 1
        assert word_dist(("a",), ("a",)) == 0

    def test_cayley_distance(self, free_ab):
        a = free_ab.parse("a")
        b = free_ab.parse("b")
        assert cayley_distance(free_ab, a, b, radius=4) == 2
        assert cayley_distance(free_ab, a, a, radius=0) == 0
        assert cayley_distance(free_ab, free_ab.identity, free_ab.parse("a a a"), radius=2) is None


def _random_element(ctx, rng, size=6):
    tokens = [rng.choice(["a", "b", "a'", "b'"]) for _ in range(rng.randint(0, size))]
    return ctx.parse(" ".join(tokens))


class TestGroupLaws:
    def test_free_group_laws(self, free_ab, rng):
        for _ in range(50):
            x, y, z = (_random_element(free_ab, rng) for _ in range(3))
            assert free_ab.op(free_ab.op(x, y), z) == free_ab.op(x, free_ab.op(y, z))
            assert free_ab.is_identity(free_ab.op(x, free_ab.inverse(x)))
            assert free_ab.op(x, free_ab.delay(x, y)) == y
            assert free_ab.norm(free_ab.op(x, y)) <= free_ab.norm(x) + free_ab.norm(y)
            assert free_ab.parse(format_element(free_ab, x)) == x

    def test_integer_laws(self, rng):
        z = IntegerGroup()
        for _ in range(50):
            x, y = z.element(rng.randint(-20, 20)), z.element(rng.randint(-20, 20))
            assert z.op(x, y) == z.op(y, x)
            assert z.norm(z.delay(x, y)) == abs(y.value - x.value)
            assert parse_element(z, format_element(z, x)) == x
