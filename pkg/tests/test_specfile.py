"""Parser, serializer, and validation tests for the platform file format."""

import random

import pytest

from mechx.capacity import analyze
from mechx.model import Continuous, DiscreteStates
from mechx.specfile import (
    DatasetCorrupt,
    Diagnostic,
    DuplicateGroupLabel,
    MissingPlatformName,
    ParseError,
    Severity,
    SpecFileError,
    dataset_lookup,
    is_computable,
    load_dataset,
    parse_platform,
    serialize_platform,
    validate,
)

from conftest import SIMPLE_ROBOT, random_document


class TestParseReference:
    def test_simple_robot_shape(self):
        doc = parse_platform(SIMPLE_ROBOT)
        p = doc.platform
        assert p.name == "simple-robot"
        assert p.kind == "artificial"
        assert p.year is None
        assert p.processor is None
        assert [g.label for g in p.groups] == ["gripper", "servo", "led"]

    def test_simple_robot_groups(self):
        p = parse_platform(SIMPLE_ROBOT).platform
        gripper, servo, led = p.groups
        assert gripper.levels_spec == DiscreteStates(2)
        assert gripper.multiplicity == 1
        assert isinstance(servo.levels_spec, Continuous)
        assert servo.levels_spec.minimum == 0
        assert servo.levels_spec.maximum == 360
        assert servo.levels_spec.resolution == 0.1
        assert servo.multiplicity == 2
        assert led.tags == frozenset({"non-mechanical"})
        assert not led.is_mechanical
        assert gripper.is_mechanical and servo.is_mechanical

    def test_simple_robot_line_map(self):
        doc = parse_platform(SIMPLE_ROBOT)
        lm = doc.source_line_map
        assert lm["platform"] == 1
        assert lm["kind"] == 2
        assert lm["group:gripper"] == 3
        assert lm["group:servo"] == 4
        assert lm["group:led"] == 5

    def test_full_statement_set(self):
        text = (
            'platform "rig"\n'
            "kind artificial\n"
            "year 2011\n"
            'processor "chip" transistors 1000\n'
            'note "first"\n'
            'note "second"\n'
            'group "a" count 3 states 4\n'
        )
        doc = parse_platform(text)
        p = doc.platform
        assert p.year == 2011
        assert p.processor.name == "chip"
        assert p.processor.transistors == 1000
        assert p.notes == ("first", "second")
        assert doc.source_line_map["year"] == 3
        assert doc.source_line_map["note[1]"] == 6

    def test_unnamed_processor(self):
        text = 'platform "rig"\nkind artificial\nprocessor transistors 5\n'
        p = parse_platform(text).platform
        assert p.processor.name == ""
        assert p.processor.transistors == 5

    def test_scientific_transistor_count_flagged(self):
        text = 'platform "rig"\nkind artificial\nprocessor "c" transistors 4.7e7\n'
        doc = parse_platform(text)
        assert doc.platform.processor.transistors == 47_000_000
        assert doc.scientific_transistors

    def test_kind_defaulting(self):
        doc = parse_platform('platform "rig"\ngroup "a" count 1 states 2\n')
        assert doc.platform.kind == "artificial"
        assert doc.kind_defaulted
        explicit = parse_platform('platform "rig"\nkind natural\n')
        assert not explicit.kind_defaulted

    def test_comments_and_blank_lines(self):
        text = (
            "# leading comment\n"
            "\n"
            'platform "rig"   # trailing comment\n'
            "   \n"
            "kind natural\n"
            "# done\n"
        )
        p = parse_platform(text).platform
        assert p.name == "rig"
        assert p.kind == "natural"

    def test_crlf_accepted(self):
        text = 'platform "rig"\r\nkind natural\r\n'
        assert parse_platform(text).platform.kind == "natural"

    def test_string_escapes(self):
        text = 'platform "a\\"b\\\\c\\nd\\te"\n'
        assert parse_platform(text).platform.name == 'a"b\\c\nd\te'

    def test_negative_range_bounds(self):
        text = 'platform "r"\ngroup "j" count 2 range -119.5 119.5 resolution 0.1\n'
        g = parse_platform(text).platform.groups[0]
        assert g.levels_spec.minimum == -119.5
        assert g.levels_spec.maximum == 119.5


# Each entry: (document text, expected exception type, expected 1-based line).
BAD_DOCS = [
    ("", MissingPlatformName, None),
    ("kind artificial\n", MissingPlatformName, None),
    ('platform "a"\nplatform "b"\n', ParseError, 2),
    ('platform "a"\nkind artificial\nkind natural\n', ParseError, 3),
    ('platform "a"\nyear 2000\nyear 2001\n', ParseError, 3),
    (
        'platform "a"\nprocessor transistors 1\nprocessor transistors 2\n',
        ParseError,
        3,
    ),
    ('platform "a"\nkind robot\n', ParseError, 2),
    ('platform "a"\nwibble 3\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1 states 2\ngroup "g" count 2 states 3\n',
     DuplicateGroupLabel, 3),
    ('platform "a"\ngroup "g" count 1 range 10 10 resolution 0.1\n',
     ParseError, 2),
    ('platform "a"\ngroup "g" count 1 range 5 4 resolution 0.1\n',
     ParseError, 2),
    ('platform "a"\ngroup "g" count 1 range 0 1 resolution -0.5\n',
     ParseError, 2),
    ('platform "a"\ngroup "g" count 0 states 2\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1 states 0\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1\n', ParseError, 2),
    ('platform "a"\ngroup "g" states 2\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1 states 2 extra\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1 states 2 tag\n', ParseError, 2),
    ('platform "a"\ngroup "g" count 1 states 2 tag nope\n', ParseError, 2),
    ('platform "a"\nyear 19.5\n', ParseError, 2),
    ('platform "a"\nyear soon\n', ParseError, 2),
    ('platform "a" extra\n', ParseError, 1),
    ('platform\n', ParseError, 1),
    ('platform "unterminated\n', ParseError, 1),
    ('platform "bad \\q escape"\n', ParseError, 1),
    ('"stray string"\n', ParseError, 1),
    ('platform "a"\nnote unquoted\n', ParseError, 2),
    ('platform "a"\nprocessor "c" 100\n', ParseError, 2),
    ('platform "a"\nprocessor "c" transistors many\n', ParseError, 2),
]


class TestParseErrors:
    @pytest.mark.parametrize("text,exc,line", BAD_DOCS)
    def test_rejected(self, text, exc, line):
        with pytest.raises(exc) as info:
            parse_platform(text)
        if line is not None:
            assert info.value.line == line

    def test_error_hierarchy(self):
        assert issubclass(DuplicateGroupLabel, ParseError)
        assert issubclass(MissingPlatformName, SpecFileError)
        assert issubclass(ParseError, SpecFileError)
        assert issubclass(SpecFileError, ValueError)

    def test_error_message_mentions_line(self):
        with pytest.raises(ParseError) as info:
            parse_platform('platform "a"\nwibble\n')
        assert "line 2" in str(info.value)


class TestSerialize:
    def test_canonical_form(self):
        doc = parse_platform(SIMPLE_ROBOT)
        out = serialize_platform(doc.platform)
        assert out == SIMPLE_ROBOT

    def test_statement_order_normalized(self):
        # Statements in an unusual order serialize into the fixed layout.
        text = (
            'year 2001\nkind artificial\nplatform "rig"\n'
            'group "a" count 1 states 2\n'
        )
        out = serialize_platform(parse_platform(text).platform)
        lines = out.splitlines()
        assert lines[0] == 'platform "rig"'
        assert lines[1] == "kind artificial"
        assert lines[2] == "year 2001"

    def test_tags_sorted(self):
        text = 'platform "r"\ngroup "g" count 1 states 2 tag "z" tag "a"\n'
        out = serialize_platform(parse_platform(text).platform)
        assert 'tag "a" tag "z"' in out

    def test_escapes_round_trip(self):
        name = 'he said "hi"\\\n\tend'
        source = 'platform "he said \\"hi\\"\\\\\\n\\tend"\n'
        text = serialize_platform(parse_platform(source).platform)
        assert parse_platform(text).platform.name == name

    def test_idempotent(self):
        once = serialize_platform(parse_platform(SIMPLE_ROBOT).platform)
        twice = serialize_platform(parse_platform(once).platform)
        assert once == twice

    def test_shortest_number_form(self):
        text = 'platform "r"\ngroup "g" count 1 range 0 360 resolution 0.1\n'
        out = serialize_platform(parse_platform(text).platform)
        assert "range 0 360 resolution 0.1" in out
        assert "0.30000000000000004" not in out


def test_random_documents_round_trip():
    rng = random.Random(20260821)
    for _ in range(1000):
        text = random_document(rng)
        first = parse_platform(text).platform
        canon = serialize_platform(first)
        second = parse_platform(canon).platform
        assert first == second
        assert serialize_platform(second) == canon
        left = analyze(first)
        right = analyze(second)
        assert left.count_all.log10 == right.count_all.log10
        assert left.count_all.exact == right.count_all.exact
        assert left.count_mechanical.exact == right.count_mechanical.exact


def test_random_documents_mutation_rejected():
    # Breaking one token of a valid document must fail with a located error.
    rng = random.Random(97)
    rejected = 0
    for _ in range(200):
        text = serialize_platform(parse_platform(random_document(rng)).platform)
        lines = text.splitlines()
        idx = rng.randrange(len(lines))
        lines[idx] = lines[idx] + ' "'
        mutated = "\n".join(lines) + "\n"
        with pytest.raises(SpecFileError) as info:
            parse_platform(mutated)
        if getattr(info.value, "line", None) is not None:
            assert info.value.line == idx + 1
            rejected += 1
    assert rejected > 150


class TestValidate:
    def test_clean_document(self):
        diags = validate(parse_platform(SIMPLE_ROBOT))
        assert all(d.severity is Severity.WARNING for d in diags)
        # The only expected entry is the informational missing-processor one.
        assert all(d.message.startswith("informational:") for d in diags)

    def test_non_integral_span_warning(self):
        text = 'platform "r"\ngroup "g" count 1 range 0 10.05 resolution 0.1\n'
        diags = validate(parse_platform(text))
        hits = [d for d in diags if "span" in d.message]
        assert len(hits) == 1
        assert hits[0].severity is Severity.WARNING
        assert hits[0].line == 2

    def test_natural_with_processor(self):
        text = 'platform "r"\nkind natural\nprocessor "c" transistors 5\n'
        diags = validate(parse_platform(text))
        assert any("natural" in d.message for d in diags)

    def test_scientific_transistors(self):
        text = 'platform "r"\nkind artificial\nprocessor "c" transistors 1e6\n'
        diags = validate(parse_platform(text))
        assert any("scientific" in d.message for d in diags)

    def test_kind_default_informational(self):
        diags = validate(parse_platform('platform "r"\n'))
        assert any(
            d.message.startswith("informational:") and "kind" in d.message
            for d in diags
        )

    def test_zero_groups_informational(self):
        diags = validate(parse_platform('platform "r"\nkind natural\n'))
        assert any("no groups" in d.message for d in diags)

    def test_sorted_by_line(self):
        text = (
            'platform "r"\n'
            "kind natural\n"
            'processor "c" transistors 1e6\n'
            'group "g" count 1 range 0 10.05 resolution 0.1\n'
        )
        diags = validate(parse_platform(text))
        lines = [d.line for d in diags if d.line is not None]
        assert lines == sorted(lines)

    def test_diagnostic_str(self):
        d = Diagnostic(Severity.WARNING, 3, "uh oh")
        assert str(d) == "warning: line 3: uh oh"


class TestDatasetAccess:
    def test_lookup_by_stem(self):
        doc = dataset_lookup("nao")
        assert doc.platform.name == "NAO"

    def test_lookup_by_name(self):
        assert dataset_lookup("NAO").platform.name == "NAO"
        assert dataset_lookup("big dog").platform.name == "Big Dog"
        assert dataset_lookup("Bellagio Fountain").platform.name.startswith(
            "Bellagio"
        )

    def test_lookup_unknown(self):
        with pytest.raises(KeyError):
            dataset_lookup("no-such-platform")

    def test_load_dataset_cached(self):
        first = load_dataset()
        second = load_dataset()
        assert [d.platform.name for d in first] == [
            d.platform.name for d in second
        ]

    def test_is_computable(self):
        assert is_computable(dataset_lookup("nao").platform)
        assert not is_computable(dataset_lookup("human-wa-eval").platform)

    def test_dataset_corrupt_is_runtime_error(self):
        assert issubclass(DatasetCorrupt, RuntimeError)
