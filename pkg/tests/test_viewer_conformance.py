"""The viewer's outbound lines must parse under the engine's event grammar.

The fixture file is the canonical scripted session shared with the
frontend test suite (frontend/tests/gestures.test.ts regenerates the
same lines from pointer input and asserts byte equality); this side
proves every line is valid engine input. Plain text, so it runs without
the viewer being built.
"""

import os

from markerkit.engine import Command, EventKind, parse_event

FIXTURE = os.path.join(os.path.dirname(__file__), "..",
                       "frontend", "tests", "fixtures", "outbound_events.txt")


def load_fixture_lines():
    with open(FIXTURE, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def test_every_viewer_line_parses_under_engine_grammar():
    lines = load_fixture_lines()
    assert len(lines) >= 20
    for number, line in enumerate(lines, start=1):
        event = parse_event(FIXTURE, number, line.split())
        assert event.kind in EventKind


def test_fixture_covers_the_full_gesture_vocabulary():
    events = [parse_event(FIXTURE, i, line.split())
              for i, line in enumerate(load_fixture_lines(), start=1)]
    kinds = {e.kind for e in events}
    assert kinds == set(EventKind)
    commands = {e.command for e in events if e.kind is EventKind.COMMAND}
    assert commands == set(Command)


def test_fixture_pinch_factors_are_positive_and_clamped_range_compatible():
    for i, line in enumerate(load_fixture_lines(), start=1):
        event = parse_event(FIXTURE, i, line.split())
        if event.kind is EventKind.PINCH_SCALE:
            assert event.scale_factor > 0.0
