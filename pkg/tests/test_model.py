import pytest

from w2w.model import (
    Adjust,
    Circle,
    End,
    GeoPoint,
    Mission,
    Move,
    Rotation,
    Spiral,
    Start,
    Track,
    TrackDir,
    VerticalSetting,
    validate_mission,
)


def _mission(*commands):
    return Mission(tuple(commands))


P0 = GeoPoint(0.0, 0.0)


class TestConstruction:
    def test_geopoint_range(self):
        GeoPoint(90, 180)
        GeoPoint(-90, -180)
        with pytest.raises(ValueError):
            GeoPoint(95, 0)
        with pytest.raises(ValueError):
            GeoPoint(0, 181)
        with pytest.raises(ValueError):
            GeoPoint(float("nan"), 0)

    def test_move_ranges(self):
        Move(0, 1, 0.1)
        Move(359.99, 1e6, 10)
        with pytest.raises(ValueError):
            Move(360, 10, 1)
        with pytest.raises(ValueError):
            Move(-1, 10, 1)
        with pytest.raises(ValueError):
            Move(0, 0, 1)
        with pytest.raises(ValueError):
            Move(0, 10, 0)
        with pytest.raises(ValueError):
            Move(0, float("inf"), 1)

    def test_vertical_setting(self):
        assert VerticalSetting.no_change().is_no_change
        assert VerticalSetting.depth(0).value == 0
        with pytest.raises(ValueError):
            VerticalSetting.depth(-1)
        with pytest.raises(ValueError):
            VerticalSetting.no_change().__class__(VerticalSetting.no_change().mode, 5.0)

    def test_adjust_requires_resolved_vertical(self):
        Adjust(VerticalSetting.altitude(2))
        with pytest.raises(ValueError):
            Adjust(VerticalSetting.no_change())

    def test_track_circle_spiral_ranges(self):
        Track(TrackDir.LEFT, 1, 1)
        Circle(0.5, 1, Rotation.CW)
        Spiral(2, 10, Rotation.CCW)
        with pytest.raises(ValueError):
            Track(TrackDir.LEFT, 0, 10)
        with pytest.raises(ValueError):
            Circle(0, 10, Rotation.CW)
        with pytest.raises(ValueError):
            Spiral(1, -5, Rotation.CW)

    def test_mission_equality_ignores_metadata(self):
        a = Mission((Start(P0), End(P0)), name="a", id="1")
        b = Mission((Start(P0), End(P0)), name="b", id="2")
        assert a == b


class TestValidateMission:
    def test_valid_simple_mission(self):
        m = _mission(Start(P0), Move(180, 30, 1), End(P0))
        assert [d for d in validate_mission(m) if d.severity == "error"] == []

    def test_missing_start(self):
        diags = validate_mission(_mission(Move(180, 30, 1)))
        codes = {d.code for d in diags if d.severity == "error"}
        assert "missing_start" in codes
        assert "missing_end" in codes

    def test_duplicate_start(self):
        diags = validate_mission(_mission(Start(P0), Start(P0), End(P0)))
        assert "duplicate_start" in {d.code for d in diags}

    def test_track_without_move_is_error(self):
        m = _mission(Start(P0), Track(TrackDir.LEFT, 14, 100), End(P0))
        assert "track_without_move" in {d.code for d in diags_errors(m)}

    def test_track_after_circle_loses_leg(self):
        m = _mission(
            Start(P0),
            Move(0, 50, 1),
            Circle(1, 10, Rotation.CW),
            Track(TrackDir.LEFT, 14, 100),
            End(P0),
        )
        assert "track_without_move" in {d.code for d in diags_errors(m)}

    def test_track_after_move_ok(self):
        m = _mission(Start(P0), Move(0, 50, 1), Track(TrackDir.LEFT, 14, 100), End(P0))
        assert diags_errors(m) == []

    def test_zero_leg_warns(self):
        diags = validate_mission(_mission(Start(P0), End(P0)))
        assert [d.severity for d in diags] == ["warning"]
        assert diags[0].code == "zero_leg"

    def test_track_extent_below_spacing_warns(self):
        m = _mission(Start(P0), Move(0, 50, 1), Track(TrackDir.LEFT, 100, 50), End(P0))
        diags = validate_mission(m)
        assert diags_errors(m) == []
        assert "track_degenerate" in {d.code for d in diags}

    def test_pure(self):
        m = _mission(Start(P0), Move(180, 30, 1), End(P0))
        assert validate_mission(m) == validate_mission(m)


def diags_errors(mission):
    return [d for d in validate_mission(mission) if d.severity == "error"]
