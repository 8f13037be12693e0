"""Spherical-Earth geodesy: direct (destination) and inverse (haversine) problems.

Mission extents are at most a few kilometers, so a sphere of mean radius
6,371,000 m keeps errors far below vehicle navigation accuracy. The two
functions use independent formulations so each can serve as the other's
check.
"""

from __future__ import annotations

import math

from w2w.model import GeoPoint

EARTH_RADIUS_M = 6_371_000.0


def normalize_lon(lon: float) -> float:
    """Wrap longitude into [-180, 180)."""
    wrapped = math.fmod(lon + 180.0, 360.0)
    if wrapped < 0:
        wrapped += 360.0
    return wrapped - 180.0


def normalize_bearing(bearing: float) -> float:
    """Wrap a bearing into [0, 360)."""
    b = math.fmod(bearing, 360.0)
    if b < 0:
        b += 360.0
    return b


def geodesic_destination(origin: GeoPoint, bearing_deg: float, distance_m: float) -> GeoPoint:
    """Point reached by traveling `distance_m` from `origin` along `bearing_deg`.

    Spherical direct solution:
        phi2 = asin(sin phi1 cos d + cos phi1 sin d cos theta)
        lam2 = lam1 + atan2(sin theta sin d cos phi1, cos d - sin phi1 sin phi2)
    with d the angular distance (distance / R).
    """
    if distance_m < 0:
        raise ValueError(f"distance must be >= 0, got {distance_m}")
    if distance_m == 0:
        return origin
    phi1 = math.radians(origin.lat)
    lam1 = math.radians(origin.lon)
    theta = math.radians(bearing_deg)
    delta = distance_m / EARTH_RADIUS_M

    sin_phi2 = math.sin(phi1) * math.cos(delta) + math.cos(phi1) * math.sin(delta) * math.cos(theta)
    sin_phi2 = min(1.0, max(-1.0, sin_phi2))
    phi2 = math.asin(sin_phi2)
    lam2 = lam1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(phi1),
        math.cos(delta) - math.sin(phi1) * sin_phi2,
    )
    return GeoPoint(math.degrees(phi2), normalize_lon(math.degrees(lam2)))


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters between two points."""
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlam = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    h = min(1.0, h)
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(h))
