"""Golden end-to-end missions used across the suite.

Two field-style survey briefs: A is a circle inspection followed by south
transects and a lawnmower sweep; B is a longer shipwreck survey with depth
adjustments and two track passes. Token expectations are frozen.
"""

SURVEY_A_TEXT = (
    "Start at 38.7969° N, 75.1538° W, Circle for a turn at a radius of 10 m in a "
    "clockwise direction at an altitude of 1 m. Move south 30 m and then Move south "
    "10 m. Move south for 100 m and then Track left for 100 m at a spacing of 14 m. "
    "End at 38.7968° N, 75.1535° W"
)

SURVEY_A_TOKENS = (
    "[S: 38.7969, -75.1538]; [Cr: 1, 10, cw, a, 1]; [Mv: 180, 30, 1, n]; "
    "[Mv: 180, 10, 1, n]; [Mv: 180, 100, 1, n]; [Tr: l, 14, 100, n]; "
    "[E: 38.7968, -75.1535]"
)

SURVEY_A_COMMAND_COUNT = 7

SURVEY_B_TEXT = (
    "Start at 38.8670° N, 75.1356° W, Move south for 30m, Adjust to a depth of 7.5m. "
    "Move south 30 m and then Move east 120 m. Track right for 100 m with a spacing "
    "of 100 m and then Move north for 100 m. Track right for 120 m with a spacing of "
    "120 m. Move south 20 m and then Adjust to a depth of 2m. "
    "End at 38.867° N, 75.1642° W."
)

SURVEY_B_TOKENS = (
    "[S: 38.867, -75.1356]; [Mv: 180, 30, 1, n]; [Az: d, 7.5]; [Mv: 180, 30, 1, n]; "
    "[Mv: 90, 120, 1, n]; [Tr: r, 100, 100, n]; [Mv: 0, 100, 1, n]; "
    "[Tr: r, 120, 120, n]; [Mv: 180, 20, 1, n]; [Az: d, 2]; [E: 38.867, -75.1642]"
)

SURVEY_B_COMMAND_COUNT = 11
