"""Parameter grids shared by the unit and acceptance tests."""

from fractions import Fraction as Fr

# v > u(alpha) at every point: u(1/10) ~ 0.52 is the largest u used
DISORDERED_GRID = [
    (a, v)
    for a in (Fr(1, 10), Fr(1, 4), Fr(1, 2), Fr(3, 4))
    for v in (Fr(3, 5), Fr(2, 3), Fr(3, 4), Fr(4, 5), Fr(9, 10))
]

# v < u(alpha) at every point: u(1/9) = 1/2 is the smallest u used
ORDERED_GRID = [
    (a, v)
    for a in (Fr(1, 100), Fr(1, 25), Fr(1, 16), Fr(1, 9))
    for v in (Fr(1, 10), Fr(1, 5), Fr(3, 10), Fr(2, 5), Fr(9, 20))
]

SADDLE_GRID = [
    (a, v)
    for a in (Fr(1, 49), Fr(1, 36), Fr(1, 25), Fr(1, 16), Fr(1, 9))
    for v in (Fr(1, 5), Fr(2, 5))
]
