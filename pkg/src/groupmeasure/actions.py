"""Group actions on finite possibility sets: the coin faces and die orientations.

Die convention: right-handed playing die, opposite faces sum to 7, faces
1-2-3 counterclockwise around their shared vertex.  Face axes in the
reference placement: 1 -> +x (east), 2 -> +y (north), 3 -> +z (up).  An
orientation is named by the face pointing up and the face pointing north.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .groups import FiniteGroup, Matrix, make_coin_group, make_octahedral, mat_mul, mat_vec, octahedral_matrices
from .tables import ProbabilityTable, uniform_table

FACE_AXES: dict[int, tuple[int, int, int]] = {
    1: (1, 0, 0),
    2: (0, 1, 0),
    3: (0, 0, 1),
    4: (0, 0, -1),
    5: (0, -1, 0),
    6: (-1, 0, 0),
}

_UP = (0, 0, 1)
_NORTH = (0, 1, 0)


@dataclass(frozen=True, order=True)
class DieOrientation:
    """A die resting with face ``up`` on top and face ``north`` facing north."""

    up: int
    north: int

    def __post_init__(self) -> None:
        for name, face in (("up", self.up), ("north", self.north)):
            if face not in FACE_AXES:
                raise ValueError(f"{name} face must be 1..6, got {face}")
        if self.north == self.up or self.north == 7 - self.up:
            raise ValueError(
                f"north face {self.north} is not adjacent to up face {self.up}"
            )

    @property
    def label(self) -> str:
        return f"up{self.up}_north{self.north}"

    @classmethod
    def from_label(cls, label: str) -> DieOrientation:
        head, _, tail = label.partition("_")
        if not (head.startswith("up") and tail.startswith("north")):
            raise ValueError(f"not an orientation label: {label!r}")
        return cls(int(head[2:]), int(tail[5:]))


def _orientation_of(matrix: Matrix) -> DieOrientation:
    """Read off (up, north) after applying ``matrix`` to the reference placement."""
    up = north = None
    for face, axis in FACE_AXES.items():
        moved = mat_vec(matrix, axis)
        if moved == _UP:
            up = face
        elif moved == _NORTH:
            north = face
    if up is None or north is None:
        raise ValueError("matrix is not a cube rotation")
    return DieOrientation(up, north)


@cache
def all_orientations() -> tuple[DieOrientation, ...]:
    """The 24 die orientations, sorted by (up, north)."""
    orientations = sorted(_orientation_of(m) for m in octahedral_matrices())
    if len(set(orientations)) != 24:
        raise AssertionError("cube rotations do not give 24 distinct orientations")
    return tuple(orientations)


@dataclass(frozen=True)
class GroupAction:
    """A group acting on an ordered list of state labels; act[g][s] is a state index."""

    group: FiniteGroup
    states: tuple[str, ...]
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.act) != self.group.n:
            raise ValueError("action table must have one row per group element")
        n_states = len(self.states)
        for row in self.act:
            if len(row) != n_states or any(not 0 <= s < n_states for s in row):
                raise ValueError("action table rows must map every state to a valid state")
        e = self.group.identity
        if any(self.act[e][s] != s for s in range(n_states)):
            raise ValueError("identity element must fix every state")

    def apply(self, element: int, state: int) -> int:
        return self.act[element][state]


def coin_action() -> GroupAction:
    """The order-2 coin group acting on {heads, tails}; the flip swaps them."""
    return GroupAction(make_coin_group(), ("heads", "tails"), ((0, 1), (1, 0)))


@cache
def die_action() -> GroupAction:
    """The octahedral group permuting the 24 die orientations (simply transitive)."""
    group = make_octahedral()
    mats = octahedral_matrices()
    states = all_orientations()
    index = {o: i for i, o in enumerate(states)}
    matrix_of = {_orientation_of(m): m for m in mats}
    act = tuple(
        tuple(index[_orientation_of(mat_mul(g, matrix_of[s]))] for s in states)
        for g in mats
    )
    return GroupAction(group, tuple(o.label for o in states), act)


def uniform_over_action(action: GroupAction) -> ProbabilityTable:
    """Equal exact probability on every state of a transitive action.

    Transitivity is required: the observed data picks out a single orbit, so
    an action with several orbits does not determine one possibility set.
    """
    n_states = len(action.states)
    orbit = {action.act[g][0] for g in action.group.elements()}
    if len(orbit) != n_states:
        raise ValueError(
            f"action is not transitive ({len(orbit)} of {n_states} states reachable); "
            "no single orbit of possibilities"
        )
    return uniform_table(action.states)
