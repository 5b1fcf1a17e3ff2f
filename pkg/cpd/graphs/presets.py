"""
Built-in graph specs for the standard products.

    ladder            Z x P_2, no potential
    ladder-potential  Z x P_2 with Q = [1, -1]
    strip4            Z x P_4, the 4-strip
    cylinder3         Z x C_3 with Q = [0.7, -0.3, 1.1]
    star3             Z x star with 3 edges
    point             single vertex, the bare lattice Z^d
"""

from .models import GraphSpec

PRESETS: dict[str, GraphSpec] = {
    "ladder": GraphSpec(kind="path", size=2),
    "ladder-potential": GraphSpec(kind="path", size=2, potential=[1.0, -1.0]),
    "strip4": GraphSpec(kind="path", size=4),
    "cylinder3": GraphSpec(kind="cycle", size=3, potential=[0.7, -0.3, 1.1]),
    "star3": GraphSpec(kind="star", size=3),
    "point": GraphSpec(kind="path", size=1),
}


def get_preset(name: str) -> GraphSpec | None:
    """Return the preset spec for a name, or None if there is none."""
    return PRESETS.get(name.lower())
