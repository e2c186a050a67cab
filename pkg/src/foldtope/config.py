"""Central tolerances and tunables.

All geometric comparisons in the package go through these values so that
they can be overridden in one place (the CLI exposes them as key=value
overrides).
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    eps_angle: float = 1e-9  # radians
    eps_len: float = 1e-9  # relative to perimeter
    eps_vol: float = 1e-12  # Cayley-Menger determinant slack

    def length(self, perimeter):
        return self.eps_len * max(perimeter, 1.0)


TOL = Tolerances()

# safety factor inside the strict star-polygon bound on the convex angle
STAR_DELTA = 0.1

# default cap for exhaustive searches
MAX_RESULTS = 200_000


def set_tolerances(**kw):
    """Replace the global tolerances (used by the CLI config overrides)."""
    global TOL
    TOL = replace(TOL, **kw)
    return TOL


def tol():
    return TOL
