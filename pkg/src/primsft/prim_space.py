"""Points of Prim(O(E)) over the enumerated quasi-orbits.

A periodic quasi-orbit of least period N carries a circle of primitive
ideals, parametrized by lambda in T modulo lambda ~ eta iff
lambda**N == eta**N; it is stored by the invariant lambda**N.  An aperiodic
quasi-orbit carries a single primitive ideal.

Circle points are represented exactly as rational angles (fractions of a
full turn).  Angles may also carry formal irrational components, used only
to exercise the equivalence laws.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

from .quasi_orbit import QuasiOrbit, QuasiOrbitSpace, Tristate, closure_contains, quasi_orbit_space
from .sft import SftSystem, check_alpha_unital

__all__ = [
    "Angle",
    "Bounds",
    "CircleClass",
    "ApPoint",
    "PrimPoint",
    "PrimReport",
    "NonUnitalError",
    "approx_equiv",
    "roots_of_unity",
    "prim_points",
    "prim_points_from_space",
    "specialization",
    "prim_report",
]


class NonUnitalError(ValueError):
    """The input violates the unital hypothesis (Y = X) under which Prim(O(E)) is described."""


class Bounds(NamedTuple):
    max_cycle_len: int
    max_bridge_len: int


@dataclass(frozen=True, order=True)
class Angle:
    """The circle point exp(2*pi*i*theta) with theta = turns + sum(coeff * marker).

    Markers are formal symbols assumed rationally independent of 1 and of
    each other, so equality is exact and structural.
    """

    turns: Fraction
    irrational: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", Fraction(self.turns) % 1)
        merged: dict[str, Fraction] = {}
        for name, coeff in self.irrational:
            merged[name] = merged.get(name, Fraction(0)) + Fraction(coeff)
        object.__setattr__(
            self, "irrational", tuple(sorted((k, v) for k, v in merged.items() if v))
        )

    @classmethod
    def root(cls, k: int, d: int) -> Angle:
        """exp(2*pi*i*k/d)."""
        return cls(Fraction(k, d))

    @classmethod
    def parse(cls, text: str) -> Angle:
        text = text.strip()
        if not re.fullmatch(r"-?\d+(/\d+)?", text):
            raise ValueError(f"bad angle {text!r}; expected k/d in turns")
        return cls(Fraction(text))

    @property
    def is_rational(self) -> bool:
        return not self.irrational

    def pow(self, z: int) -> Angle:
        """lambda -> lambda**z."""
        return Angle(self.turns * z, tuple((k, v * z) for k, v in self.irrational))

    def __mul__(self, other: Angle) -> Angle:
        return Angle(self.turns + other.turns, self.irrational + other.irrational)

    def __str__(self) -> str:
        s = f"{self.turns.numerator}/{self.turns.denominator}"
        for name, coeff in self.irrational:
            s += f"+{coeff}*{name}"
        return s


def roots_of_unity(d: int) -> list[Angle]:
    if d < 1:
        raise ValueError("d must be positive")
    return [Angle.root(k, d) for k in range(d)]


def approx_equiv(q: QuasiOrbit, lam: Angle, eta: Angle) -> bool:
    """(q, lam) ~ (q, eta): lam**z == eta**z on the isotropy group of q."""
    n = q.isotropy_period
    if n == 0:
        return True
    return lam.pow(n) == eta.pow(n)


@dataclass(frozen=True)
class CircleClass:
    orbit: QuasiOrbit
    angle_class: Angle  # lambda**N, the ~-invariant

    def __post_init__(self) -> None:
        if self.orbit.isotropy_period < 1:
            raise ValueError("circle classes live over periodic quasi-orbits")

    @property
    def label(self) -> str:
        return f"{self.orbit.fingerprint} lambda^{self.orbit.isotropy_period}={self.angle_class}"


@dataclass(frozen=True)
class ApPoint:
    orbit: QuasiOrbit

    def __post_init__(self) -> None:
        if self.orbit.isotropy_period != 0:
            raise ValueError("aperiodic points live over aperiodic quasi-orbits")

    @property
    def label(self) -> str:
        return self.orbit.fingerprint


PrimPoint = Union[CircleClass, ApPoint]


def _require_unital(sys_: SftSystem) -> None:
    if not check_alpha_unital(sys_):
        raise NonUnitalError(
            "Prim(O(E)) is described only when alpha is unital (Y = X, domain = whole alphabet); "
            f"domain here is {list(sys_.domain_symbols)}"
        )


def prim_points_from_space(space: QuasiOrbitSpace, angle_samples: list[Angle]) -> list[PrimPoint]:
    points: list[PrimPoint] = []
    for q in space.orbits:
        if q.periodic:
            classes = sorted({lam.pow(q.isotropy_period) for lam in angle_samples})
            points.extend(CircleClass(q, a) for a in classes)
        else:
            points.append(ApPoint(q))
    return points


def prim_points(
    sys_: SftSystem, bounds: Bounds | tuple[int, int], angle_samples: list[Angle]
) -> list[PrimPoint]:
    _require_unital(sys_)
    space = quasi_orbit_space(sys_, *bounds)
    return prim_points_from_space(space, angle_samples)


def specialization(points: list[PrimPoint]) -> list[tuple[int, int]]:
    """Pairs (i, j) with points[j] in the closure of {points[i]}.

    An aperiodic point's closure holds every point, at every angle, over a
    quasi-orbit contained in its own closure.  Circle classes over finite
    orbits are closed points.
    """
    systems = {p.orbit.representative.system for p in points}
    if len(systems) > 1:
        raise ValueError("points come from different systems")
    pairs = []
    for i, p in enumerate(points):
        if isinstance(p, CircleClass):
            pairs.append((i, i))
            continue
        rep = p.orbit.representative
        depth = 2 * (len(rep.left) + len(rep.bridge) + len(rep.right)) + 1
        for j, other in enumerate(points):
            y = other.orbit.representative
            if closure_contains(rep, y, depth) is Tristate.YES:
                pairs.append((i, j))
    return sorted(pairs)


@dataclass
class PrimReport:
    system: SftSystem
    bounds: Bounds
    angle_spec: str
    space: QuasiOrbitSpace
    points: list[PrimPoint]
    specialization: list[tuple[int, int]]
    verification: dict | None = None
    mode: str = "exact"
    tol: float = 0.0
    errors: list[str] = field(default_factory=list)

    def orbit_index(self, q: QuasiOrbit) -> int:
        return self.space.orbits.index(q)


def prim_report(
    sys_: SftSystem,
    bounds: Bounds | tuple[int, int],
    samples: list[Angle],
    angle_spec: str | None = None,
    verify: bool = False,
    mode: str = "exact",
    tol: float = 0.0,
) -> PrimReport:
    _require_unital(sys_)
    bounds = Bounds(*bounds)
    space = quasi_orbit_space(sys_, *bounds)
    points = prim_points_from_space(space, samples)
    report = PrimReport(
        system=sys_,
        bounds=bounds,
        angle_spec=angle_spec if angle_spec is not None else ",".join(str(a) for a in samples),
        space=space,
        points=points,
        specialization=specialization(points),
        mode=mode,
        tol=tol,
    )
    if space.truncated:
        report.errors.append(f"enumeration truncated at budget {space.budget}")
    if verify:
        from .rep_oracle import verification_summary

        report.verification = verification_summary(sys_, samples, bounds.max_cycle_len, mode, tol)
    return report
