"""Eventually periodic points of the dilation space X_inf and the Z-action on it.

A point is a pair (level p, sequence (x_r)_{r >= p}) of points of X with
x_r = sigma(x_{r+1}).  Every x_{r+1} is a one-step past extension of x_r, so
the whole sequence is one bi-infinite word W with a marked current position:
x_p reads W forward from the marker, x_{p+1} starts one symbol earlier, and
so on.  Each x_{r+1} has to lie in Y, hence every symbol strictly before the
marker is a domain symbol.

Sequences are glued across levels, so a point is stored at its lowest
level: either p = 0, or x_p is outside Y and cannot be pushed further down.
That gives the strata

* ``paths``  -- level 0 with x_0 in Y,
* ``tail:p`` -- level p with x_p not in Y.

The generator gamma_inv sends a level-0 point to (sigma(x_0), x_0, x_1, ...),
which moves the marker one step forward, and re-indexes a tail point one
level up without touching its word.  gamma is its inverse.

Words are stored as ``left^inf . bridge . right^inf`` with ``left`` and
``right`` given in the rotation in which they appear next to the bridge, and
``offset`` the marker position measured from the first bridge symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .sft import Cycle, SftSystem, check_alpha_unital, least_rotation, primitive_root

__all__ = [
    "Stratum",
    "EvpPoint",
    "canonical_form",
    "point_from_cycle",
    "point_heteroclinic",
    "is_periodic",
    "gamma_inv",
    "gamma",
    "gamma_pow",
    "parse_point",
    "format_point",
]


@dataclass(frozen=True, order=True)
class Stratum:
    tail: int | None = None

    @property
    def is_paths(self) -> bool:
        return self.tail is None

    def __str__(self) -> str:
        return "paths" if self.tail is None else f"tail:{self.tail}"

    @classmethod
    def parse(cls, text: str) -> Stratum:
        if text == "paths":
            return cls()
        m = re.fullmatch(r"tail:(\d+)", text)
        if not m:
            raise ValueError(f"bad stratum tag {text!r}")
        return cls(int(m.group(1)))


PATHS = Stratum()


def canonical_form(left: str, bridge: str, right: str, offset: int) -> tuple[str, str, str, int]:
    """Unique presentation of the marked word ``left^inf bridge right^inf``.

    The split before the right tail is moved as far left as the right period
    allows, then the bridge is shortened from the front by the left period.
    A periodic word comes out as ``c^inf..c^inf`` with ``c`` in least
    rotation and ``0 <= offset < len(c)``.
    """
    if not left or not right:
        raise ValueError("left and right tails must be nonempty")
    L, B, R = primitive_root(left), bridge, primitive_root(right)
    while B and B[-1] == R[-1]:
        R = B[-1] + R[:-1]
        B = B[:-1]
    if not B:
        while L != R and L[-1] == R[-1]:
            R = L[-1] + R[:-1]
            L = L[-1] + L[:-1]
            offset += 1
        if L == R:
            c = least_rotation(R)
            r = (R + R).index(c)
            return c, "", c, (offset - r) % len(c)
    while B and B[0] == L[0]:
        L = L[1:] + L[0]
        B = B[1:]
        offset -= 1
    return L, B, R, offset


@dataclass(frozen=True)
class EvpPoint:
    """Eventually periodic point of X_inf in canonical form.

    Construction validates admissibility and the domain constraints and
    canonicalizes, so equality is structural.
    """

    system: SftSystem = field(repr=False)
    left: str
    bridge: str
    right: str
    offset: int = 0
    level: int = 0

    def __post_init__(self) -> None:
        sys_ = self.system
        for part in (self.left, self.bridge, self.right):
            bad = [ch for ch in part if ch not in sys_.alphabet]
            if bad:
                raise ValueError(f"unknown symbol {bad[0]!r}")
        window = self.left + self.bridge + self.right
        if not sys_.is_cyclic_admissible(self.left):
            raise ValueError(f"left tail {self.left!r} is not an admissible cycle")
        if not sys_.is_cyclic_admissible(self.right):
            raise ValueError(f"right tail {self.right!r} is not an admissible cycle")
        pos = sys_.first_violation(window)
        if pos is not None:
            rel = pos - len(self.left)
            raise ValueError(
                f"inadmissible junction {window[pos]}{window[pos + 1]} at position {rel}"
            )
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        L, B, R, off = canonical_form(self.left, self.bridge, self.right, self.offset)
        object.__setattr__(self, "left", L)
        object.__setattr__(self, "bridge", B)
        object.__setattr__(self, "right", R)
        object.__setattr__(self, "offset", off)
        dom = sys_.domain
        if any(ch not in dom for ch in L):
            raise ValueError("past of the point leaves Y: left tail has symbols outside the domain")
        for i in range(0, min(off, len(B) + len(R))):
            if self.symbol(i) not in dom:
                raise ValueError(f"past of the point leaves Y at position {i}")
        if self.level > 0 and self.symbol(off) in dom:
            raise ValueError("tail stratum needs a current symbol outside the domain")

    def symbol(self, i: int) -> str:
        """Symbol of the bi-infinite word at position ``i`` (0 = first bridge symbol)."""
        if i < 0:
            return self.left[i % len(self.left)]
        if i < len(self.bridge):
            return self.bridge[i]
        return self.right[(i - len(self.bridge)) % len(self.right)]

    def window(self, start: int, stop: int) -> str:
        return "".join(self.symbol(i) for i in range(start, stop))

    def forward(self, length: int) -> str:
        """First ``length`` symbols of the current coordinate x_p."""
        return self.window(self.offset, self.offset + length)

    @property
    def stratum(self) -> Stratum:
        if self.level == 0 and self.symbol(self.offset) in self.system.domain:
            return PATHS
        return Stratum(self.level)

    @property
    def left_cycle(self) -> Cycle:
        return Cycle.from_word(self.left)

    @property
    def right_cycle(self) -> Cycle:
        return Cycle.from_word(self.right)

    @property
    def word_key(self) -> tuple[str, str, str]:
        """Offset-free part of the canonical form; constant along a gamma-orbit."""
        return (self.left, self.bridge, self.right)

    def __repr__(self) -> str:
        return f"EvpPoint({format_point(self)!r})"

    def __str__(self) -> str:
        return format_point(self)


def _point(sys_: SftSystem, left: str, bridge: str, right: str, offset: int, level: int) -> EvpPoint:
    return EvpPoint(sys_, left, bridge, right, offset, level)


def point_from_cycle(sys_: SftSystem, c: Cycle | str, offset: int = 0) -> EvpPoint:
    """The purely periodic point c^inf, marker at position ``offset`` of ``c``."""
    c = c if isinstance(c, Cycle) else Cycle.from_word(c)
    if not sys_.is_cyclic_admissible(c.word):
        raise ValueError(f"cycle {c.word!r} is not admissible")
    if any(ch not in sys_.domain for ch in c.word):
        # every coordinate x_r, r >= 1, of c^inf would have to start outside Y
        raise ValueError(
            f"periodic point ({c.word})^inf is not in X_inf: its past leaves the domain"
        )
    return _point(sys_, c.word, "", c.word, offset, 0)


def point_heteroclinic(
    sys_: SftSystem,
    left: Cycle | str,
    bridge: str,
    right: Cycle | str,
    offset: int = 0,
    level: int = 0,
) -> EvpPoint:
    """Point ``left^inf bridge right^inf`` with both cycles taken in least rotation."""
    lc = left if isinstance(left, Cycle) else Cycle.from_word(left)
    rc = right if isinstance(right, Cycle) else Cycle.from_word(right)
    return _point(sys_, lc.word, bridge, rc.word, offset, level)


def is_periodic(x: EvpPoint) -> bool:
    return not x.bridge and x.left == x.right


def gamma_inv(x: EvpPoint) -> EvpPoint:
    if x.stratum.is_paths:
        # (x_0, x_1, ...) -> (sigma(x_0), x_0, x_1, ...): marker moves forward
        return _point(x.system, x.left, x.bridge, x.right, x.offset + 1, 0)
    return _point(x.system, x.left, x.bridge, x.right, x.offset, x.level + 1)


def gamma(x: EvpPoint) -> EvpPoint:
    if x.level > 0:
        return _point(x.system, x.left, x.bridge, x.right, x.offset, x.level - 1)
    # level 0 (paths or tail:0): drop x_0, the new first coordinate is x_1 in Y
    return _point(x.system, x.left, x.bridge, x.right, x.offset - 1, 0)


def gamma_pow(x: EvpPoint, z: int) -> EvpPoint:
    """gamma^z(x); negative ``z`` applies gamma_inv."""
    if z == 0:
        return x
    if check_alpha_unital(x.system):
        return _point(x.system, x.left, x.bridge, x.right, x.offset - z, 0)
    step = gamma if z > 0 else gamma_inv
    for _ in range(abs(z)):
        x = step(x)
    return x


_LITERAL = re.compile(
    r"(?P<left>[^.^@\[\]]+)\^inf\.(?P<bridge>[^.^@\[\]]*)\.(?P<right>[^.^@\[\]]+)\^inf"
    r"@(?P<offset>-?\d+)\[(?P<stratum>[^\]]+)\]"
)


def format_point(x: EvpPoint) -> str:
    return f"{x.left}^inf.{x.bridge}.{x.right}^inf@{x.offset}[{x.stratum}]"


def parse_point(sys_: SftSystem, text: str) -> EvpPoint:
    """Parse ``left^inf.bridge.right^inf@offset[stratum]``.

    The tails are read in the rotation written; the stratum tag must agree
    with the one the point actually has.
    """
    m = _LITERAL.fullmatch(re.sub(r"\s+", "", text))
    if not m:
        raise ValueError(f"malformed point literal {text!r}")
    tag = Stratum.parse(m.group("stratum"))
    level = tag.tail or 0
    x = _point(sys_, m.group("left"), m.group("bridge"), m.group("right"), int(m.group("offset")), level)
    if x.stratum != tag:
        raise ValueError(f"stratum tag [{tag}] does not match the point, which lies in [{x.stratum}]")
    return x
