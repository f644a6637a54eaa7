"""Orbit closures, quasi-orbits, isotropy and the specialization preorder.

For an eventually periodic point x = ...LLL B RRR... the gamma-orbit is
either finite (x periodic) or it is the set of all markings of the same
word.  Its closure adds the periodic orbits that the orbit accumulates on:
the left tail always (gamma drags the marker into the past), and the right
tail when the forward orbit never leaves the paths stratum.  In the unital
case that is the familiar "orbit plus both limit necklaces".

Closures are compared structurally.  :func:`closure_contains` double-checks
every positive answer with a word-occurrence test on the bi-infinite words.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .inverse_limit import EvpPoint, is_periodic, point_from_cycle, point_heteroclinic
from .sft import Cycle, SftSystem, check_alpha_unital, enumerate_cycles

__all__ = [
    "OrbitClosure",
    "QuasiOrbit",
    "QuasiOrbitSpace",
    "Tristate",
    "orbit_closure",
    "same_quasi_orbit",
    "isotropy",
    "quasi_orbit",
    "closure_contains",
    "occurs_in",
    "central_words",
    "quasi_orbit_space",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 50_000


class Tristate(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class OrbitClosure:
    """Closure of a gamma-orbit.

    ``transient`` holds the whole orbit when it is finite and a single
    generator (marker at 0) otherwise.  Equality ignores ``transient`` and
    compares the word key, finiteness and the limit necklaces.
    """

    finite: bool
    key: tuple[str, str, str]
    limit_cycles: frozenset[Cycle]
    transient: tuple[EvpPoint, ...] = field(compare=False)

    @property
    def fingerprint(self) -> str:
        left, bridge, right = self.key
        if self.finite:
            return f"({right})^inf"
        return f"{left}^inf.{bridge}.{right}^inf"


def _forward_stays_in_domain(x: EvpPoint) -> bool:
    dom = x.system.domain
    return all(ch in dom for ch in x.bridge + x.right)


@lru_cache(maxsize=1 << 16)
def orbit_closure(x: EvpPoint) -> OrbitClosure:
    sys_ = x.system
    if is_periodic(x):
        c = x.right
        orbit = tuple(point_from_cycle(sys_, c, k) for k in range(len(c)))
        return OrbitClosure(True, x.word_key, frozenset({Cycle(c)}), orbit)
    limits = {x.left_cycle}
    if _forward_stays_in_domain(x):
        limits.add(x.right_cycle)
    gen = EvpPoint(sys_, x.left, x.bridge, x.right, 0, 0)
    return OrbitClosure(False, x.word_key, frozenset(limits), (gen,))


def same_quasi_orbit(x: EvpPoint, y: EvpPoint) -> bool:
    return orbit_closure(x) == orbit_closure(y)


def isotropy(x: EvpPoint) -> int:
    """Least period N > 0 of a periodic point (isotropy group NZ); 0 if the isotropy is trivial."""
    return len(x.right) if is_periodic(x) else 0


@dataclass(frozen=True, eq=False)
class QuasiOrbit:
    representative: EvpPoint
    closure: OrbitClosure
    isotropy_period: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuasiOrbit):
            return NotImplemented
        return self.closure == other.closure

    def __hash__(self) -> int:
        return hash(self.closure)

    @property
    def periodic(self) -> bool:
        return self.isotropy_period > 0

    @property
    def fingerprint(self) -> str:
        return self.closure.fingerprint

    def sort_key(self) -> tuple:
        left, bridge, right = self.closure.key
        if self.periodic:
            return (0, len(right), right)
        return (1, len(left) + len(bridge) + len(right), left, bridge, right)


def quasi_orbit(x: EvpPoint) -> QuasiOrbit:
    closure = orbit_closure(x)
    return QuasiOrbit(closure.transient[0], closure, isotropy(x))


def occurs_in(word: str, x: EvpPoint) -> bool:
    """Does ``word`` occur anywhere in the bi-infinite word of ``x``?"""
    n = len(word)
    text = x.window(-n - len(x.left), len(x.bridge) + len(x.right) + n)
    return word in text


def central_words(y: EvpPoint, depth: int) -> list[str]:
    """Windows of length 1..depth around the marker of ``y``."""
    c = y.offset
    return [y.window(c - (n - 1) // 2, c - (n - 1) // 2 + n) for n in range(1, depth + 1)]


def _structurally_contains(x: EvpPoint, y: EvpPoint) -> bool:
    cx = orbit_closure(x)
    if y.word_key == cx.key:
        return True
    return is_periodic(y) and Cycle(y.right) in cx.limit_cycles


def closure_contains(x: EvpPoint, y: EvpPoint, depth: int, structural: bool = True) -> Tristate:
    """Is ``y`` in the closure of the gamma-orbit of ``x``?

    With ``structural=False`` only the word test runs: it can refute
    (``NO``) but never confirm (``UNKNOWN``).  The structural rule is exact
    on eventually periodic points, so the default never returns ``UNKNOWN``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if structural:
        if not _structurally_contains(x, y):
            return Tristate.NO
        missing = [w for w in central_words(y, depth) if not occurs_in(w, x)]
        if missing:
            raise RuntimeError(
                f"closure rule says {y} is in the closure of {x} but word {missing[0]!r} never occurs"
            )
        return Tristate.YES
    if all(occurs_in(w, x) for w in central_words(y, depth)):
        return Tristate.UNKNOWN
    return Tristate.NO


@dataclass
class QuasiOrbitSpace:
    """Enumerated quasi-orbits with the specialization preorder.

    ``preorder`` lists index pairs (i, j) with closure(orbits[i]) contained
    in closure(orbits[j]), reflexive pairs included.
    """

    system: SftSystem
    max_cycle_len: int
    max_bridge_len: int
    orbits: list[QuasiOrbit]
    preorder: list[tuple[int, int]]
    truncated: bool = False
    budget: int = DEFAULT_BUDGET

    def below(self, j: int) -> list[int]:
        return [a for a, b in self.preorder if b == j]


def _bridges(sys_: SftSystem, after: str, before: str, max_len: int):
    if sys_.allowed(after, before):
        yield ""
    for n in range(1, max_len + 1):
        for letters in product(sys_.alphabet, repeat=n):
            w = "".join(letters)
            if sys_.is_admissible(after + w + before):
                yield w


def quasi_orbit_space(
    sys_: SftSystem,
    max_cycle_len: int,
    max_bridge_len: int,
    budget: int = DEFAULT_BUDGET,
) -> QuasiOrbitSpace:
    """Quasi-orbits of all periodic points with cycles up to ``max_cycle_len``
    and all points ``left^inf bridge right^inf`` with bridges up to
    ``max_bridge_len``.

    Candidates beyond ``budget`` are not examined; the result is then
    flagged ``truncated``.
    """
    if max_cycle_len < 1:
        raise ValueError("max_cycle_len must be positive")
    if max_bridge_len < 0:
        raise ValueError("max_bridge_len must be nonnegative")
    if not check_alpha_unital(sys_):
        raise ValueError("quasi-orbit space is computed for the unital case (domain = alphabet)")
    cycles = enumerate_cycles(sys_, max_cycle_len)
    found: dict[QuasiOrbit, QuasiOrbit] = {}
    examined = 0
    truncated = False

    def visit(x: EvpPoint) -> bool:
        nonlocal examined, truncated
        if examined >= budget:
            truncated = True
            return False
        examined += 1
        q = quasi_orbit(x)
        found.setdefault(q, q)
        return True

    for c in cycles:
        if not visit(point_from_cycle(sys_, c)):
            break
    if not truncated:
        for lc, rc in product(cycles, repeat=2):
            for b in _bridges(sys_, lc.word[-1], rc.word[0], max_bridge_len):
                if not visit(point_heteroclinic(sys_, lc, b, rc)):
                    break
            if truncated:
                break
    if truncated:
        log.warning("quasi-orbit enumeration truncated after %d candidates", budget)

    orbits = sorted(found.values(), key=QuasiOrbit.sort_key)
    depth = 2 * (max_cycle_len + max_bridge_len) + 1
    preorder = [
        (i, j)
        for j, qj in enumerate(orbits)
        for i, qi in enumerate(orbits)
        if closure_contains(qj.representative, qi.representative, depth) is Tristate.YES
    ]
    preorder.sort()
    return QuasiOrbitSpace(sys_, max_cycle_len, max_bridge_len, orbits, preorder, truncated, budget)
