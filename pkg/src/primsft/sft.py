"""Symbolic presentation of the base system (X, Y, sigma).

X is the one-sided shift of finite type defined by a 0/1 transition matrix
``A`` over a finite alphabet, Y is the union of the length-1 cylinders over a
symbol subset ``S`` and sigma : Y -> X is the left shift.  A finite
permutative system is the special case where ``A`` is a permutation matrix:
every point of X_A is then determined by its first symbol, so X is the
alphabet itself and sigma is the permutation.

Symbols are single characters and words are plain ``str``.  The alphabet is
listed in increasing character order, which is the order used for least
rotations and for every enumeration.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Any, Iterator

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

__all__ = [
    "Kind",
    "SftSystem",
    "Cycle",
    "SystemConfigError",
    "parse_system",
    "system_from_dict",
    "full_shift",
    "permutation_system",
    "check_alpha_injective",
    "check_alpha_unital",
    "enumerate_cycles",
    "count_periodic_points",
    "least_rotation",
    "primitive_root",
]

_RESERVED = set(".^@[]:,() \t\n")


class SystemConfigError(ValueError):
    """Raised when a system description fails validation."""


class Kind(str, enum.Enum):
    SFT = "sft"
    PERMUTATION = "permutation"


@dataclass(frozen=True)
class SftSystem:
    kind: Kind
    alphabet: tuple[str, ...]
    transition: tuple[tuple[int, ...], ...]
    domain: frozenset[str]

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
        except ValueError:
            raise SystemConfigError(f"unknown kind {self.kind!r}") from None
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transition", tuple(tuple(r) for r in self.transition))
        object.__setattr__(self, "domain", frozenset(self.domain))
        _validate(self)
        object.__setattr__(self, "_idx", {a: i for i, a in enumerate(self.alphabet)})
        pairs = {
            (a, b)
            for i, a in enumerate(self.alphabet)
            for j, b in enumerate(self.alphabet)
            if self.transition[i][j]
        }
        object.__setattr__(self, "_pairs", frozenset(pairs))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def domain_symbols(self) -> tuple[str, ...]:
        return tuple(a for a in self.alphabet if a in self.domain)

    def index(self, symbol: str) -> int:
        return self._idx[symbol]

    def allowed(self, a: str, b: str) -> bool:
        """True iff symbol ``b`` may follow symbol ``a``."""
        return (a, b) in self._pairs

    def successors(self, a: str) -> list[str]:
        row = self.transition[self.index(a)]
        return [b for b, bit in zip(self.alphabet, row) if bit]

    def is_admissible(self, word: str) -> bool:
        if any(ch not in self._idx for ch in word):
            return False
        return all(self.allowed(a, b) for a, b in zip(word, word[1:]))

    def first_violation(self, word: str) -> int | None:
        """Index ``i`` of the first forbidden pair ``word[i], word[i+1]``."""
        for i, ch in enumerate(word):
            if ch not in self.alphabet:
                raise ValueError(f"unknown symbol {ch!r} at position {i}")
        for i, (a, b) in enumerate(zip(word, word[1:])):
            if not self.allowed(a, b):
                return i
        return None

    def is_cyclic_admissible(self, word: str) -> bool:
        return bool(word) and self.is_admissible(word + word[0])

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "alphabet": list(self.alphabet),
            "transition": [list(row) for row in self.transition],
            "domain": list(self.domain_symbols),
        }


def _validate(sys_: SftSystem) -> None:
    alphabet = sys_.alphabet
    if not alphabet:
        raise SystemConfigError("alphabet must be nonempty")
    for a in alphabet:
        if not isinstance(a, str) or len(a) != 1 or a in _RESERVED:
            raise SystemConfigError(f"symbol {a!r} must be a single non-reserved character")
    if len(set(alphabet)) != len(alphabet):
        raise SystemConfigError("alphabet has repeated symbols")
    if list(alphabet) != sorted(alphabet):
        raise SystemConfigError("alphabet must be listed in increasing order")
    k = len(alphabet)
    matrix = sys_.transition
    if len(matrix) != k or any(len(row) != k for row in matrix):
        raise SystemConfigError(f"transition matrix must be {k}x{k} (non-square or wrong size)")
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            if v not in (0, 1) or isinstance(v, bool):
                raise SystemConfigError(f"transition[{i}][{j}] = {v!r} is not 0 or 1")
    for i, a in enumerate(alphabet):
        if not any(matrix[i]):
            raise SystemConfigError(f"symbol {a} has no successor")
        if not any(row[i] for row in matrix):
            raise SystemConfigError(f"symbol {a} has no predecessor")
    unknown = set(sys_.domain) - set(alphabet)
    if unknown:
        raise SystemConfigError(f"domain symbols {sorted(unknown)} not in alphabet")
    if sys_.kind is Kind.PERMUTATION:
        if any(sum(row) != 1 for row in matrix) or any(
            sum(row[j] for row in matrix) != 1 for j in range(k)
        ):
            raise SystemConfigError("permutation system needs a permutation matrix")
        if set(sys_.domain) != set(alphabet):
            raise SystemConfigError("permutation system: domain must be the whole alphabet")


def system_from_dict(data: dict[str, Any]) -> SftSystem:
    try:
        kind = Kind(data["kind"])
    except KeyError:
        raise SystemConfigError("missing key 'kind'") from None
    except ValueError:
        raise SystemConfigError(f"unknown kind {data['kind']!r}") from None
    for key in ("alphabet", "transition"):
        if key not in data:
            raise SystemConfigError(f"missing key {key!r}")
    alphabet = tuple(str(a) for a in data["alphabet"])
    try:
        transition = tuple(tuple(row) for row in data["transition"])
    except TypeError:
        raise SystemConfigError("transition must be a list of rows") from None
    domain = data.get("domain")
    if domain is None:
        domain = alphabet
    return SftSystem(kind, alphabet, transition, frozenset(str(a) for a in domain))


def parse_system(text: str) -> SftSystem:
    """Parse a TOML system description.

    Expected keys: ``kind`` ("sft" or "permutation"), ``alphabet``,
    ``transition`` and optionally ``domain`` (defaults to the alphabet).
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SystemConfigError(f"malformed config: {exc}") from None
    return system_from_dict(data)


def full_shift(k: int, domain: str | None = None) -> SftSystem:
    alphabet = tuple(str(i) for i in range(k))
    matrix = tuple(tuple(1 for _ in range(k)) for _ in range(k))
    dom = frozenset(alphabet if domain is None else domain)
    return SftSystem(Kind.SFT, alphabet, matrix, dom)


def permutation_system(perm: list[int] | tuple[int, ...]) -> SftSystem:
    """Finite permutative system on points ``0..n-1`` with sigma(i) = perm[i]."""
    n = len(perm)
    if n > 10:
        raise SystemConfigError("single-character symbols limit permutations to 10 points")
    alphabet = tuple(str(i) for i in range(n))
    matrix = tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))
    return SftSystem(Kind.PERMUTATION, alphabet, matrix, frozenset(alphabet))


def check_alpha_injective(sys_: SftSystem) -> bool:
    """f -> f o sigma is injective iff sigma : Y -> X is onto.

    For a shift this means every symbol can follow some domain symbol.
    """
    return all(any(sys_.allowed(s, b) for s in sys_.domain) for b in sys_.alphabet)


def check_alpha_unital(sys_: SftSystem) -> bool:
    return set(sys_.domain) == set(sys_.alphabet)


def least_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word))) if word else word


def primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True, order=True)
class Cycle:
    """Primitive cyclic word in least-rotation form.

    The word c0 c1 ... c_{N-1} stands for the periodic orbit on which sigma
    sends the point (c0 c1 ... c_{N-1})^inf to (c1 ... c_{N-1} c0)^inf.
    """

    word: str

    def __post_init__(self) -> None:
        if not self.word:
            raise ValueError("cycle word must be nonempty")
        if primitive_root(self.word) != self.word:
            raise ValueError(f"cycle word {self.word!r} is a proper power")
        if least_rotation(self.word) != self.word:
            raise ValueError(f"cycle word {self.word!r} is not in least rotation")

    @classmethod
    def from_word(cls, word: str) -> Cycle:
        """Canonical cycle of the necklace of ``word`` (reduced to its primitive root)."""
        return cls(least_rotation(primitive_root(word)))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word

    def _sort_key(self) -> tuple[int, str]:
        return (len(self.word), self.word)


def _is_lyndon(word: str) -> bool:
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def _closed_walks(sys_: SftSystem, length: int, start: str) -> Iterator[str]:
    # walks over symbols >= start that return to start; Lyndon words begin with their minimum
    def extend(word: str) -> Iterator[str]:
        if len(word) == length:
            if sys_.allowed(word[-1], start):
                yield word
            return
        for b in sys_.successors(word[-1]):
            if b >= start:
                yield from extend(word + b)

    yield from extend(start)


def enumerate_cycles(sys_: SftSystem, max_len: int) -> list[Cycle]:
    """All admissible primitive cycles of length <= max_len, by length then lexicographically."""
    if max_len < 1:
        raise ValueError("max_len must be positive")
    out: list[Cycle] = []
    for n in range(1, max_len + 1):
        words = sorted(
            w for s in sys_.alphabet for w in _closed_walks(sys_, n, s) if _is_lyndon(w)
        )
        out.extend(Cycle(w) for w in words)
    return out


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def count_periodic_points(sys_: SftSystem, n: int) -> int:
    """trace(A^n): number of points of period dividing ``n`` (Python ints, no overflow)."""
    if n < 1:
        raise ValueError("n must be positive")
    base = [list(row) for row in sys_.transition]
    k = sys_.size
    result = [[int(i == j) for j in range(k)] for i in range(k)]
    e = n
    while e:
        if e & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        e >>= 1
    return sum(result[i][i] for i in range(k))
