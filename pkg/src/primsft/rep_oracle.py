"""Finite-dimensional models of C(X) x| N over a single periodic orbit.

Over a cycle c0 ... c_{N-1}, the orbit points e_0, ..., e_{N-1} (e_i reads
c forward from position i) form the basis, C(X) acts diagonally and the
isometry is S = lambda * P with P e_{i+1} = e_i.  Then

    S diag(f) S* = diag(f o sigma),

and S is a unitary.  The graph-algebra generators come from the same
matrices: j_A = pi and j_X(x) = S* pi(x).

Exact mode stores entries as :class:`~primsft.cyclotomic.Cyclotomic`
inside numpy object arrays; float mode uses complex128 and a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .inverse_limit import point_from_cycle
from .prim_space import Angle, NonUnitalError, approx_equiv
from .quasi_orbit import quasi_orbit, same_quasi_orbit
from .sft import Cycle, Kind, SftSystem, check_alpha_unital, enumerate_cycles

__all__ = [
    "RepModel",
    "GraphGenerators",
    "Verdict",
    "WilliamsVerdict",
    "build_cycle_rep",
    "verify_crossed_relations",
    "verify_graph_relations",
    "kernels_equal",
    "monomial_pairs",
    "williams_check",
    "verification_summary",
    "default_test_functions",
]

FLOAT_TOL = 1e-12
SCAN_MAX_DIM = 4


@dataclass(eq=False)
class RepModel:
    cycle: Cycle
    angle: Angle
    shift: np.ndarray
    mode: str = "exact"
    order: int = 1

    @property
    def dim(self) -> int:
        return len(self.cycle.word)

    def scalar(self, v):
        if self.mode == "exact":
            if isinstance(v, Cyclotomic):
                return v
            if isinstance(v, complex):
                raise TypeError("exact mode takes rational function values")
            return Cyclotomic.rational(Fraction(v), self.order)
        return complex(v)

    def eye(self) -> np.ndarray:
        return self.pi([1] * self.dim)

    def pi(self, f: Sequence) -> np.ndarray:
        """Diagonal image of a function on the orbit (values at e_0, ..., e_{N-1})."""
        n = self.dim
        if len(f) != n:
            raise ValueError(f"function needs {n} values, got {len(f)}")
        if self.mode == "exact":
            out = np.empty((n, n), dtype=object)
            zero = self.scalar(0)
            for i in range(n):
                for j in range(n):
                    out[i, j] = self.scalar(f[i]) if i == j else zero
            return out
        return np.diag(np.array([complex(v) for v in f]))

    def compose_sigma(self, f: Sequence) -> list:
        """f o sigma on the orbit: sigma(e_i) = e_{i+1}."""
        n = len(f)
        return [f[(i + 1) % n] for i in range(n)]


def _adj(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def _equal(a: np.ndarray, b: np.ndarray, mode: str, tol: float) -> tuple[bool, float]:
    diff = a - b
    if mode == "exact":
        ok = all(x == 0 for x in diff.flat)
        res = 0.0 if ok else max(abs(complex(x)) for x in diff.flat)
        return ok, res
    res = float(np.max(np.abs(diff))) if diff.size else 0.0
    return res <= tol, res


def build_cycle_rep(
    c: Cycle | str, lam: Angle, mode: str = "exact", order: int | None = None
) -> RepModel:
    c = c if isinstance(c, Cycle) else Cycle(c)
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if not lam.is_rational:
        raise ValueError("representations need a rational angle")
    n = len(c.word)
    den = lam.turns.denominator
    m = math.lcm(den, order or 1)
    if mode == "exact":
        lam_val = Cyclotomic.root(lam.turns.numerator * (m // den), m)
        zero = Cyclotomic.rational(0, m)
        shift = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                shift[i, j] = lam_val if j == (i + 1) % n else zero
    else:
        lam_val = complex(np.exp(2j * np.pi * float(lam.turns)))
        shift = np.zeros((n, n), dtype=complex)
        for i in range(n):
            shift[i, (i + 1) % n] = lam_val
    return RepModel(c, lam, shift, mode, m)


@dataclass
class Verdict:
    passed: bool
    residuals: dict[str, float] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def record(self, name: str, ok: bool, res: float) -> None:
        self.residuals[name] = max(self.residuals.get(name, 0.0), res)
        if not ok:
            self.passed = False
            if name not in self.failures:
                self.failures.append(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "residuals": dict(sorted(self.residuals.items())),
            "failures": list(self.failures),
        }


def _tol(m: RepModel, tol: float | None) -> float:
    if tol is None:
        return FLOAT_TOL if m.mode == "float" else 0.0
    return tol


def verify_crossed_relations(m: RepModel, test_fns: Sequence[Sequence], tol: float | None = None) -> Verdict:
    """Isometry, unitarity and covariance S pi(f) S* = pi(f o sigma)."""
    tol = _tol(m, tol)
    S, I = m.shift, m.eye()
    v = Verdict(True)
    v.record("isometry", *_equal(_adj(S) @ S, I, m.mode, tol))
    v.record("unitary", *_equal(S @ _adj(S), I, m.mode, tol))
    for f in test_fns:
        v.record("covariance", *_equal(S @ m.pi(f) @ _adj(S), m.pi(m.compose_sigma(f)), m.mode, tol))
    return v


@dataclass(eq=False)
class GraphGenerators:
    model: RepModel

    def jX(self, x: Sequence) -> np.ndarray:
        return _adj(self.model.shift) @ self.model.pi(x)

    def jA(self, f: Sequence) -> np.ndarray:
        return self.model.pi(f)


def _conj_values(x: Sequence) -> list:
    return [v.conjugate() for v in x]


def verify_graph_relations(g: GraphGenerators, test_fns: Sequence[Sequence], tol: float | None = None) -> Verdict:
    """The three generator relations of O(E) plus the dictionary t = j_X(1)*.

    The square-root relation is checked in the form
    j_X(g o sigma) j_X(g o sigma)* = j_A(g**2) for g = |f| >= 0, which keeps
    square roots exact.
    """
    m = g.model
    tol = _tol(m, tol)
    mode = m.mode
    n = m.dim
    one = [1] * n
    sig = m.compose_sigma
    v = Verdict(True)
    for f in test_fns:
        for x in test_fns:
            fx = [a * b for a, b in zip(sig(f), x)]
            v.record("left_module", *_equal(g.jX(fx), g.jA(f) @ g.jX(x), mode, tol))
            inner = [a * b for a, b in zip(_conj_values(f), x)]
            v.record("inner_product", *_equal(_adj(g.jX(f)) @ g.jX(x), g.jA(inner), mode, tol))
        root = [abs(a) if mode == "float" else abs(Fraction(a)) for a in f]
        sq = [a * a for a in root]
        jr = g.jX(sig(root))
        v.record("range_projection", *_equal(jr @ _adj(jr), g.jA(sq), mode, tol))
    t = _adj(g.jX(one))
    I = m.eye()
    v.record("dictionary", *_equal(_adj(t) @ t, I, mode, tol))
    v.record("dictionary", *_equal(t, m.shift, mode, tol))
    for f in test_fns:
        v.record("dictionary", *_equal(t @ g.jA(f) @ _adj(t), g.jA(sig(f)), mode, tol))
        v.record("dictionary", *_equal(g.jX(one) @ g.jA(f), g.jX(f), mode, tol))
    return v


def default_test_functions(n: int) -> list[list[int]]:
    """Indicator functions of the orbit points, the constant 1 and two fixed integer profiles."""
    fns = [[int(i == j) for j in range(n)] for i in range(n)]
    fns.append([1] * n)
    fns.append([j + 1 for j in range(n)])
    fns.append([(-1) ** j * (2 * j + 3) for j in range(n)])
    return fns


def _generators(m: RepModel) -> list[np.ndarray]:
    n = m.dim
    gens = [m.shift, _adj(m.shift)]
    gens += [m.pi([int(i == j) for j in range(n)]) for i in range(n)]
    return gens


def _key(a: np.ndarray, b: np.ndarray, mode: str, order: int) -> tuple:
    if mode == "exact":
        return tuple(x.lift(order).coeffs for x in a.flat) + tuple(x.lift(order).coeffs for x in b.flat)
    return tuple(np.round(np.concatenate([a.ravel(), b.ravel()]), 9).tolist())


def monomial_pairs(m1: RepModel, m2: RepModel, word_len: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Distinct pairs (pi_1(w), pi_2(w)) over *-monomials w of length <= word_len.

    The empty word contributes the identity pair.
    """
    order = math.lcm(m1.order, m2.order)
    g1, g2 = _generators(m1), _generators(m2)
    start = (m1.eye(), m2.eye())
    seen = {_key(*start, m1.mode, order)}
    pairs = [start]
    frontier = [start]
    for _ in range(word_len):
        nxt = []
        for a, b in frontier:
            for x, y in zip(g1, g2):
                p = (a @ x, b @ y)
                k = _key(*p, m1.mode, order)
                if k not in seen:
                    seen.add(k)
                    nxt.append(p)
        if not nxt:
            break
        pairs.extend(nxt)
        frontier = nxt
    return pairs


def _exact_rank(rows: list[list[Cyclotomic]], order: int) -> int:
    pivots: dict[int, dict[int, Cyclotomic]] = {}
    for raw in rows:
        row = {i: x.lift(order) for i, x in enumerate(raw) if not x.is_zero()}
        while row:
            col = min(row)
            if col not in pivots:
                inv = row[col].inverse()
                pivots[col] = {i: x * inv for i, x in row.items()}
                break
            c = row[col]
            for i, x in pivots[col].items():
                val = row.get(i, 0) - c * x if i in row else -(c * x)
                if val.is_zero():
                    row.pop(i, None)
                else:
                    row[i] = val
    return len(pivots)


def _rank(rows: list[list], mode: str, order: int, tol: float) -> int:
    if not rows:
        return 0
    if mode == "exact":
        return _exact_rank(rows, order)
    return int(np.linalg.matrix_rank(np.array(rows, dtype=complex), tol=max(tol, 1e-9)))


Mono = tuple  # per row: (column, exponent of zeta_order) or None


@lru_cache(maxsize=None)
def _roots_table(order: int) -> tuple[Cyclotomic, ...]:
    return tuple(Cyclotomic.root(e, order) for e in range(order))


def _as_monomial(a: np.ndarray, order: int) -> Mono | None:
    """Row-wise (column, exponent) form when every entry is 0 or a power of zeta_order."""
    roots = _roots_table(order)
    rows = []
    for row in a:
        hit = None
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            if hit is not None:
                return None
            x = x.lift(order)
            e = next((k for k, r in enumerate(roots) if r.coeffs == x.coeffs), None)
            if e is None:
                return None
            hit = (j, e)
        rows.append(hit)
    return tuple(rows)


def _mono_mul(a: Mono, b: Mono, order: int) -> Mono:
    out = []
    for hit in a:
        if hit is None or b[hit[0]] is None:
            out.append(None)
        else:
            j, e = b[hit[0]]
            out.append((j, (hit[1] + e) % order))
    return tuple(out)


def _mono_vector(a: Mono, n: int, order: int) -> list[Cyclotomic]:
    roots = _roots_table(order)
    zero = Cyclotomic.rational(0, order)
    vec = [zero] * (n * n)
    for i, hit in enumerate(a):
        if hit is not None:
            vec[i * n + hit[0]] = roots[hit[1]]
    return vec


def _monomial_scan_pairs(m1: RepModel, m2: RepModel, word_len: int, order: int):
    g1 = [_as_monomial(g, order) for g in _generators(m1)]
    g2 = [_as_monomial(g, order) for g in _generators(m2)]
    if any(g is None for g in g1 + g2):
        return None
    n = m1.dim
    ident = tuple((i, 0) for i in range(n))
    start = (ident, ident)
    seen = {start}
    frontier = [start]
    for _ in range(word_len):
        nxt = []
        for a, b in frontier:
            for x, y in zip(g1, g2):
                p = (_mono_mul(a, x, order), _mono_mul(b, y, order))
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        if not nxt:
            break
        frontier = nxt
    return sorted(seen, key=repr)


def _scan(m1: RepModel, m2: RepModel, word_len: int, tol: float) -> bool:
    order = math.lcm(m1.order, m2.order)
    n = m1.dim
    mono = _monomial_scan_pairs(m1, m2, word_len, order) if m1.mode == "exact" else None
    if mono is not None:
        v1 = [_mono_vector(a, n, order) for a, _ in mono]
        v2 = [_mono_vector(b, n, order) for _, b in mono]
    else:
        pairs = monomial_pairs(m1, m2, word_len)
        v1 = [list(a.flat) for a, _ in pairs]
        v2 = [list(b.flat) for _, b in pairs]
    v12 = [x + y for x, y in zip(v1, v2)]
    r1 = _rank(v1, m1.mode, order, tol)
    r2 = _rank(v2, m1.mode, order, tol)
    r12 = _rank(v12, m1.mode, order, tol)
    # equal dependency spaces among the same monomials <=> equal kernels
    return r1 == r2 == r12


def kernels_equal(
    m1: RepModel,
    m2: RepModel,
    word_len: int | None = None,
    method: str = "auto",
    tol: float | None = None,
) -> bool:
    """Do the two models have the same kernel on C(X) x| N?

    ``method="scan"`` compares the linear relations among all *-monomials
    in S, S* and the point projections up to ``word_len`` (default 2N):
    the kernels agree iff both models satisfy exactly the same relations.
    ``method="closed"`` compares lambda**N with eta**N.  ``"auto"`` scans
    up to dimension 4 and uses the closed form beyond.
    """
    if m1.cycle != m2.cycle:
        raise ValueError(f"mismatched cycles {m1.cycle.word!r} and {m2.cycle.word!r}")
    if m1.mode != m2.mode:
        raise ValueError("models use different arithmetic modes")
    n = m1.dim
    if method == "auto":
        method = "scan" if n <= SCAN_MAX_DIM else "closed"
    if method == "closed":
        return m1.angle.pow(n) == m2.angle.pow(n)
    if method != "scan":
        raise ValueError(f"unknown method {method!r}")
    return _scan(m1, m2, word_len if word_len is not None else 2 * n, _tol(m1, tol))


@lru_cache(maxsize=4096)
def _kernels_equal_cached(n: int, lam: Angle, eta: Angle, mode: str, method: str) -> bool:
    c = Cycle("0" * (n - 1) + "1") if n > 1 else Cycle("0")
    return kernels_equal(build_cycle_rep(c, lam, mode), build_cycle_rep(c, eta, mode), method=method)


@dataclass
class WilliamsVerdict:
    match: bool
    kernel_classes: int
    orbit_classes: int
    items: int
    mismatches: list[tuple[str, str]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "match" if self.match else "mismatch"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "items": self.items,
            "kernel_classes": self.kernel_classes,
            "orbit_classes": self.orbit_classes,
            "mismatches": [list(p) for p in self.mismatches],
        }


def _count_classes(n: int, related) -> int:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if related(i, j):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


def _system_cycles(sys_: SftSystem, max_cycle_len: int | None) -> list[Cycle]:
    if sys_.kind is Kind.PERMUTATION:
        return enumerate_cycles(sys_, sys_.size)
    if max_cycle_len is None:
        raise ValueError("max_cycle_len is required for shift systems")
    return enumerate_cycles(sys_, max_cycle_len)


def williams_check(
    sys_: SftSystem,
    angle_samples: Sequence[Angle],
    mode: str = "exact",
    max_cycle_len: int | None = None,
    method: str = "auto",
) -> WilliamsVerdict:
    """Compare two partitions of the sample pairs (cycle, lambda).

    One comes from kernels of the cycle models; points over distinct
    orbits are always separated, by the indicator function of either orbit.
    The other comes from quasi-orbit equality together with lambda ~ eta.
    """
    if not check_alpha_unital(sys_):
        raise NonUnitalError("the Williams check needs alpha unital (domain = whole alphabet)")
    cycles = _system_cycles(sys_, max_cycle_len)
    samples = sorted(set(angle_samples))
    items = [(c, lam) for c in cycles for lam in samples]
    orbits = {c: quasi_orbit(point_from_cycle(sys_, c)) for c in cycles}
    points = {c: point_from_cycle(sys_, c) for c in cycles}

    def by_kernel(i: int, j: int) -> bool:
        (c1, l1), (c2, l2) = items[i], items[j]
        if c1 != c2:
            return False
        return _kernels_equal_cached(len(c1.word), l1, l2, mode, method)

    def by_orbit(i: int, j: int) -> bool:
        (c1, l1), (c2, l2) = items[i], items[j]
        return same_quasi_orbit(points[c1], points[c2]) and approx_equiv(orbits[c1], l1, l2)

    mismatches = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if by_kernel(i, j) != by_orbit(i, j):
                a, b = items[i], items[j]
                mismatches.append((f"{a[0]}@{a[1]}", f"{b[0]}@{b[1]}"))
    return WilliamsVerdict(
        match=not mismatches,
        kernel_classes=_count_classes(len(items), by_kernel),
        orbit_classes=_count_classes(len(items), by_orbit),
        items=len(items),
        mismatches=mismatches,
    )


def verification_summary(
    sys_: SftSystem,
    angle_samples: Sequence[Angle],
    max_cycle_len: int | None = None,
    mode: str = "exact",
    tol: float | None = None,
) -> dict:
    """Relation checks on every cycle model plus the Williams partition check."""
    cycles = _system_cycles(sys_, max_cycle_len)
    rational = sorted({a for a in angle_samples if a.is_rational})
    failures: list[str] = []
    worst = 0.0
    models = 0
    for c in cycles:
        fns = default_test_functions(len(c.word))
        for lam in rational:
            m = build_cycle_rep(c, lam, mode)
            models += 1
            for v in (verify_crossed_relations(m, fns, tol), verify_graph_relations(GraphGenerators(m), fns, tol)):
                worst = max(worst, v.max_residual)
                failures.extend(f"{c}@{lam}:{name}" for name in v.failures)
    williams = williams_check(sys_, rational, mode, max_cycle_len)
    return {
        "relations": {
            "models": models,
            "passed": not failures,
            "max_residual": worst,
            "failures": failures,
        },
        "williams": williams.to_dict(),
        "passed": not failures and williams.match,
    }
