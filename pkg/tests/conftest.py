from __future__ import annotations

from itertools import product

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from primsft.inverse_limit import EvpPoint
from primsft.sft import SftSystem, enumerate_cycles, full_shift, system_from_dict


def golden_mean(domain: str = "01") -> SftSystem:
    return system_from_dict(
        {"kind": "sft", "alphabet": ["0", "1"], "transition": [[1, 1], [1, 0]], "domain": list(domain)}
    )


SYSTEMS = {
    "full2": full_shift(2),
    "full2_s0": full_shift(2, domain="0"),
    "golden": golden_mean(),
    "golden_s0": golden_mean("0"),
}


def admissible_bridges(sys_: SftSystem, after: str, before: str, max_len: int) -> list[str]:
    out = [""] if sys_.allowed(after, before) else []
    for n in range(1, max_len + 1):
        for letters in product(sys_.alphabet, repeat=n):
            w = "".join(letters)
            if sys_.is_admissible(after + w + before):
                out.append(w)
    return out


def point_corpus(
    sys_: SftSystem,
    max_cycle_len: int = 3,
    max_bridge_len: int = 2,
    offsets: range = range(-3, 6),
    max_level: int = 3,
) -> list[EvpPoint]:
    """Every valid point with the given shape bounds, deduplicated."""
    cycles = [c.word for c in enumerate_cycles(sys_, max_cycle_len)]
    seen: dict[EvpPoint, None] = {}
    for left, right in product(cycles, repeat=2):
        for bridge in admissible_bridges(sys_, left[-1], right[0], max_bridge_len):
            for off in offsets:
                for level in range(max_level + 1):
                    try:
                        x = EvpPoint(sys_, left, bridge, right, off, level)
                    except ValueError:
                        continue
                    seen.setdefault(x, None)
    return list(seen)


@st.composite
def evp_points(draw, sys_: SftSystem, max_cycle_len: int = 3, max_bridge_len: int = 3):
    cycles = [c.word for c in enumerate_cycles(sys_, max_cycle_len)]
    lefts = [c for c in cycles if set(c) <= sys_.domain]
    left = draw(st.sampled_from(lefts))
    right = draw(st.sampled_from(cycles))
    bridges = admissible_bridges(sys_, left[-1], right[0], max_bridge_len)
    assume(bridges)
    bridge = draw(st.sampled_from(bridges))
    offset = draw(st.integers(-6, 8))
    try:
        x = EvpPoint(sys_, left, bridge, right, offset)
    except ValueError:
        # the past would leave the domain; markers at or before the bridge are always fine
        x = EvpPoint(sys_, left, bridge, right, min(offset, 0))
    if not x.stratum.is_paths:
        x = EvpPoint(sys_, x.left, x.bridge, x.right, x.offset, draw(st.integers(0, 4)))
    return x


@pytest.fixture
def full2() -> SftSystem:
    return SYSTEMS["full2"]


@pytest.fixture
def full2_s0() -> SftSystem:
    return SYSTEMS["full2_s0"]


@pytest.fixture
def golden() -> SftSystem:
    return SYSTEMS["golden"]


# one summary line per acceptance criterion

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    _ACCEPTANCE.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{outcome}  {name}")
