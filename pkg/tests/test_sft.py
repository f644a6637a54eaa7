from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from primsft.sft import (
    Cycle,
    Kind,
    SftSystem,
    SystemConfigError,
    check_alpha_injective,
    check_alpha_unital,
    count_periodic_points,
    enumerate_cycles,
    full_shift,
    least_rotation,
    parse_system,
    permutation_system,
    primitive_root,
    system_from_dict,
)

from conftest import golden_mean


def brute_cycles(sys_: SftSystem, max_len: int) -> set[str]:
    out = set()
    for n in range(1, max_len + 1):
        for letters in product(sys_.alphabet, repeat=n):
            w = "".join(letters)
            if sys_.is_cyclic_admissible(w) and primitive_root(w) == w:
                out.add(least_rotation(w))
    return out


def brute_periodic_count(sys_: SftSystem, n: int) -> int:
    return sum(
        sys_.is_cyclic_admissible("".join(w)) for w in product(sys_.alphabet, repeat=n)
    )


@st.composite
def small_systems(draw):
    k = draw(st.integers(1, 3))
    matrix = [[draw(st.integers(0, 1)) for _ in range(k)] for _ in range(k)]
    alphabet = [str(i) for i in range(k)]
    domain = draw(st.lists(st.sampled_from(alphabet), min_size=1, unique=True))
    try:
        return system_from_dict({"kind": "sft", "alphabet": alphabet, "transition": matrix, "domain": domain})
    except SystemConfigError:
        assume(False)


class TestParse:
    def test_full_shift(self):
        s = parse_system('kind = "sft"\nalphabet = ["0","1"]\ntransition = [[1,1],[1,1]]\n')
        assert s.kind is Kind.SFT
        assert s.domain == frozenset("01")
        assert s == full_shift(2)

    def test_golden_mean_rows_and_columns_nonzero(self):
        s = golden_mean()
        rows = [sum(r) for r in s.transition]
        cols = [sum(c) for c in zip(*s.transition)]
        assert min(rows) > 0 and min(cols) > 0

    def test_dead_symbol(self):
        with pytest.raises(SystemConfigError, match="symbol 1 has no successor"):
            parse_system('kind = "sft"\nalphabet = ["0","1"]\ntransition = [[1,0],[0,0]]\n')

    @pytest.mark.parametrize(
        "text, msg",
        [
            ('kind = "sft"\nalphabet = ["0","1"]\ntransition = [[1,1]]\n', "square"),
            ('kind = "sft"\nalphabet = ["0","1"]\ntransition = [[1,2],[1,1]]\n', "not 0 or 1"),
            ('kind = "sft"\nalphabet = ["0","0"]\ntransition = [[1,1],[1,1]]\n', "repeated"),
            ('kind = "sft"\nalphabet = ["ab"]\ntransition = [[1]]\n', "single"),
            ('kind = "sft"\nalphabet = ["."]\ntransition = [[1]]\n', "non-reserved"),
            ('kind = "sft"\nalphabet = ["0","1"]\ntransition = [[1,1],[1,1]]\ndomain = ["2"]\n', "not in alphabet"),
            ('kind = "perm"\nalphabet = ["0"]\ntransition = [[1]]\n', "kind"),
            ('kind = "permutation"\nalphabet = ["0","1"]\ntransition = [[1,1],[1,1]]\n', "permutation"),
            ('alphabet = ["0"]\ntransition = [[1]]\n', "kind"),
            ("kind = = 1", "malformed"),
        ],
    )
    def test_rejects(self, text, msg):
        with pytest.raises(SystemConfigError, match=msg):
            parse_system(text)

    def test_round_trip_dict(self):
        s = golden_mean("0")
        assert system_from_dict(s.to_dict()) == s


class TestAlphaChecks:
    def test_examples(self):
        assert check_alpha_injective(full_shift(2, domain="0"))
        assert not check_alpha_injective(golden_mean("1"))
        assert check_alpha_injective(permutation_system([2, 0, 1]))
        assert check_alpha_unital(full_shift(2))
        assert not check_alpha_unital(full_shift(2, domain="0"))
        assert check_alpha_unital(permutation_system([0]))

    @given(small_systems())
    def test_injective_matches_preimage_search(self, s):
        # sigma : Y -> X onto, checked on all admissible words up to length 4
        onto = all(
            any(s.is_admissible(d + "".join(w)) for d in s.domain)
            for n in range(1, 5)
            for w in product(s.alphabet, repeat=n)
            if s.is_admissible("".join(w))
        )
        assert check_alpha_injective(s) == onto


class TestCycles:
    def test_full_shift_len3(self):
        assert [c.word for c in enumerate_cycles(full_shift(2), 3)] == ["0", "1", "01", "001", "011"]

    def test_golden_len2(self):
        assert [c.word for c in enumerate_cycles(golden_mean(), 2)] == ["0", "01"]

    def test_three_cycle(self):
        assert [c.word for c in enumerate_cycles(permutation_system([1, 2, 0]), 3)] == ["012"]

    @settings(max_examples=60)
    @given(small_systems(), st.integers(1, 5))
    def test_matches_brute_force(self, s, n):
        assert {c.word for c in enumerate_cycles(s, n)} == brute_cycles(s, n)

    def test_cycle_validation(self):
        with pytest.raises(ValueError):
            Cycle("10")
        with pytest.raises(ValueError):
            Cycle("0101")
        assert Cycle.from_word("0101").word == "01"
        assert Cycle.from_word("110").word == "011"


class TestCounting:
    def test_examples(self):
        assert count_periodic_points(full_shift(2), 4) == 16
        g = golden_mean()
        assert [count_periodic_points(g, n) for n in range(1, 7)] == [1, 3, 4, 7, 11, 18]
        for s in (full_shift(3), g, permutation_system([1, 0, 2])):
            assert count_periodic_points(s, 1) == sum(s.transition[i][i] for i in range(s.size))

    @settings(max_examples=60)
    @given(small_systems(), st.integers(1, 6))
    def test_trace_equals_brute_force(self, s, n):
        assert count_periodic_points(s, n) == brute_periodic_count(s, n)

    @given(small_systems(), st.integers(1, 6))
    def test_necklace_identity(self, s, n):
        cycles = enumerate_cycles(s, n)
        total = sum(len(c) for c in cycles if n % len(c) == 0)
        assert total == count_periodic_points(s, n)
