from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ftqc_estimate import (GateCurrency, InputError, LogicalRequirements, required_ccz_states,
                           t_per_layer, toffoli_to_t_count)
from ftqc_estimate.logical_spec import effective_count


@pytest.mark.parametrize("tof, t", [(6_700_000_000, 26_800_000_000), (0, 0), (1, 4)])
def test_toffoli_to_t(tof, t):
    assert toffoli_to_t_count(tof) == t


def test_ccz_states(femoco, bitcoin):
    assert required_ccz_states(femoco) == 6_700_000_000
    assert required_ccz_states(bitcoin) == 2_880_000_000
    assert required_ccz_states(LogicalRequirements(10, t_count=3)) == 2


def test_mixed_counts_sum():
    spec = LogicalRequirements(10, toffoli_count=5, t_count=7)
    assert effective_count(spec, GateCurrency.T_GATE) == 27
    assert effective_count(spec, GateCurrency.CCZ_STATE) == 9


def test_t_per_layer(bitcoin, femoco):
    assert t_per_layer(bitcoin) == pytest.approx(306.38, rel=1e-4)
    assert t_per_layer(LogicalRequirements(5, t_count=40, measurement_depth=40)) == 1
    # the depth fraction labels layers against the native Toffoli count
    assert femoco.depth == 67_000_000
    assert t_per_layer(femoco, GateCurrency.CCZ_STATE) == 100
    assert t_per_layer(femoco, GateCurrency.T_GATE) == 400


def test_depth_fraction_ceil():
    spec = LogicalRequirements(3, t_count=1001, depth_fraction=Fraction(1, 10))
    assert spec.depth == 101


@given(st.integers(1, 10**12))
def test_even_t_count_halves(k):
    assert required_ccz_states(LogicalRequirements(1, t_count=2 * k)) == k


@given(st.integers(1, 10**11), st.integers(1, 10**6))
def test_layer_times_depth(count, depth):
    depth = min(depth, count)
    spec = LogicalRequirements(2, t_count=count, measurement_depth=depth)
    assert t_per_layer(spec) * depth == pytest.approx(count, rel=1e-12)


@given(st.integers(1, 10**11))
def test_scaling_commutes(tof):
    a, b = LogicalRequirements(4, toffoli_count=tof), LogicalRequirements(4, toffoli_count=2 * tof)
    for cur in GateCurrency:
        assert effective_count(b, cur) == 2 * effective_count(a, cur)


class TestValidation:
    def test_needs_gates(self):
        with pytest.raises(InputError):
            LogicalRequirements(10)
        with pytest.raises(InputError):
            LogicalRequirements(10, t_count=0, toffoli_count=0)

    def test_depth_bounds(self):
        with pytest.raises(InputError):
            LogicalRequirements(10, t_count=5, measurement_depth=6)
        with pytest.raises(InputError):
            LogicalRequirements(10, t_count=5, measurement_depth=0)

    def test_missing_depth(self):
        with pytest.raises(InputError):
            LogicalRequirements(10, t_count=5).depth

    def test_qubits(self):
        with pytest.raises(InputError):
            LogicalRequirements(0, t_count=5)
