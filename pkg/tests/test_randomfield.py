import numpy as np
import pytest

from scatterstats import (DimensionError, HaltonSampler, first_primes,
                          halton_point, radical_inverse)

from _reference import reversed_digit_inverse


def test_first_primes():
    np.testing.assert_array_equal(first_primes(10),
                                  [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
    primes = first_primes(1000)
    assert len(primes) == 1000
    assert (np.diff(primes) > 0).all()
    assert primes[-1] == 7919


def test_radical_inverse_definition():
    assert radical_inverse(1, 2) == 0.5
    assert radical_inverse(4, 2) == 0.125
    # 5 = 12 in base 3; reversed digits give 0.21_3 = 7/9
    assert radical_inverse(5, 3) == pytest.approx(reversed_digit_inverse(5, 3),
                                                  abs=1e-15)
    assert radical_inverse(5, 3) == pytest.approx(7.0 / 9.0)


@pytest.mark.parametrize("base", [2, 3, 5, 13])
def test_radical_inverse_against_digit_reversal(base):
    for index in range(1, 200):
        assert radical_inverse(index, base) == pytest.approx(
            reversed_digit_inverse(index, base), abs=1e-15)


def test_halton_point_first_indices():
    np.testing.assert_allclose(halton_point(1, 2), [0.5, 1.0 / 3.0])
    assert halton_point(4, 1)[0] == 0.125


def test_parameters_map_and_range():
    sampler = HaltonSampler(dimension=1000)
    params = sampler.parameters(50)
    assert params.shape == (50, 1000)
    assert (params >= -1.0).all() and (params <= 1.0).all()
    # radical inverse 1/2 maps to the cube center coordinate 0
    assert sampler.parameters(1)[0, 0] == 0.0


def test_reproducibility_bitwise():
    a = HaltonSampler(dimension=64, start_index=7).parameters(33)
    b = HaltonSampler(dimension=64, start_index=7).parameters(33)
    np.testing.assert_array_equal(a, b)


def test_start_index_offsets_the_sequence():
    base = HaltonSampler(dimension=8).parameters(20)
    shifted = HaltonSampler(dimension=8, start_index=6).parameters(10)
    np.testing.assert_array_equal(base[5:15], shifted)


def test_empirical_mean_of_first_coordinate():
    sampler = HaltonSampler(dimension=4)
    params = sampler.parameters(10_000)
    assert abs(params[:, 0].mean()) < 2e-3


def test_mean_and_variance_converge_faster_than_sqrt_n():
    sampler = HaltonSampler(dimension=5)
    params = sampler.parameters(10_000)
    mean_err = {}
    var_err = {}
    for n in (100, 1000, 10_000):
        block = params[:n]
        mean_err[n] = np.abs(block.mean(axis=0)).max()
        var_err[n] = np.abs(block.var(axis=0) - 1.0 / 3.0).max()
    # two decades of N must buy more than the 10x of plain Monte Carlo
    assert mean_err[10_000] < mean_err[100] / 10.0
    assert var_err[10_000] < var_err[100] / 10.0


def test_invalid_arguments():
    with pytest.raises(DimensionError):
        HaltonSampler(dimension=0)
    with pytest.raises(DimensionError):
        HaltonSampler(dimension=3, start_index=0)
    with pytest.raises(DimensionError):
        HaltonSampler(dimension=3).parameters(0)
    with pytest.raises(DimensionError):
        halton_point(0, 3)
