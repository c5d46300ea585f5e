import random
from fractions import Fraction

import pytest

from gfrob import Tensor, cyclic_group, dual_module, symmetric_group
from gfrob.serialize import (
    ParseError,
    frac_from_str,
    frac_to_str,
    gfa_from_json,
    gfa_to_json,
    group_from_json,
    group_to_json,
    module_from_json,
    module_to_json,
    tensor_from_json,
    tensor_to_json,
)
from gfrob.singularity import z2_frobenius_algebra


def test_fraction_strings():
    assert frac_to_str(Fraction(-3, 7)) == "-3/7"
    assert frac_to_str(Fraction(2)) == "2/1"
    assert frac_from_str("-3/7") == Fraction(-3, 7)
    assert frac_from_str("5") == Fraction(5)
    assert frac_from_str(4) == Fraction(4)
    with pytest.raises(ParseError):
        frac_from_str("1/0")
    with pytest.raises(ParseError):
        frac_from_str("pi")


def test_group_round_trip():
    for g in (cyclic_group(4), symmetric_group(3)):
        assert group_from_json(group_to_json(g)) == g


def test_module_round_trip():
    h = z2_frobenius_algebra(4).module
    assert module_from_json(module_to_json(h)) == h
    assert module_from_json(module_to_json(dual_module(h))) == dual_module(h)


def test_tensor_round_trip():
    rng = random.Random(0)
    for _ in range(10):
        t = Tensor(3, {
            tuple(rng.randrange(4) for _ in range(3)): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            for _ in range(4)
        })
        assert tensor_from_json(tensor_to_json(t)) == t


def test_gfa_round_trip():
    alg = z2_frobenius_algebra(3)
    back = gfa_from_json(gfa_to_json(alg))
    assert back.module == alg.module
    assert back.metric == alg.metric
    assert back.mult == alg.mult
    assert back.unit == alg.unit


def test_malformed_inputs():
    with pytest.raises(ParseError):
        group_from_json({"order": 2})
    with pytest.raises(ParseError):
        module_from_json({"dim": 2})
    with pytest.raises(ParseError):
        tensor_from_json([1, 2, 3])
