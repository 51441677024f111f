from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from mcmodels.acceptance import _poly
from mcmodels.core import GradedSpace, InvalidInput, Vec
from mcmodels.convolution import (ConilCoalg, ConvAlg, check_coalgebra, check_hom_lie, compare_pipelines,
                                  conv_bracket, counterexample_run, mc_equals_tw, random_hom,
                                  sym_coalgebra, universal_twisting)
from mcmodels.linfty import check_relations, free_lie_data, mc_residual, strict_fixture, strict_lie_fixture


@lru_cache(maxsize=None)
def iota_conv(seed):
    return ConvAlg(sym_coalgebra({"u": 0, "w": 1}, 2), strict_fixture(seed, 3, (0,)), "iota")


@lru_cache(maxsize=None)
def kappa_conv():
    return ConvAlg(sym_coalgebra({"u": 0, "w": -1}, 2), free_lie_data({"a": 0, "b": -1}, 3), "kappa")


@pytest.mark.parametrize("gens", [{"u": 0}, {"u": 0, "w": 1}, {"u": -1, "w": 2}])
def test_symmetric_coalgebra_axioms(gens):
    assert check_coalgebra(sym_coalgebra(gens, 3))


def test_symmetric_coalgebra_sizes():
    # one even generator: words u, uu, uuu; a single odd generator squares to zero
    assert len(sym_coalgebra({"u": 0}, 3).space.ids) == 3
    assert len(sym_coalgebra({"w": 1}, 3).space.ids) == 1
    assert sym_coalgebra({"u": 0}, 3).depth() == 3


def test_non_conilpotent_rejected():
    V = GradedSpace.of([("c", 0)])
    with pytest.raises(InvalidInput):
        ConilCoalg(V, {"c": Vec({("c", "c"): 1})})


def test_iota_convolution_is_slinfty():
    L = iota_conv(0).as_slinfty().tabulate()
    assert check_relations(L, 3).ok


def test_kappa_convolution_is_dg_lie():
    assert check_hom_lie(kappa_conv())


@settings(max_examples=10)
@given(st.integers(0, 200))
def test_mc_equation_is_the_twisting_equation(seed):
    for conv in (iota_conv(seed % 2), kappa_conv()):
        mc, tw = mc_equals_tw(conv, random_hom(conv, seed))
        assert mc == tw


def test_universal_twisting_is_mc():
    A = strict_fixture(1, 3, (0,))
    conv, pi = universal_twisting(A, 3)
    mc, tw = mc_equals_tw(conv, pi)
    assert not mc and not tw


def test_bracket_arity_guard():
    conv = kappa_conv()
    f = random_hom(conv, 1)
    with pytest.raises(InvalidInput):
        conv_bracket(conv, f, f, f)


def test_kind_checks():
    C = sym_coalgebra({"u": 0}, 2)
    with pytest.raises(InvalidInput):
        ConvAlg(C, strict_fixture(0, 2, (0,)), "kappa")
    with pytest.raises(InvalidInput):
        ConvAlg(C, strict_lie_fixture(0, 2, (0,)), "iota")


def test_bifunctor_counterexample():
    first, second = counterexample_run(4)
    assert _poly(first) == "-x^3"
    assert _poly(second) == "0"


def test_composites_agree_for_identity_and_strict_maps():
    # with Φ the identity and Ψ strict both orders of composition coincide
    first, second = counterexample_run(4, phi="identity", psi="strict")
    assert first == second


def test_tensor_pipeline_small():
    ok, count, bad = compare_pipelines({"a": 0}, 2, 2)
    assert ok and count > 0, bad
