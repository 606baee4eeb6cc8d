from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eulerstack.errors import NotConstructible, NotFiniteType, StackMismatch, UndefinedWeight
from eulerstack.groupcat import TRIVIAL, Product, Torus, Weight, cyclic, finite, gl, unipotent, weight_value
from eulerstack.strata import (
    ConstructibleFn,
    ConstructibleSet,
    StratifiedStack,
    Stratum,
    affine_space,
    cf_pointwise,
    chi_naive,
    chi_naive_weighted,
    chi_orbifold,
    chi_set,
    chi_stack,
    chi_weighted,
    point,
    product_fn,
    product_stack,
    projective_space,
    quotient_point,
    set_ops,
    torus_stack,
    weight_fn,
)
from strategies import gens

A = StratifiedStack((Stratum("s0", 1), Stratum("s1", -2), Stratum("s2", 3)), name="A")
LOC = StratifiedStack((Stratum("s0", 1),), has_remainder=True, name="L")


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        StratifiedStack((Stratum("a", 1), Stratum("a", 2)))


def test_function_basics():
    f = A.fn({"s0": "1/2"})
    assert f("s0") == Fraction(1, 2) and f("s1") == 0
    assert f.support == {"s0"}
    assert f.is_constructible
    with pytest.raises(TypeError):
        A.fn({"s0": 0.5})
    with pytest.raises(KeyError):
        A.fn({"nope": 1})


def test_default_is_zero_without_remainder():
    assert A.fn({}, default=5).default == 0
    g = LOC.fn({}, default=5)
    assert g.default == 5 and not g.is_constructible


# -- pointwise algebra ----------------------------------------------------------


def test_pointwise_examples():
    f = A.fn({"s0": 2})
    assert cf_pointwise("mul", f, A.fn({})) == A.fn({})
    assert cf_pointwise("scale", f, 0) == A.fn({})
    a, b = LOC.fn({"s0": 2}), LOC.fn({"s0": 3}, default=5)
    assert cf_pointwise("mul", a, b) == LOC.fn({"s0": 6})
    assert cf_pointwise("add", A.fn({"s0": "1/2"}), A.fn({"s0": "1/3"}))("s0") == Fraction(5, 6)
    assert (f - f) == A.fn({})
    assert (-f)("s0") == -2
    with pytest.raises(StackMismatch):
        cf_pointwise("add", A.fn({}), LOC.fn({}))


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_ideal_property(x, y, d):
    f = LOC.fn({"s0": x})  # constructible
    g = LOC.fn({"s0": y}, default=d)
    assert cf_pointwise("mul", f, g).default == 0
    assert cf_pointwise("mul", g, f).is_constructible


# -- set algebra ------------------------------------------------------------


def test_set_ops_examples():
    empty = A.subset([])
    X = A.subset(["s0", "s1"])
    assert set_ops("union", X, empty) == X
    assert set_ops("difference", X, X) == empty
    assert set_ops("intersect", X, A.subset(["s1", "s2"])).members == {"s1"}
    with pytest.raises(StackMismatch):
        set_ops("union", X, LOC.subset([]))
    with pytest.raises(KeyError):
        ConstructibleSet(A, frozenset({"zz"}))


# -- Euler characteristics ------------------------------------------------------


def test_chi_naive_examples():
    assert chi_naive(A.subset([])) == 0
    assert chi_naive(projective_space(2).everything()) == 3
    assert chi_naive(A.subset(["s0", "s1"])) == -1


def test_chi_naive_weighted_examples():
    assert chi_naive_weighted(A.delta(["s0", "s2"])) == chi_naive(A.subset(["s0", "s2"]))
    assert chi_naive_weighted(A.fn({"s0": 2, "s1": 3})) == -4
    assert chi_naive_weighted(A.fn({})) == 0
    with pytest.raises(NotConstructible):
        chi_naive_weighted(LOC.fn({}, default=1))


def test_level_set_regrouping():
    # sum_c c * chi(f^-1(c)) computed by grouping strata by value
    f = A.fn({"s0": 2, "s1": 2, "s2": -1})
    levels = {}
    for s in A.strata:
        levels.setdefault(f(s.id), []).append(s.id)
    assert chi_naive_weighted(f) == sum(c * chi_naive(A.subset(ids)) for c, ids in levels.items())


def test_chi_weighted_examples():
    bz2 = quotient_point(finite(cyclic(2)))
    one = bz2.const(1)
    assert chi_weighted(one, Weight.INV_E) == Fraction(1, 2)
    assert chi_stack(one) == Fraction(1, 2)
    assert chi_weighted(one, Weight.O) == 2
    assert chi_orbifold(one) == 2
    bt = quotient_point(Torus(1))
    with pytest.raises(UndefinedWeight):
        chi_weighted(bt.const(1), Weight.INV_E)
    # infinite weight off the support is harmless
    assert chi_weighted(bt.fn({}), Weight.INV_E) == 0


def test_catalogue_constructors():
    for m in range(6):
        assert chi_naive(affine_space(m).everything()) == 1
        assert chi_naive(projective_space(m).everything()) == m + 1
    assert chi_naive(torus_stack(1).everything()) == 0
    assert chi_naive(torus_stack(0).everything()) == 1
    assert len(affine_space(3)) == 8


def test_weight_fn():
    s = StratifiedStack((Stratum("a", 1, finite(cyclic(3))), Stratum("b", 2)))
    assert weight_fn(s, Weight.E) == s.fn({"a": 3, "b": 1})
    with pytest.raises(UndefinedWeight):
        weight_fn(quotient_point(gl(1)), Weight.INV_E)


# -- properties over random stacks ------------------------------------------------

WEIGHTS = [Weight.NAIVE, Weight.E, Weight.INV_E, Weight.O]


def _stack_with_symbolic(gen):
    n = gen.n_strata()
    return StratifiedStack(
        tuple(Stratum(f"s{i}", gen.rng.randint(-3, 3), gen.symbolic_group()) for i in range(n))
    )


def _defined(f, w):
    try:
        return chi_weighted(f, w)
    except UndefinedWeight:
        return None
    except Exception as exc:  # UnsupportedGroup for o on GL
        if type(exc).__name__ == "UnsupportedGroup":
            return None
        raise


@given(gens)
def test_additivity_over_partitions(gen):
    s = _stack_with_symbolic(gen)
    ids = list(s.ids)
    labels = [gen.rng.randint(0, 2) for _ in ids]
    parts = [s.subset([i for i, l in zip(ids, labels) if l == k]) for k in range(3)]
    for w in WEIGHTS:
        whole = _defined(s.everything().indicator(), w)
        pieces = [_defined(p.indicator(), w) for p in parts]
        if whole is None or None in pieces:
            continue
        assert whole == sum(pieces)


@given(gens)
def test_multiplicativity_on_product_stacks(gen):
    a, b = _stack_with_symbolic(gen), _stack_with_symbolic(gen)
    ab = product_stack(a, b)
    for w in WEIGHTS:
        ca, cb = _defined(a.const(1), w), _defined(b.const(1), w)
        cab = _defined(ab.const(1), w)
        if ca is None or cb is None or cab is None:
            continue
        assert cab == ca * cb


@given(gens)
def test_product_fn_multiplies(gen):
    a, b = gen.stack("a"), gen.stack("b")
    f, g = gen.function(a), gen.function(b)
    ab = product_stack(a, b)
    assert chi_naive_weighted(product_fn(f, g, ab)) == chi_naive_weighted(f) * chi_naive_weighted(g)


def test_product_stack_needs_finite_type():
    with pytest.raises(NotFiniteType):
        product_stack(A, LOC)


def test_product_stabilizer():
    ab = product_stack(quotient_point(finite(cyclic(2))), quotient_point(unipotent(2)))
    assert ab.strata[0].stabilizer == Product((finite(cyclic(2)), unipotent(2)))
    assert weight_value(Weight.E, ab.strata[0].stabilizer) == 2


@given(gens, st.fractions(max_denominator=6), st.fractions(max_denominator=6))
def test_chi_naive_weighted_is_linear(gen, x, y):
    s = gen.stack()
    f, g = gen.function(s), gen.function(s)
    lhs = chi_naive_weighted(cf_pointwise("add", cf_pointwise("scale", f, x), cf_pointwise("scale", g, y)))
    assert lhs == x * chi_naive_weighted(f) + y * chi_naive_weighted(g)


def test_chi_set_matches_indicator():
    assert chi_set(A.subset(["s1", "s2"])) == 1
    assert point().strata[0].stabilizer == TRIVIAL
