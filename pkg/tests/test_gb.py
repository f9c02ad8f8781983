"""Groebner/standard bases, elimination, radicals, staircases, Hilbert series."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab import (
    DEGREVLEX,
    INFINITY,
    LEX,
    LOCAL_DEGREVLEX,
    GuardConfig,
    Ideal,
    PolyRing,
    buchberger_basis,
    eliminate,
    hilbert_series_monomial,
    ideal_equal,
    krull_dimension,
    normal_form,
    poly_gcd,
    poly_lcm,
    quotient_dimension,
    radical_membership,
    squarefree_part,
    staircase_monomials,
    zero_dim_radical,
)
from germlab.errors import PreconditionError, ResourceLimitError
from germlab.gb import hilbert_series_coefficients, univariate_squarefree
from germlab.intersect import SplitMix64

from helpers import P, brute_monomials_by_degree, random_polynomial

R1 = PolyRing(("x",))
R2 = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "t"))
ST = PolyRing(("s", "t"))


# -- normal forms --------------------------------------------------------------


def test_nf_divisible_monomial():
    assert normal_form(P("x^2", R2), [R2.var("x")], DEGREVLEX).is_zero


def test_nf_irreducible():
    assert normal_form(R2.var("y"), [R2.var("x")], LEX) == R2.var("y")


def test_mora_unit_division():
    # x + x^2 = x*(1 + x) and 1 + x is a unit of the local ring, so x reduces
    # to zero; one Mora step with the ecart extension finds it.
    r = normal_form(R2.var("x"), [P("x + x^2", R2)], LOCAL_DEGREVLEX)
    assert r.is_zero


def test_nf_empty_family_returns_input():
    p = P("x + y", R2)
    assert normal_form(p, [], LEX) == p


# -- buchberger ----------------------------------------------------------------


def test_lex_basis_hand_run():
    # Hand Buchberger: spoly(x^2 - y, x - y^2) -> x*y^2 - y -> y^4 - y;
    # minimalization drops x^2 - y.
    I = Ideal(R2, [P("x^2 - y", R2), P("y^2 - x", R2)])
    gb = buchberger_basis(I, LEX)
    assert set(gb.basis) == {P("x - y^2", R2), P("y^4 - y", R2)}


def test_principal_monic():
    I = Ideal(R2, [P("3*x", R2)])
    for order in (LEX, DEGREVLEX, LOCAL_DEGREVLEX):
        assert Ideal(R2, [P("3*x", R2)]).basis(order).basis == (R2.var("x"),)


def test_local_leading_ideal_of_the_fiber_pair():
    I = Ideal(ST, [ST.var("t"), P("s^2 - t^2", ST)])
    gb = I.basis(LOCAL_DEGREVLEX)
    assert set(gb.leading_exponents) == {(0, 1), (2, 0)}


def test_spolys_reduce_to_zero_global_and_local():
    for order in (LEX, DEGREVLEX, LOCAL_DEGREVLEX):
        I = Ideal(R2, [P("x^2 - y^3", R2), P("x*y - x", R2)])
        gb = I.basis(order)
        from germlab.gb import _ordered, _spoly, _mora_weak_nf, _global_nf, DEFAULT_GUARDS

        basis_t = [_ordered(p, order) for p in gb.basis]
        for i in range(len(basis_t)):
            for j in range(i + 1, len(basis_t)):
                s = _spoly(basis_t[i], basis_t[j], order.key)
                if order.is_global:
                    assert _global_nf(s, basis_t, order.key) == []
                else:
                    assert _mora_weak_nf(s, basis_t, order.key, DEFAULT_GUARDS) == []


def test_zero_ideal_has_empty_basis():
    I = Ideal(R2, [])
    assert I.basis(DEGREVLEX).basis == ()


def test_basis_cache_is_transparent():
    I = Ideal(R2, [P("x^2 - y", R2), P("y^2 - x", R2)])
    first = I.basis(LEX)
    again = I.basis(LEX)
    assert first is again
    fresh = Ideal(R2, [P("x^2 - y", R2), P("y^2 - x", R2)]).basis(LEX)
    assert fresh.basis == first.basis


def test_resource_guard_fails_loudly():
    I = Ideal(R2, [P("x^2 - y", R2), P("y^2 - x", R2)])
    with pytest.raises(ResourceLimitError):
        I.basis(LEX, GuardConfig(max_degree=1))


def test_cancellation_token():
    from germlab.gb import ComputationCancelled

    I = Ideal(R2, [P("x^2 - y", R2), P("y^2 - x", R2)])
    with pytest.raises(ComputationCancelled):
        I.basis(LEX, GuardConfig(cancel=lambda: True))


# -- elimination ----------------------------------------------------------------


def test_eliminate_graph_of_the_normalization():
    big = PolyRing(("s", "t", "u", "v", "w"))
    I = Ideal(big, [
        P("u - (s^2 - t^2)", big),
        P("v - s*(s^2 - t^2)", big),
        P("w - t", big),
    ])
    J = eliminate(I, ["s", "t"])
    small = PolyRing(("u", "v", "w"))
    assert ideal_equal(J, Ideal(small, [P("v^2 - u^2*(u + w^2)", small)]))


def test_eliminate_nothing_is_identity():
    I = Ideal(R2, [P("x^2 - y", R2)])
    assert eliminate(I, []) is I


def test_eliminate_cusp_image():
    big = PolyRing(("x", "y", "u", "v"))
    I = Ideal(big, [P("u - x^2", big), P("v - y", big), P("y - x^3", big)])
    J = eliminate(I, ["x", "y"])
    small = PolyRing(("u", "v"))
    assert ideal_equal(J, Ideal(small, [P("u^3 - v^2", small)]))


def test_eliminate_idempotent_and_contained():
    big = PolyRing(("s", "t", "u", "v", "w"))
    I = Ideal(big, [
        P("u - (s^2 - t^2)", big),
        P("v - s*(s^2 - t^2)", big),
        P("w - t", big),
    ])
    J = eliminate(I, ["s", "t"])
    # contained: each eliminated generator is a member of I
    gb = I.basis(DEGREVLEX)
    for g in J.generators:
        lifted = P(str(g), big)
        assert gb.contains(lifted)
    # idempotent on the result
    assert eliminate(J, []) is J


def test_eliminate_everything_rejected():
    I = Ideal(R2, [P("x - y", R2)])
    with pytest.raises(PreconditionError):
        eliminate(I, ["x", "y"])


# -- radical membership ----------------------------------------------------------


def test_radical_of_a_power():
    assert radical_membership(R2.var("x"), Ideal(R2, [P("x^2", R2)]))


def test_independent_variable_not_in_radical():
    assert not radical_membership(R2.var("y"), Ideal(R2, [R2.var("x")]))


def test_jacobian_restriction_not_identically_zero():
    det = P("x*(2*y - x)", R2)
    assert not radical_membership(det, Ideal(R2, [R2.var("y")]))


def test_zero_is_everywhere():
    assert radical_membership(R2.zero(), Ideal(R2, [R2.var("x")]))


# -- quotient dimension -----------------------------------------------------------


def test_staircase_x2_y():
    I = Ideal(R2, [P("x^2", R2), R2.var("y")])
    assert quotient_dimension(I, DEGREVLEX) == 2
    assert set(staircase_monomials(I, DEGREVLEX)) == {(0, 0), (1, 0)}


def test_maximal_ideal():
    assert quotient_dimension(Ideal(R2, [R2.var("x"), R2.var("y")])) == 1


def test_local_dimension_of_the_projected_fiber_pair():
    I = Ideal(ST, [ST.var("t"), P("s^2 - t^2", ST)])
    assert quotient_dimension(I, LOCAL_DEGREVLEX) == 2


def test_unit_ideal_dimension_zero():
    assert quotient_dimension(Ideal(R2, [R2.one()])) == 0


def test_zero_ideal_infinite():
    assert quotient_dimension(Ideal(R2, [])) == INFINITY
    assert staircase_monomials(Ideal(R2, [])) is None


def test_positive_dimensional_infinite():
    assert quotient_dimension(Ideal(R2, [R2.var("x")])) == INFINITY


# -- hilbert series ----------------------------------------------------------------


def test_hilbert_principal_square():
    assert hilbert_series_monomial([(0, 2, 0)], 3) == (1, 0, -1)


def test_hilbert_free_ring():
    assert hilbert_series_monomial([], 3) == (1,)


def test_hilbert_full_maximal():
    n = hilbert_series_monomial([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    # (1-t)^3
    assert n == (1, -3, 3, -1)
    assert hilbert_series_coefficients(n, 3, 5) == [1, 0, 0, 0, 0, 0]


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40, deadline=None)
def test_hilbert_series_matches_brute_staircase(seed):
    rng = SplitMix64(seed)
    arity = 2 + rng.randint(0, 1)
    gens = []
    for _ in range(1 + rng.randint(0, 3)):
        gens.append(tuple(rng.randint(0, 3) for _ in range(arity)))
    gens = [g for g in gens if sum(g) > 0]
    numerator = hilbert_series_monomial(gens, arity)
    series = hilbert_series_coefficients(numerator, arity, 8)
    assert series == brute_monomials_by_degree(gens, arity, 8)


# -- krull dimension ----------------------------------------------------------------


def test_hypersurface_dimension():
    assert krull_dimension(Ideal(R2, [P("y^2 - x^3", R2)])) == 1


def test_whole_space_dimension():
    assert krull_dimension(Ideal(R3, [])) == 3


def test_point_dimension():
    assert krull_dimension(Ideal(R3, [R3.var("x"), R3.var("y"), R3.var("t")])) == 0


def test_unit_ideal_raises():
    with pytest.raises(PreconditionError) as info:
        krull_dimension(Ideal(R2, [R2.one()]))
    assert "empty variety" in str(info.value)


# -- zero-dimensional radicals ---------------------------------------------------------


def test_radical_of_x_squared():
    rad = zero_dim_radical(Ideal(R1, [P("x^2", R1)]))
    assert ideal_equal(rad, Ideal(R1, [R1.var("x")]))


def test_already_radical_unchanged():
    I = Ideal(R1, [P("(x - 1)*(x - 2)", R1)])
    rad = zero_dim_radical(I)
    assert rad is I
    assert quotient_dimension(rad) == 2


def test_double_cover_fiber_has_two_points():
    I = Ideal(ST, [P("s^2 - t^2", ST), P("s*(s^2 - t^2)", ST), P("t - 1", ST)])
    rad = zero_dim_radical(I)
    assert quotient_dimension(rad) == 2


def test_radical_requires_zero_dimensional():
    with pytest.raises(PreconditionError):
        zero_dim_radical(Ideal(R2, [R2.var("x")]))


def test_radical_never_grows_dimension():
    rng = SplitMix64(11)
    for _ in range(15):
        f = P("x^2", R2) + random_polynomial(rng, R2, max_degree=1, coeff_bound=2)
        g = P("y^3", R2) + random_polynomial(rng, R2, max_degree=2, coeff_bound=2)
        I = Ideal(R2, [f, g])
        d = quotient_dimension(I)
        if d == INFINITY:
            continue
        assert quotient_dimension(zero_dim_radical(I)) <= d


# -- gcd / lcm / squarefree -----------------------------------------------------------


def test_gcd_of_coprime():
    assert poly_gcd(P("y^2 - x^6", R2), P("-6*x^5", R2)) == R2.one()


def test_gcd_lcm_product_relation():
    a = P("x^2*y", R2)
    b = P("x*y^2", R2)
    assert poly_lcm(a, b) == P("x^2*y^2", R2)
    assert poly_gcd(a, b) == P("x*y", R2)


def test_squarefree_part_of_a_square():
    assert squarefree_part(P("x^2", R2)) == R2.var("x")
    cube = P("(x - y)*(x - y)*(x + y)", R2)
    assert squarefree_part(cube) == P("(x - y)*(x + y)", R2).monic()


def test_squarefree_part_keeps_squarefree():
    g = P("y^2 - x^6", R2)
    assert squarefree_part(g) == g.monic()


def test_univariate_squarefree():
    g = P("x^3 - x^2", R1)  # x^2 (x - 1)
    assert univariate_squarefree(g) == P("x^2 - x", R1)
