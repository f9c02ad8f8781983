"""Shared test utilities: independent brute-force oracles and seeded generators.

The oracles here deliberately avoid the code paths they check: staircase
counts by raw enumeration, determinants by permutation expansion, series
coefficients by explicit convolution.
"""

from fractions import Fraction
from itertools import permutations, product

from germlab import PolyRing, Polynomial, parse_polynomial
from germlab.intersect import SplitMix64
from germlab.orders import iter_monomials, mono_divides


def P(text, ring):
    return parse_polynomial(text, ring)


def brute_standard_monomial_count(leading, arity, box):
    """Count monomials not divisible by any leading monomial, enumerating the
    full box [0, box)^arity.  Caller guarantees the staircase fits the box."""
    count = 0
    for exps in product(range(box), repeat=arity):
        if not any(mono_divides(l, exps) for l in leading):
            count += 1
    return count


def brute_monomials_by_degree(leading, arity, up_to):
    """Degree-by-degree count of standard monomials (Hilbert function oracle)."""
    counts = [0] * (up_to + 1)
    for exps in iter_monomials(arity, up_to):
        if not any(mono_divides(l, exps) for l in leading):
            counts[sum(exps)] += 1
    return counts


def permutation_determinant(M, ring):
    """Leibniz-formula determinant; exponential, for small matrices only."""
    n = len(M)
    det = ring.zero()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = ring.one()
        for i in range(n):
            term = term * M[i][perm[i]]
        det = det + (term if sign == 1 else -term)
    return det


def random_polynomial(rng: SplitMix64, ring: PolyRing, max_degree=3,
                      max_terms=4, coeff_bound=4, force_germ=False) -> Polynomial:
    """Small random polynomial with exact coefficients; never zero."""
    while True:
        acc = {}
        for _ in range(1 + rng.randint(0, max_terms - 1)):
            exps = []
            budget = max_degree
            for _ in range(ring.arity):
                e = rng.randint(0, budget)
                exps.append(e)
                budget -= e
            num = rng.randint(-coeff_bound, coeff_bound)
            if num == 0:
                num = 1
            exps = tuple(exps)
            if force_germ and sum(exps) == 0:
                continue
            acc[exps] = acc.get(exps, 0) + Fraction(num)
        p = ring.polynomial(acc)
        if not p.is_zero:
            return p


def random_point(rng: SplitMix64, arity, bound=3):
    out = []
    for _ in range(arity):
        num = rng.randint(-bound, bound)
        out.append(Fraction(num, rng.choice((1, 2, 4))))
    return tuple(out)
