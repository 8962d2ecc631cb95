"""Base-class-valued Minkowski weights and the fan displacement product.

A weight of codimension k assigns to each cone a class of the base ring,
homogeneous of cohomological degree k - codim(cone), subject to the
balancing condition.  Products are computed by displacing the fan by a
certified generic vector and summing over pairs of cones that still meet.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, GradedAlgebra, MixingMap
from .errors import BalancingError, FanNotComplete, NonGenericVector
from .fans import (
    Cone,
    Fan,
    _shift_dim,
    cone_sublattice,
    is_complete,
    is_generic_diagonal,
    sigma_v_set,
)
from .lattice import Sublattice, dot, lattice_index, normal_generator, perp_basis


class MinkowskiWeight:
    """Assignment of base classes to cones, stored sparsely."""

    def __init__(self, fan: Fan, algebra: GradedAlgebra, mixing: MixingMap, codim: int, values):
        self.fan = fan
        self.algebra = algebra
        self.mixing = mixing
        self.codim = codim
        vals = {}
        cone_set = set(fan.cones)
        for cone, el in values.items():
            if cone not in cone_set:
                raise ValueError(f"value on a cone outside the fan: {cone}")
            if el.is_zero():
                continue
            expected = codim - fan.codim(cone)
            if expected < 0 or expected > algebra.top_degree:
                raise ValueError(
                    f"nonzero value outside the degree band at {cone} (degree {expected})"
                )
            if not el.is_homogeneous_of(expected):
                raise ValueError(f"value at {cone} must be homogeneous of degree {expected}")
            vals[cone] = el
        self.values = vals

    def value(self, cone: Cone) -> AlgebraElement:
        return self.values.get(cone, self.algebra.zero())

    def __eq__(self, other):
        return (
            isinstance(other, MinkowskiWeight)
            and self.fan == other.fan
            and self.algebra == other.algebra
            and self.codim == other.codim
            and self.values == other.values
        )

    def __repr__(self):
        entries = ", ".join(
            f"{self.fan.cone_key(c)}: {v.render()}" for c, v in sorted(
                self.values.items(), key=lambda kv: self.fan.cone_sort_key(kv[0])
            )
        )
        return f"MinkowskiWeight(codim {self.codim}; {entries})"

    def is_zero(self) -> bool:
        return not self.values


@dataclass
class BalancingReport:
    ok: bool
    violations: list  # (tau, m, lhs, rhs)


def _require_complete(fan: Fan):
    if not is_complete(fan):
        raise FanNotComplete("this operation needs a complete fan")


def balancing_sides(W: MinkowskiWeight, tau: Cone, m):
    """Both sides of the balancing condition at (tau, m in perp(tau))."""
    fan = W.fan
    lhs = W.algebra.zero()
    for sigma in fan.cones_containing(tau):
        if sigma.dim != tau.dim + 1:
            continue
        n_st = normal_generator(
            cone_sublattice(tau), cone_sublattice(sigma), sigma.interior_point()
        )
        coeff = dot(m, n_st)
        if coeff != 0:
            lhs = lhs + W.value(sigma) * coeff
    rhs = W.mixing.delta(m) * W.value(tau)
    return lhs, rhs


def check_balancing(W: MinkowskiWeight) -> BalancingReport:
    """Verify the balancing condition on a basis of perp(tau) for every tau."""
    _require_complete(W.fan)
    violations = []
    for tau in W.fan.cones:
        for m in perp_basis(cone_sublattice(tau)):
            lhs, rhs = balancing_sides(W, tau, m)
            if lhs != rhs:
                violations.append((tau, m, lhs, rhs))
    return BalancingReport(ok=not violations, violations=violations)


def _assert_balanced(W: MinkowskiWeight, context: str) -> MinkowskiWeight:
    report = check_balancing(W)
    if not report.ok:
        tau, m, lhs, rhs = report.violations[0]
        raise BalancingError(
            f"{context} produced an unbalanced weight at {W.fan.cone_key(tau)}, m={m}: "
            f"{lhs.render()} != {rhs.render()}"
        )
    return W


def unit_weight(fan: Fan, algebra: GradedAlgebra, mixing: MixingMap) -> MinkowskiWeight:
    """Codimension-zero weight: the fundamental class on maximal cones."""
    _require_complete(fan)
    values = {c: algebra.one() for c in fan.maximal_cones}
    return MinkowskiWeight(fan, algebra, mixing, 0, values)


def module_action(c: AlgebraElement, W: MinkowskiWeight) -> MinkowskiWeight:
    """(c . W)(sigma) = c * W(sigma); shifts the codimension by deg(c)."""
    if not c.is_homogeneous():
        raise ValueError("module action needs a homogeneous class")
    degs = c.degrees()
    l = degs[0] if degs else 0
    values = {cone: c * el for cone, el in W.values.items()}
    return MinkowskiWeight(W.fan, W.algebra, W.mixing, W.codim + l, values)


def displacement_pairs(fan: Fan, tau: Cone, v):
    """Ordered pairs (sigma1, sigma2, index) entering the displacement rule
    at tau: both contain tau, codims add to codim(tau), and sigma1 still
    meets sigma2 + v.  The index is [N : N_sigma1 + N_sigma2]."""
    v = tuple(v)
    n = fan.ambient_rank
    out = []
    containing = fan.cones_containing(tau)
    for s1 in containing:
        for s2 in containing:
            if fan.codim(s1) + fan.codim(s2) != fan.codim(tau):
                continue
            if _shift_dim(s1, s2, v) < 0:
                continue
            gens = cone_sublattice(s1).basis + cone_sublattice(s2).basis
            idx = lattice_index(n, gens)
            if not isinstance(idx, int):
                raise NonGenericVector(
                    f"infinite index at pair {fan.cone_key(s1)}, {fan.cone_key(s2)};"
                    " displacement vector is not generic"
                )
            out.append((s1, s2, idx))
    return out


def mw_product(W1: MinkowskiWeight, W2: MinkowskiWeight, v) -> MinkowskiWeight:
    """Fan displacement product of two Minkowski weights."""
    if W1.fan != W2.fan or W1.algebra != W2.algebra or W1.mixing != W2.mixing:
        raise ValueError("weights live on different bundles")
    fan = W1.fan
    _require_complete(fan)
    v = tuple(v)
    if not is_generic_diagonal(fan, v):
        raise NonGenericVector(f"displacement vector {v} failed certification")
    algebra = W1.algebra
    values = {}
    for tau in fan.cones:
        total = algebra.zero()
        for s1, s2, idx in displacement_pairs(fan, tau, v):
            term = W1.value(s1) * W2.value(s2)
            if not term.is_zero():
                total = total + term * idx
        if not total.is_zero():
            values[tau] = total
    product = MinkowskiWeight(fan, algebra, W1.mixing, W1.codim + W2.codim, values)
    return _assert_balanced(product, "mw_product")


def diagonal_class(fan: Fan, tau: Cone, v):
    """Displacement expression for the diagonal class over a cone: ordered
    pairs (sigma1, sigma2, coefficient)."""
    _require_complete(fan)
    v = tuple(v)
    if not is_generic_diagonal(fan, v):
        raise NonGenericVector(f"displacement vector {v} failed certification")
    if tau not in set(fan.cones):
        raise ValueError("tau not in fan")
    return displacement_pairs(fan, tau, v)


@dataclass
class StratumClassSum:
    """Integer combination of stratum classes of a bundle over a fan."""

    fan: Fan
    terms: dict  # Cone -> positive int

    def __eq__(self, other):
        return (
            isinstance(other, StratumClassSum)
            and self.fan == other.fan
            and self.terms == other.terms
        )


def subbundle_class(fan: Fan, N: Sublattice, v) -> StratumClassSum:
    """Class of the rank-N toric subbundle as a combination of strata.

    The support is the set of cones meeting span(N) + v in one point; the
    coefficient on such a cone is the index [ambient : N_cone + N].
    """
    v = tuple(v)
    result = sigma_v_set(fan, N, v)
    if not result.generic:
        bad = result.offending[0]
        raise NonGenericVector(
            f"vector {v} is not generic for the sublattice: cone "
            f"{fan.cone_key(bad)} has dimension {bad.dim}, expected {fan.ambient_rank - N.rank}"
        )
    terms = {}
    for cone in result.cones:
        gens = cone_sublattice(cone).basis + N.basis
        idx = lattice_index(fan.ambient_rank, gens)
        if not isinstance(idx, int):
            raise NonGenericVector(f"infinite index at cone {fan.cone_key(cone)}")
        terms[cone] = idx
    return StratumClassSum(fan, terms)
