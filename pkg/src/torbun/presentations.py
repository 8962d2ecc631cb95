"""Presentations of stratum-class modules and the intersection ring oracle.

The homology presentation lists one generator per cone and one relation per
(cone, perp character).  On a smooth complete fan, products of fibrewise
divisors reduce to a normal form in stratum classes by squarefree lookup and
elimination of repeated factors through the linear relations; pushing
forward to the base turns ring classes into Minkowski weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraElement, GradedAlgebra, MixingMap
from .errors import OracleRequiresSmoothComplete
from .fans import Cone, Fan, cone_sublattice, is_complete
from .lattice import Vec, dot, invert_rational, normal_generator, perp_basis
from .weights import MinkowskiWeight, _assert_balanced


@dataclass
class Relation:
    tau: Cone
    m: Vec
    lhs: dict  # Cone -> int, over cones one dimension up from tau
    rhs: AlgebraElement
    equivariant_part: Optional[Vec] = None


@dataclass
class Presentation:
    generators: list  # (Cone, homological degree)
    relations: list  # Relation


def _relations_at(fan: Fan, mixing: MixingMap, tau: Cone, equivariant: bool):
    out = []
    for m in perp_basis(cone_sublattice(tau)):
        lhs = {}
        for sigma in fan.cones_containing(tau):
            if sigma.dim != tau.dim + 1:
                continue
            n_st = normal_generator(
                cone_sublattice(tau), cone_sublattice(sigma), sigma.interior_point()
            )
            c = dot(m, n_st)
            if c != 0:
                lhs[sigma] = c
        out.append(
            Relation(
                tau=tau,
                m=m,
                lhs=lhs,
                rhs=mixing.delta(m),
                equivariant_part=m if equivariant else None,
            )
        )
    return out


def homology_presentation(fan: Fan, mixing: MixingMap, algebra: GradedAlgebra = None) -> Presentation:
    """Generators [Y(tau)] and relations sum <m, n> [Y(sigma)] = delta(m).[Y(tau)]."""
    algebra = algebra or mixing.algebra
    dim_base = algebra.top_degree
    generators = [(c, dim_base + fan.codim(c)) for c in fan.cones]
    relations = []
    for tau in fan.cones:
        relations.extend(_relations_at(fan, mixing, tau, equivariant=False))
    return Presentation(generators, relations)


def equivariant_presentation(fan: Fan, mixing: MixingMap, algebra: GradedAlgebra = None) -> Presentation:
    """Same generators; the right side gains the linear character itself."""
    algebra = algebra or mixing.algebra
    dim_base = algebra.top_degree
    generators = [(c, dim_base + fan.codim(c)) for c in fan.cones]
    relations = []
    for tau in fan.cones:
        relations.extend(_relations_at(fan, mixing, tau, equivariant=True))
    return Presentation(generators, relations)


class RingElement:
    """Normal form: integer-ring combination sum p*(class) . [Y(cone)]."""

    def __init__(self, fan: Fan, algebra: GradedAlgebra, terms=None):
        self.fan = fan
        self.algebra = algebra
        self.terms = {c: el for c, el in (terms or {}).items() if not el.is_zero()}

    def add_term(self, cone: Cone, el: AlgebraElement) -> "RingElement":
        terms = dict(self.terms)
        cur = terms.get(cone, self.algebra.zero())
        terms[cone] = cur + el
        return RingElement(self.fan, self.algebra, terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        out = self
        for c, el in other.terms.items():
            out = out.add_term(c, el)
        return out

    def scale(self, el) -> "RingElement":
        return RingElement(self.fan, self.algebra, {c: x * el for c, x in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.fan == other.fan
            and self.terms == other.terms
        )

    def __repr__(self):
        body = ", ".join(
            f"{self.fan.cone_key(c)}: {el.render()}"
            for c, el in sorted(self.terms.items(), key=lambda kv: self.fan.cone_sort_key(kv[0]))
        )
        return f"RingElement({body})"


def _require_oracle_fan(fan: Fan):
    if not is_complete(fan) or not fan.is_smooth():
        raise OracleRequiresSmoothComplete(
            "the intersection ring oracle needs a smooth complete fan"
        )


def _dual_character(fan: Fan, sigma_star: Cone, ray: Vec) -> Vec:
    """The character pairing to 1 with `ray` and to 0 with the other rays of
    the smooth maximal cone sigma_star."""
    mat = [[Fraction(c) for c in r] for r in sigma_star.rays]
    inv = invert_rational(mat)
    j = sigma_star.rays.index(ray)
    col = [inv[i][j] for i in range(len(inv))]
    assert all(c.denominator == 1 for c in col)
    return tuple(int(c) for c in col)


def reduce_product(fan: Fan, mixing: MixingMap, ray_indices, base: AlgebraElement = None) -> RingElement:
    """Normal form of p*(base) . prod(D_ray) in stratum classes.

    Squarefree monomials over a cone become that stratum; non-faces vanish;
    a repeated ray is eliminated by substituting its linear relation, chosen
    so the other rays of the smallest containing maximal cone drop out.
    """
    _require_oracle_fan(fan)
    algebra = mixing.algebra
    base = base if base is not None else algebra.one()
    cone_by_rayset = {frozenset(c.rays): c for c in fan.cones}
    max_cones = fan.maximal_cones
    result = RingElement(fan, algebra)
    # worklist of (sorted ray-index multiset, coefficient)
    work = [(tuple(sorted(ray_indices)), base)]
    while work:
        monomial, coeff = work.pop()
        if coeff.is_zero():
            continue
        rayset = frozenset(fan.rays[i] for i in monomial)
        cone = cone_by_rayset.get(rayset)
        if cone is None:
            continue  # non-face annihilates the product
        if len(set(monomial)) == len(monomial):
            result = result.add_term(cone, coeff)
            continue
        rep = next(i for i in monomial if monomial.count(i) > 1)
        rest = list(monomial)
        rest.remove(rep)
        rest = tuple(rest)
        sigma_star = next(s for s in max_cones if rayset <= set(s.rays))
        m = _dual_character(fan, sigma_star, fan.rays[rep])
        # D_rep = p*delta(m) - sum_{other rays} <m, u> D_other
        work.append((rest, coeff * mixing.delta(m)))
        for j, u in enumerate(fan.rays):
            if j == rep:
                continue
            c = dot(m, u)
            if c != 0:
                work.append((tuple(sorted(rest + (j,))), coeff * (-c)))
    return result


def pushforward_to_base(element: RingElement) -> AlgebraElement:
    """p_* of a normal form: only full-dimensional strata survive."""
    fan = element.fan
    out = element.algebra.zero()
    for cone, el in element.terms.items():
        if cone.dim == fan.ambient_rank:
            out = out + el
    return out


def poincare_dual_mw(
    fan: Fan, mixing: MixingMap, ray_indices, base: AlgebraElement = None
) -> MinkowskiWeight:
    """Minkowski weight of the ring class p*(base) . prod(D_ray):
    its value on a cone is the pushforward of the product with that stratum."""
    _require_oracle_fan(fan)
    algebra = mixing.algebra
    base = base if base is not None else algebra.one()
    base_degs = base.degrees()
    if len(base_degs) > 1:
        raise ValueError("base class must be homogeneous")
    codim = len(tuple(ray_indices)) + (base_degs[0] if base_degs else 0)
    values = {}
    for cone in fan.cones:
        stratum_rays = tuple(fan.rays.index(r) for r in cone.rays)
        nf = reduce_product(fan, mixing, tuple(ray_indices) + stratum_rays, base)
        val = pushforward_to_base(nf)
        if not val.is_zero():
            values[cone] = val
    W = MinkowskiWeight(fan, algebra, mixing, codim, values)
    return _assert_balanced(W, "poincare_dual_mw")
