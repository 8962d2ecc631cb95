"""Acceptance gate: the golden worked examples, bit-exact, zero tolerance.

Each criterion prints one PASS line (run with -s to see them); any failure
fails the corresponding test.
"""

import itertools
import json
import random
from fractions import Fraction

import pytest

import torbun as tb
from torbun.cli import main
from torbun.equivariant import cone_equivariant_multiplicity
from torbun.lattice import mat_mul, smith_normal_form
from torbun.polynomials import LinearFraction, Polynomial

from conftest import FIXTURES
from test_equivariant import random_compatible_pp
from test_lattice import coset_count
from test_weights import random_dual_weight


def x(i, n=2):
    return Polynomial.variable(n, i)


def lf_inv(*forms, n=2, scale=1):
    return LinearFraction.inverse_of_product(n, forms, scale=Fraction(scale))


def table_of(fan, weight):
    return {fan.cone_key(c): weight.value(c) for c in fan.cones if not weight.value(c).is_zero()}


@pytest.fixture(scope="module")
def duals(f1_fan, mixing):
    return {name: tb.poincare_dual_mw(f1_fan, mixing, rays) for name, rays in
            [("1", []), ("D1", [0]), ("D2", [1]), ("D3", [2]), ("D4", [3])]}


def test_criterion_01_divisor_relations(capsys):
    code = main(["presentation", str(FIXTURES / "f1_bundle.json"), "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    origin_relations = [
        r["relation"] for r in doc["outputs"]["relations"] if r["tau"] == "[]"
    ]
    assert origin_relations == ["D1 + D2 - D4 = p*a1", "D2 + D3 - D4 = p*a2"]
    print("criterion 1: PASS - divisor relations emitted with exact symbols")


def test_criterion_02_dual_weight_tables(f1_fan, duals, base_algebra, a1, a2):
    one = base_algebra.one()
    assert table_of(f1_fan, duals["D1"]) == {
        (1,): one,
        (3,): one,
        (0, 1): a1 - a2,
        (0, 3): a1 - a2,
    }
    assert table_of(f1_fan, duals["D2"]) == {
        (0,): one,
        (1,): -one,
        (2,): one,
        (0, 1): a2,
        (1, 2): a1,
    }
    # nine cone values each, zero on every other cone, checked exactly
    for name in ("D1", "D2"):
        assert len(f1_fan.cones) == 9
    print("criterion 2: PASS - dual weights reproduce both published tables")


def test_criterion_03_balancing(f1_fan, duals, base_algebra, mixing, a1, a2):
    tau2 = f1_fan.cone_by_ray_indices([1])
    lhs, rhs = tb.balancing_sides(duals["D2"], tau2, (1, -1))
    assert lhs == a2 - a1 and rhs == a2 - a1
    unit = tb.unit_weight(f1_fan, base_algebra, mixing)
    product = tb.mw_product(duals["D1"], duals["D2"], (2, 1))
    for W in (duals["D1"], duals["D2"], unit, product):
        assert tb.check_balancing(W).ok
    print("criterion 3: PASS - balancing spot check and full suite")


def test_criterion_04_product_rule(f1_fan, duals, base_algebra, a1, a2):
    # the value on the diagonal ray is pinned by balancing at the origin with
    # m = e2: W(ray2) + W(ray3) - W(ray4) = a2 * W(origin), so W(ray2) = a2
    product = tb.mw_product(duals["D1"], duals["D2"], (2, 1))
    one = base_algebra.one()
    assert table_of(f1_fan, product) == {
        (): one,
        (0,): a1 - a2,
        (1,): a2,
        (0, 1): a2 * (a1 - a2),
    }
    for v in [(3, 1), (1, 2), (5, 2)]:
        assert tb.is_generic_diagonal(f1_fan, v)
        assert tb.mw_product(duals["D1"], duals["D2"], v) == product
    assert main(["mw-product", str(FIXTURES / "f1_weights.json"), "--oracle"]) == 0
    print("criterion 4: PASS - displacement product table, three more vectors agree")


def test_criterion_05_oracle_equivalence(f1_fan, mixing, duals):
    names = ["1", "D1", "D2", "D3", "D4"]
    rays = {"1": [], "D1": [0], "D2": [1], "D3": [2], "D4": [3]}
    count = 0
    for n1, n2 in itertools.combinations_with_replacement(names, 2):
        lhs = tb.mw_product(duals[n1], duals[n2], (2, 1))
        rhs = tb.poincare_dual_mw(f1_fan, mixing, rays[n1] + rays[n2])
        assert lhs == rhs, (n1, n2)
        count += 1
    assert count == 15
    print("criterion 5: PASS - 15 displacement products equal ring-oracle duals")


def test_criterion_06_equivariant_multiplicities(f1_fan):
    e = lambda s, t: tb.equivariant_multiplicity(
        f1_fan, f1_fan.cone_by_ray_indices(s), f1_fan.cone_by_ray_indices(t)
    )
    assert e([0, 1], []) == lf_inv((1, -1), (0, 1))
    assert e([0, 1], [0]) == lf_inv((0, 1))
    assert e([0, 1], [1]) == lf_inv((1, -1))
    assert e([1, 2], []) == lf_inv((1, 0), (-1, 1))
    assert e([1, 2], [1]) == lf_inv((-1, 1))
    assert e([1, 2], [2]) == lf_inv((1, 0))
    print("criterion 6: PASS - all six equivariant multiplicities in canonical form")


def test_criterion_07_residues_and_limit(f1_fan, mixing, base_algebra, a1, a2):
    s12 = f1_fan.cone_by_ray_indices([0, 1])
    s23 = f1_fan.cone_by_ray_indices([1, 2])
    f = tb.PiecewisePolynomial(f1_fan, 2, {s12: x(1) * x(1), s23: x(0) * x(0)})
    r = lambda t: tb.residue_sum(f, f1_fan.cone_by_ray_indices(t))
    assert r([]) == Polynomial.constant(2, -1)
    assert r([0]) == x(1)
    assert r([1]) == -x(0) - x(1)
    assert r([2]) == x(0)
    assert r([0, 1]) == x(1) * x(1)
    assert r([1, 2]) == x(0) * x(0)
    W = tb.pp_to_mw(f, mixing)
    one = base_algebra.one()
    assert table_of(f1_fan, W) == {
        (): -one,
        (0,): a2,
        (1,): -a1 - a2,
        (2,): a1,
        (0, 1): a2 * a2,
        (1, 2): a1 * a1,
    }
    assert W == tb.poincare_dual_mw(f1_fan, mixing, [1, 1])
    assert main(["pp-to-mw", str(FIXTURES / "f1_piecewise.json")]) == 0
    assert main(["residue", str(FIXTURES / "f1_piecewise.json")]) == 0
    print("criterion 7: PASS - residue sums, limit weight, and duality to D2^2")


def test_criterion_08_singular_and_3d_multiplicities():
    z2 = tb.zero_cone(2)
    singular = cone_equivariant_multiplicity(tb.cone_from_rays(2, [(1, 0), (1, 2)]), z2)
    assert singular == lf_inv((0, 1), (2, -1), scale=Fraction(1, 2))
    left = cone_equivariant_multiplicity(tb.cone_from_rays(2, [(1, 0), (1, 1)]), z2)
    right = cone_equivariant_multiplicity(tb.cone_from_rays(2, [(1, 1), (1, 2)]), z2)
    assert left + right == singular
    z3 = tb.zero_cone(3)
    orders = [
        [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)],
        [(0, 1, 1), (1, 0, 0), (0, 1, 0), (1, 0, 1)],
        [(1, 0, 1), (0, 1, 1), (0, 1, 0), (1, 0, 0)],
    ]
    values = {
        cone_equivariant_multiplicity(tb.cone_from_rays(3, rays), z3) for rays in orders
    }
    assert len(values) == 1
    assert (
        main(["equiv-mult", str(FIXTURES / "singular_fan.json"), "--sigma", "[0,1]", "--tau", "[]"])
        == 0
    )
    print("criterion 8: PASS - singular-cone formula and triangulation independence")


def test_criterion_09_property_suites(f1_fan, base_algebra, mixing, duals):
    rng = random.Random(20260808)
    # every constructed weight balances
    unit = tb.unit_weight(f1_fan, base_algebra, mixing)
    constructed = [unit, duals["D1"], duals["D2"],
                   tb.mw_product(duals["D1"], duals["D2"], (2, 1)),
                   tb.module_action(base_algebra.basis_element("a1"), unit)]
    constructed += [random_dual_weight(f1_fan, mixing, rng) for _ in range(20)]
    for W in constructed:
        assert tb.check_balancing(W).ok
    # the unit weight is a two-sided product identity
    for W in (duals["D1"], duals["D2"], duals["D3"]):
        assert tb.mw_product(unit, W, (2, 1)) == W
        assert tb.mw_product(W, unit, (2, 1)) == W
    # product commutativity on 50 randomized balanced weights
    pool = [random_dual_weight(f1_fan, mixing, rng) for _ in range(50)]
    for i in range(50):
        Wa, Wb = pool[i], pool[(i * 7 + 3) % 50]
        assert tb.mw_product(Wa, Wb, (2, 1)) == tb.mw_product(Wb, Wa, (2, 1))
    # residue sums of 50 random compatible piecewise polynomials of degree <= 2
    for _ in range(50):
        f = random_compatible_pp(f1_fan, rng, rng.randint(0, 2))
        assert tb.check_pp(f) == []
        for cone in f1_fan.cones:
            tb.residue_sum(f, cone)
    # 500 random integer matrices of rank <= 4: transform, chain, saturation
    for _ in range(500):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(m))
        S, U, V = smith_normal_form(A)
        assert mat_mul(mat_mul(U, A), V) == S
        diag = [S[i][i] for i in range(min(m, n))]
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert (a == 0 and b == 0) or b % a == 0 if a != 0 else b == 0
        sat = tb.saturated_span(n, A)
        assert tb.saturation(sat).same_lattice(sat)
        idx = tb.lattice_index(n, A)
        rank = sum(1 for d in diag if d != 0)
        if rank == n:
            prod = 1
            for d in diag[:n]:
                prod *= d
            assert idx == prod
            assert tb.lattice_index(n, sat.basis) == 1
        else:
            assert idx is tb.INFINITE
    print("criterion 9: PASS - balancing, identity, commutativity, residues, lattice invariants")


def test_criterion_10_subbundle_classes(p1p1_fan):
    diag = tb.subbundle_class(p1p1_fan, tb.Sublattice(2, ((1, 1),)), (1, 0))
    assert {p1p1_fan.cone_key(c): v for c, v in diag.terms.items()} == {(0,): 1, (3,): 1}
    skew = tb.subbundle_class(p1p1_fan, tb.Sublattice(2, ((1, 2),)), (1, 0))
    got = {p1p1_fan.cone_key(c): v for c, v in skew.terms.items()}
    assert got == {(0,): 2, (3,): 1}
    # the index-2 coefficient against the brute-force coset count
    assert coset_count([(1, 0), (1, 2)], bound=7) == 2
    assert coset_count([(0, -1), (1, 2)], bound=7) == 1
    assert main(["subbundle", str(FIXTURES / "p1p1_diagonal.json")]) == 0
    assert main(["subbundle", str(FIXTURES / "p1p1_skew.json")]) == 0
    print("criterion 10: PASS - subbundle classes with the index-2 coefficient")
