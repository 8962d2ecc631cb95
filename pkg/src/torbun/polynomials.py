"""Sparse integer polynomials and rational functions with linear denominators.

Polynomial models elements of Sym M in coordinates x1..xn.  LinearFraction
models quotients whose denominator is a positive integer times a product of
primitive integer linear forms, kept in a canonical reduced shape so that
equality is literal equality of the parts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class Polynomial:
    """Multivariate polynomial with integer coefficients, stored sparsely."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms=None):
        self.num_vars = num_vars
        clean = {}
        for exps, c in (terms or {}).items():
            if c != 0:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, c: int) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "Polynomial":
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, coeffs) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, terms)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_homogeneous_of(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def linear_coefficients(self):
        """Coefficient vector of a linear form (degree <= 1, no constant)."""
        out = [0] * self.num_vars
        for e, c in self.terms.items():
            if sum(e) != 1:
                raise ValueError("not a linear form")
            out[e.index(1)] = c
        return tuple(out)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.num_vars, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.num_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.num_vars, {e: other * c for e, c in self.terms.items()})
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.num_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.num_vars, other)
        return isinstance(other, Polynomial) and self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def compose(self, substitutions) -> "Polynomial":
        """Substitute substitution[i] (a Polynomial) for variable i."""
        if len(substitutions) != self.num_vars:
            raise ValueError("wrong number of substitutions")
        nv = substitutions[0].num_vars if substitutions else 0
        out = Polynomial.zero(nv)
        for e, c in self.terms.items():
            term = Polynomial.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * substitutions[i] ** k
            out = out + term
        return out

    def evaluate(self, point):
        out = Fraction(0)
        for e, c in self.terms.items():
            val = Fraction(c)
            for x, k in zip(point, e):
                val *= Fraction(x) ** k
            out += val
        return out

    # -- rendering -----------------------------------------------------------

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.num_vars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.render()})"


def divide_exact(poly: Polynomial, form):
    """Exact quotient poly / linear_form(form), or None if not divisible.

    `form` is a primitive integer coefficient vector.  By Gauss's lemma the
    quotient of an integer polynomial by a primitive form is integral
    whenever the division is exact over Q.
    """
    n = poly.num_vars
    pivot = next((i for i, c in enumerate(form) if c != 0), None)
    if pivot is None:
        raise ValueError("zero form")
    c_piv = form[pivot]
    rest = list(form)
    rest[pivot] = 0
    rest_terms = {}
    for i, c in enumerate(rest):
        if c != 0:
            e = [0] * n
            e[i] = 1
            rest_terms[tuple(e)] = Fraction(c)

    R = {e: Fraction(c) for e, c in poly.terms.items()}
    Q: dict[tuple, Fraction] = {}

    def top_in_pivot(terms):
        k = -1
        for e in terms:
            if e[pivot] > k:
                k = e[pivot]
        return k

    while R:
        k = top_in_pivot(R)
        if k < 1:
            return None
        moved = {}
        for e, c in list(R.items()):
            if e[pivot] == k:
                moved[e] = c
                del R[e]
        # quotient chunk: (moved / c_piv) with pivot exponent lowered by one
        chunk = {}
        for e, c in moved.items():
            e2 = list(e)
            e2[pivot] -= 1
            chunk[tuple(e2)] = c / c_piv
        for e, c in chunk.items():
            Q[e] = Q.get(e, 0) + c
            if Q[e] == 0:
                del Q[e]
        # R -= chunk * rest_part_of_form
        for e1, c1 in chunk.items():
            for e2, c2 in rest_terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                R[e] = R.get(e, Fraction(0)) - c1 * c2
                if R[e] == 0:
                    del R[e]
    out = {}
    for e, c in Q.items():
        if c.denominator != 1:
            return None
        out[e] = int(c)
    return Polynomial(n, out)


def _primitive_form(coeffs):
    """Normalize a rational coefficient vector to (factor, primitive form)
    with the form's first nonzero entry positive and factor in Q."""
    fr = [Fraction(c) for c in coeffs]
    if all(c == 0 for c in fr):
        raise ValueError("zero linear form")
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    ints = [a // g for a in ints]
    sign = 1
    for a in ints:
        if a != 0:
            sign = 1 if a > 0 else -1
            break
    ints = [sign * a for a in ints]
    factor = Fraction(sign * g, lcm)
    return factor, tuple(ints)


class LinearFraction:
    """numerator / (content * product of primitive linear forms), canonical.

    Canonical means: forms are primitive with positive leading coefficient,
    no form divides the numerator exactly, and gcd(content, numerator
    coefficients) = 1 with content > 0.
    """

    __slots__ = ("num", "den", "content")

    def __init__(self, num: Polynomial, den=None, content: int = 1, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den or {}
            self.content = content
            return
        if content == 0:
            raise ZeroDivisionError("zero content")
        den = dict(den or {})
        if content < 0:
            num = -num
            content = -content
        if num.is_zero():
            self.num, self.den, self.content = num, {}, 1
            return
        changed = True
        while changed:
            changed = False
            for form, mult in list(den.items()):
                while mult > 0:
                    q = divide_exact(num, form)
                    if q is None:
                        break
                    num = q
                    mult -= 1
                    changed = True
                if mult == 0:
                    del den[form]
                else:
                    den[form] = mult
        g = gcd(num.content(), content)
        if g > 1:
            num = Polynomial(num.num_vars, {e: c // g for e, c in num.terms.items()})
            content //= g
        self.num = num
        self.den = den
        self.content = content

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "LinearFraction":
        return cls(Polynomial.zero(num_vars))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LinearFraction":
        return cls(p)

    @classmethod
    def inverse_of_product(cls, num_vars: int, forms, scale=Fraction(1)) -> "LinearFraction":
        """1 / (scale * prod(forms)) with rational coefficient vectors."""
        content = Fraction(scale)
        den: dict[tuple, int] = {}
        for coeffs in forms:
            factor, prim = _primitive_form(coeffs)
            content *= factor
            den[prim] = den.get(prim, 0) + 1
        num = Polynomial.constant(num_vars, content.denominator)
        return cls(num, den, content.numerator)

    # -- queries -------------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self.num.num_vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den and self.content == 1

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.num

    def degree(self):
        if self.num.is_zero():
            return None
        return self.num.degree() - sum(self.den.values())

    def __eq__(self, other):
        return (
            isinstance(other, LinearFraction)
            and self.num == other.num
            and self.den == other.den
            and self.content == other.content
        )

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items()), self.content))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LinearFraction") -> "LinearFraction":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        forms = set(self.den) | set(other.den)
        target = {f: max(self.den.get(f, 0), other.den.get(f, 0)) for f in forms}
        content = self.content * other.content // gcd(self.content, other.content)
        ns = self.num * (content // self.content)
        no = other.num * (content // other.content)
        for f, mult in target.items():
            fpoly = Polynomial.linear_form(f)
            ns = ns * fpoly ** (mult - self.den.get(f, 0))
            no = no * fpoly ** (mult - other.den.get(f, 0))
        return LinearFraction(ns + no, target, content)

    def __neg__(self):
        return LinearFraction(-self.num, dict(self.den), self.content)

    def __sub__(self, other):
        return self + (-other)

    def poly_mul(self, p: Polynomial) -> "LinearFraction":
        return LinearFraction(self.num * p, dict(self.den), self.content)

    def scalar_mul(self, c) -> "LinearFraction":
        c = Fraction(c)
        return LinearFraction(self.num * c.numerator, dict(self.den), self.content * c.denominator)

    # -- rendering -----------------------------------------------------------

    def render(self, names=None) -> str:
        num = self.num.render(names)
        if self.is_polynomial():
            return num
        factors = []
        if self.content != 1:
            factors.append(str(self.content))
        vnames = names or [f"x{i + 1}" for i in range(self.num_vars)]
        for form in sorted(self.den):
            text = Polynomial.linear_form(form).render(vnames)
            if len([c for c in form if c != 0]) > 1:
                text = f"({text})"
            mult = self.den[form]
            factors.extend([text] * mult)
        den = " * ".join(factors)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num} / ({den})" if len(factors) > 1 else f"{num} / {den}"

    def __repr__(self):
        return f"LinearFraction({self.render()})"
