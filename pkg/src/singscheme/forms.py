"""Exact algebra of homogeneous polynomial differential forms on C^{n+1}.

Forms with polynomial coefficients represent twisted projective forms: a
k-form with homogeneous coefficients of degree d+1 satisfying i_R w = 0,
where R is the radial field, descends to P^n. The module supplies wedge,
interior products, the iterated volume contraction that builds such forms
from vector fields, and extraction of the coefficient ideal cutting out
the degeneracy locus. All arithmetic is exact rational.

Monomials are exponent vectors; forms map strictly increasing index tuples
to polynomials, so the antisymmetric representation is canonical and
equality is structural.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


@dataclass(frozen=True)
class HomogeneousPoly:
    """Sparse homogeneous polynomial in z0..z_{nvars-1} over Q.

    terms is sorted descending by exponent vector; the zero polynomial has
    no terms and reports degree -1.
    """

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, nvars: int, coeffs: dict) -> "HomogeneousPoly":
        clean: dict[tuple[int, ...], Fraction] = {}
        for expo, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            expo = tuple(expo)
            if len(expo) != nvars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent vector {expo} for {nvars} variables")
            clean[expo] = clean.get(expo, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        degrees = {sum(e) for e in clean}
        if len(degrees) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degrees)}")
        terms = tuple(sorted(clean.items(), reverse=True))
        return cls(nvars, terms)

    @classmethod
    def zero(cls, nvars: int) -> "HomogeneousPoly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, c) -> "HomogeneousPoly":
        return cls.from_dict(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "HomogeneousPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        expo = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, ((expo, Fraction(1)),))

    @classmethod
    def monomial(cls, nvars: int, expo, coeff=1) -> "HomogeneousPoly":
        return cls.from_dict(nvars, {tuple(expo): Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else -1

    def as_dict(self) -> dict:
        return dict(self.terms)

    def _check_ring(self, other: "HomogeneousPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials in different variable counts")

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._check_ring(other)
        if not self.is_zero and not other.is_zero and self.degree != other.degree:
            raise ValueError("sum of different degrees is not homogeneous")
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return HomogeneousPoly.from_dict(self.nvars, acc)

    def __neg__(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomogeneousPoly":
        if isinstance(other, HomogeneousPoly):
            self._check_ring(other)
            acc: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms:
                for e2, c2 in other.terms:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, Fraction(0)) + c1 * c2
            return HomogeneousPoly.from_dict(self.nvars, acc)
        c = Fraction(other)
        if c == 0:
            return HomogeneousPoly.zero(self.nvars)
        return HomogeneousPoly(self.nvars, tuple((e, c * v) for e, v in self.terms))

    def __rmul__(self, other) -> "HomogeneousPoly":
        return self * other

    def content_normalized(self) -> "HomogeneousPoly":
        """Scale so coefficients are coprime integers with positive lead."""
        if self.is_zero:
            return self
        num = 0
        den = 1
        for _, c in self.terms:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        scale = Fraction(den, num)
        if self.terms[0][1] < 0:
            scale = -scale
        return self * scale

    def __str__(self) -> str:
        return poly_str(self)


@dataclass(frozen=True)
class PolyKForm:
    """Polynomial k-form: strictly increasing index tuples -> coefficients.

    All nonzero coefficients share one polynomial degree; poly_degree is -1
    for the zero form.
    """

    nvars: int
    k: int
    coeffs: tuple[tuple[tuple[int, ...], HomogeneousPoly], ...]

    @classmethod
    def from_dict(cls, nvars: int, k: int, coeffs: dict) -> "PolyKForm":
        if not 0 <= k <= nvars:
            raise ValueError(f"form degree {k} out of range for {nvars} variables")
        clean: dict[tuple[int, ...], HomogeneousPoly] = {}
        for idx, poly in coeffs.items():
            idx = tuple(idx)
            if len(idx) != k or list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {k}")
            if any(i < 0 or i >= nvars for i in idx):
                raise ValueError(f"index tuple {idx} out of range")
            if poly.nvars != nvars:
                raise ValueError("coefficient in wrong ring")
            if poly.is_zero:
                continue
            clean[idx] = clean.get(idx, HomogeneousPoly.zero(nvars)) + poly
        clean = {i: p for i, p in clean.items() if not p.is_zero}
        degrees = {p.degree for p in clean.values()}
        if len(degrees) > 1:
            raise ValueError(f"mixed coefficient degrees {sorted(degrees)}")
        return cls(nvars, k, tuple(sorted(clean.items())))

    @classmethod
    def zero(cls, nvars: int, k: int) -> "PolyKForm":
        return cls.from_dict(nvars, k, {})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def poly_degree(self) -> int:
        return self.coeffs[0][1].degree if self.coeffs else -1

    def coefficient(self, indices) -> HomogeneousPoly:
        idx = tuple(indices)
        for i, p in self.coeffs:
            if i == idx:
                return p
        return HomogeneousPoly.zero(self.nvars)

    def __add__(self, other: "PolyKForm") -> "PolyKForm":
        if (self.nvars, self.k) != (other.nvars, other.k):
            raise ValueError("forms of different shape")
        acc = {i: p for i, p in self.coeffs}
        for i, p in other.coeffs:
            acc[i] = acc.get(i, HomogeneousPoly.zero(self.nvars)) + p
        return PolyKForm.from_dict(self.nvars, self.k, acc)

    def __neg__(self) -> "PolyKForm":
        return PolyKForm(self.nvars, self.k, tuple((i, -p) for i, p in self.coeffs))

    def __sub__(self, other: "PolyKForm") -> "PolyKForm":
        return self + (-other)

    def scale(self, c) -> "PolyKForm":
        c = Fraction(c)
        if c == 0:
            return PolyKForm.zero(self.nvars, self.k)
        return PolyKForm(self.nvars, self.k, tuple((i, p * c) for i, p in self.coeffs))

    def __str__(self) -> str:
        return form_str(self)


@dataclass(frozen=True)
class PolyVectorField:
    """Vector field sum f_i d/dz_i with homogeneous components of one degree."""

    nvars: int
    components: tuple[HomogeneousPoly, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.nvars:
            raise ValueError("need one component per variable")
        degrees = {c.degree for c in self.components if not c.is_zero}
        if len(degrees) > 1:
            raise ValueError(f"mixed component degrees {sorted(degrees)}")
        for c in self.components:
            if c.nvars != self.nvars:
                raise ValueError("component in wrong ring")

    @property
    def degree(self) -> int:
        for c in self.components:
            if not c.is_zero:
                return c.degree
        return -1

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)


def radial_field(nvars: int) -> PolyVectorField:
    """R = z0 d/dz0 + ... + z_n d/dz_n."""
    return PolyVectorField(
        nvars, tuple(HomogeneousPoly.variable(nvars, i) for i in range(nvars))
    )


def constant_field(nvars: int, vector) -> PolyVectorField:
    """Field with constant components, e.g. a coordinate direction."""
    return PolyVectorField(
        nvars, tuple(HomogeneousPoly.constant(nvars, c) for c in vector)
    )


def volume_form(nvars: int) -> PolyKForm:
    """dz0 ^ dz1 ^ ... ^ dz_n."""
    return PolyKForm.from_dict(
        nvars, nvars, {tuple(range(nvars)): HomogeneousPoly.constant(nvars, 1)}
    )


@dataclass(frozen=True)
class GradedIdeal:
    """Ideal given by homogeneous generators, possibly of mixed degrees."""

    nvars: int
    generators: tuple[HomogeneousPoly, ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.is_zero:
                raise ValueError("generators must be nonzero")
            if g.nvars != self.nvars:
                raise ValueError("generator in wrong ring")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]):
    """Sorted union and shuffle parity; None if indices collide."""
    if set(left) & set(right):
        return None, 0
    inversions = sum(1 for i in left for j in right if i > j)
    merged = tuple(sorted(left + right))
    return merged, (-1) ** inversions


def wedge(a: PolyKForm, b: PolyKForm) -> PolyKForm:
    if a.nvars != b.nvars:
        raise ValueError("forms in different variable counts")
    if a.k + b.k > a.nvars:
        raise ValueError(f"wedge degree {a.k}+{b.k} exceeds {a.nvars}")
    acc: dict[tuple[int, ...], HomogeneousPoly] = {}
    zero = HomogeneousPoly.zero(a.nvars)
    for left, f in a.coeffs:
        for right, g in b.coeffs:
            merged, sign = _merge_sign(left, right)
            if merged is None:
                continue
            acc[merged] = acc.get(merged, zero) + (f * g) * sign
    return PolyKForm.from_dict(a.nvars, a.k + b.k, acc)


def contract(form: PolyKForm, field: PolyVectorField) -> PolyKForm:
    """Interior product i_X(form)."""
    if form.nvars != field.nvars:
        raise ValueError("form and field in different variable counts")
    if form.k < 1:
        raise ValueError("cannot contract a 0-form")
    acc: dict[tuple[int, ...], HomogeneousPoly] = {}
    zero = HomogeneousPoly.zero(form.nvars)
    for indices, poly in form.coeffs:
        for pos, idx in enumerate(indices):
            comp = field.components[idx]
            if comp.is_zero:
                continue
            rest = indices[:pos] + indices[pos + 1 :]
            acc[rest] = acc.get(rest, zero) + (poly * comp) * ((-1) ** pos)
    return PolyKForm.from_dict(form.nvars, form.k - 1, acc)


def volume_contract_chain(n: int, fields) -> PolyKForm:
    """i_{fields[0]} i_{fields[1]} ... i_{fields[-1]} i_R Omega on C^{n+1}.

    The radial contraction is innermost, then the fields in reverse list
    order, so fields reads in the same outermost-first order the iterated
    product is written. Contractions with different fields anticommute, so
    the result is annihilated by R and by every field used; both closure
    identities are verified on the output.
    """
    fields = list(fields)
    if len(fields) > n:
        raise ValueError(f"at most {n} fields on C^{n + 1}")
    nvars = n + 1
    for f in fields:
        if f.nvars != nvars:
            raise ValueError("field in wrong ring")
    radial = radial_field(nvars)
    result = contract(volume_form(nvars), radial)
    for f in reversed(fields):
        result = contract(result, f)
    if result.k >= 1 and not result.is_zero:
        assert contract(result, radial).is_zero
        for f in fields:
            assert contract(result, f).is_zero
    return result


def coefficient_ideal(form: PolyKForm) -> GradedIdeal:
    """Ideal of all coefficient polynomials; cuts out the locus where the
    form vanishes. Generators are content-normalized and deduplicated."""
    if form.is_zero:
        raise ValueError("zero form has no coefficient ideal")
    seen: list[HomogeneousPoly] = []
    for _, poly in form.coeffs:
        g = poly.content_normalized()
        if g not in seen:
            seen.append(g)
    return GradedIdeal(form.nvars, tuple(seen))


def _det(matrix: list[list[HomogeneousPoly]], nvars: int) -> HomogeneousPoly:
    m = len(matrix)
    if m == 1:
        return matrix[0][0]
    acc = HomogeneousPoly.zero(nvars)
    for i in range(m):
        if matrix[i][0].is_zero:
            continue
        minor = [row[1:] for j, row in enumerate(matrix) if j != i]
        term = matrix[i][0] * _det(minor, nvars)
        acc = acc + (term if i % 2 == 0 else -term)
    return acc


def minors_ideal(one_forms) -> GradedIdeal:
    """Ideal of maximal minors of the coefficient matrix of m one-forms.

    The m x m minors are exactly the coefficients of the m-fold wedge of
    the forms (verified on every call), so for an injective system this is
    the degeneracy ideal. Linearly dependent forms give the zero ideal,
    reported with a warning.
    """
    one_forms = list(one_forms)
    if not one_forms:
        raise ValueError("need at least one form")
    nvars = one_forms[0].nvars
    m = len(one_forms)
    if m > nvars - 1:
        raise ValueError(f"at most {nvars - 1} forms on C^{nvars}")
    for f in one_forms:
        if f.k != 1 or f.nvars != nvars:
            raise ValueError("expected 1-forms in one ring")

    from itertools import combinations

    minors: list[HomogeneousPoly] = []
    for rows in combinations(range(nvars), m):
        matrix = [[f.coefficient((r,)) for f in one_forms] for r in rows]
        d = _det(matrix, nvars)
        if not d.is_zero:
            g = d.content_normalized()
            if g not in minors:
                minors.append(g)

    wedge_form = one_forms[0]
    for f in one_forms[1:]:
        wedge_form = wedge(wedge_form, f)
    wedge_gens = set()
    for _, poly in wedge_form.coeffs:
        wedge_gens.add(poly.content_normalized())
    assert set(minors) == wedge_gens

    if not minors:
        warnings.warn("degenerate system: all maximal minors vanish")
        return GradedIdeal(nvars, ())
    return GradedIdeal(nvars, tuple(minors))


def distribution_degree_of_form(form: PolyKForm, n: int) -> int:
    """Degree d of the twisted projective form: coefficients have degree
    d+1 once the radial condition i_R(form) = 0 holds."""
    if form.nvars != n + 1:
        raise ValueError(f"form lives on C^{form.nvars}, not C^{n + 1}")
    if form.is_zero:
        raise ValueError("zero form")
    if not contract(form, radial_field(form.nvars)).is_zero:
        raise ValueError("radial contraction is nonzero; form does not descend to P^n")
    e = form.poly_degree
    if e < 1:
        raise ValueError("coefficients must have positive degree")
    return e - 1


class FormParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|dz\d+|z\d+|[+\-*^()])")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FormParseError(f"unexpected character at position {pos}: {text[pos]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    """Terms are <poly factors> <dz chain>, joined by + and -. Polynomial
    factors are numbers, variables with optional ^power, and parenthesized
    sums; * between factors is optional. dz indices wedge with ^."""

    def __init__(self, tokens, nvars: int):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, message: str):
        raise FormParseError(f"{message} (token {self.pos})")

    def parse_form(self) -> PolyKForm:
        chains: dict[tuple[int, ...], HomogeneousPoly] = {}
        k = None
        first = True
        while True:
            sign = 1
            tok = self.peek()
            if tok in ("+", "-"):
                self.next()
                sign = -1 if tok == "-" else 1
            elif not first:
                self.fail(f"expected + or - before {tok!r}")
            elif tok is None:
                self.fail("empty input")
            poly, indices = self.parse_term()
            if k is None:
                k = len(indices) if indices is not None else 0
            term_k = len(indices) if indices is not None else 0
            if term_k != k:
                self.fail(f"mixed form degrees {k} and {term_k}")
            if indices is not None:
                canon = self._canonical_indices(indices)
                if canon is not None:
                    idx, parity = canon
                    poly = poly * (sign * parity)
                    zero = HomogeneousPoly.zero(self.nvars)
                    chains[idx] = chains.get(idx, zero) + poly
            else:
                zero = HomogeneousPoly.zero(self.nvars)
                chains[()] = chains.get((), zero) + poly * sign
            first = False
            if self.peek() is None:
                break
        return PolyKForm.from_dict(self.nvars, k, chains)

    @staticmethod
    def _canonical_indices(indices):
        if len(set(indices)) != len(indices):
            return None  # repeated dz: the term is zero
        order = sorted(range(len(indices)), key=lambda i: indices[i])
        inversions = sum(
            1
            for a in range(len(order))
            for b in range(a + 1, len(order))
            if order[a] > order[b]
        )
        return tuple(sorted(indices)), (-1) ** inversions

    def parse_term(self):
        poly = None
        indices = None
        while True:
            tok = self.peek()
            if tok == "*":
                self.next()
                continue
            if tok is None or tok in ("+", "-", ")"):
                break
            if tok.startswith("dz"):
                indices = self.parse_chain()
                break
            factor = self.parse_factor()
            poly = factor if poly is None else poly * factor
        if poly is None and indices is None:
            self.fail("empty term")
        if poly is None:
            poly = HomogeneousPoly.constant(self.nvars, 1)
        return poly, indices

    def parse_factor(self) -> HomogeneousPoly:
        tok = self.next()
        if tok == "(":
            poly = self.parse_poly_sum()
            if self.next() != ")":
                self.fail("missing )")
            return poly
        if tok is not None and re.fullmatch(r"\d+(/\d+)?", tok):
            return HomogeneousPoly.constant(self.nvars, Fraction(tok))
        if tok is not None and re.fullmatch(r"z\d+", tok):
            i = int(tok[1:])
            if i >= self.nvars:
                self.fail(f"variable z{i} out of range for {self.nvars} variables")
            poly = HomogeneousPoly.variable(self.nvars, i)
            if self.peek() == "^":
                self.next()
                power = self.next()
                if power is None or not re.fullmatch(r"\d+", power):
                    self.fail("expected an integer power")
                result = HomogeneousPoly.constant(self.nvars, 1)
                for _ in range(int(power)):
                    result = result * poly
                return result
            return poly
        self.fail(f"unexpected token {tok!r}")

    def parse_poly_sum(self) -> HomogeneousPoly:
        total = None
        first = True
        while True:
            sign = 1
            tok = self.peek()
            if tok in ("+", "-"):
                self.next()
                sign = -1 if tok == "-" else 1
            elif not first:
                break
            term = None
            while True:
                tok = self.peek()
                if tok == "*":
                    self.next()
                    continue
                if tok is None or tok in ("+", "-", ")"):
                    break
                if tok.startswith("dz"):
                    self.fail("dz inside a coefficient")
                factor = self.parse_factor()
                term = factor if term is None else term * factor
            if term is None:
                self.fail("empty summand in coefficient")
            term = term * sign
            total = term if total is None else total + term
            first = False
            if self.peek() not in ("+", "-"):
                break
        return total

    def parse_chain(self):
        indices = []
        tok = self.next()
        while True:
            if tok is None or not tok.startswith("dz"):
                self.fail(f"expected dz token, got {tok!r}")
            i = int(tok[2:])
            if i >= self.nvars:
                self.fail(f"dz{i} out of range for {self.nvars} variables")
            indices.append(i)
            if self.peek() != "^":
                break
            self.next()
            tok = self.next()
            if tok is not None and re.fullmatch(r"\d+", tok):
                self.fail("dz factors cannot carry powers")
        return tuple(indices)


def parse_form(text: str, nvars: int) -> PolyKForm:
    tokens = _tokenize(text)
    if not tokens:
        raise FormParseError("empty input")
    parser = _Parser(tokens, nvars)
    form = parser.parse_form()
    return form


def parse_poly(text: str, nvars: int) -> HomogeneousPoly:
    form = parse_form(text, nvars)
    if form.k != 0:
        raise FormParseError("expected a polynomial, found differentials")
    return form.coefficient(())


def _monomial_str(expo: tuple[int, ...], coeff: Fraction) -> str:
    factors = []
    for i, e in enumerate(expo):
        if e == 1:
            factors.append(f"z{i}")
        elif e > 1:
            factors.append(f"z{i}^{e}")
    mono = "*".join(factors)
    mag = abs(coeff)
    if not mono:
        return str(mag)
    if mag == 1:
        return mono
    return f"{mag}*{mono}"


def poly_str(poly: HomogeneousPoly) -> str:
    if poly.is_zero:
        return "0"
    parts = []
    for i, (expo, coeff) in enumerate(poly.terms):
        body = _monomial_str(expo, coeff)
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(parts)


def _chain_str(indices: tuple[int, ...]) -> str:
    return "^".join(f"dz{i}" for i in indices)


def form_str(form: PolyKForm) -> str:
    """Canonical text: terms sorted by index tuple, single-monomial
    coefficients inline, multi-term coefficients parenthesized. Parsing the
    output reproduces the form exactly."""
    if form.is_zero:
        return "0"
    if form.k == 0:
        return poly_str(form.coefficient(()))
    parts = []
    for i, (indices, poly) in enumerate(form.coeffs):
        chain = _chain_str(indices)
        if len(poly.terms) == 1:
            expo, coeff = poly.terms[0]
            body = _monomial_str(expo, coeff)
            body = chain if body == "1" else f"{body} {chain}"
            negative = coeff < 0
        else:
            body = f"({poly_str(poly)}) {chain}"
            negative = False
        if i == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)
