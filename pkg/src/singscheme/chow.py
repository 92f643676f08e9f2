"""Exact intersection arithmetic on projective n-space.

Everything in this module lives in the Chow ring Z[h]/(h^{n+1}) of P^n,
where h is the hyperplane class: total Chern classes of split bundles,
formal differences c(B) / c(A), and the closed-form degree of the singular
scheme of a split distribution. All coefficients are arbitrary-precision
integers; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class PorteousInapplicableError(ValueError):
    """The expected-codimension hypothesis behind a degeneracy-degree
    computation is violated (the candidate degree came out non-positive)."""


@dataclass(frozen=True)
class ChowClass:
    """Truncated integer polynomial c_0 + c_1*h + ... + c_n*h^n.

    Multiplication truncates at h^{n+1} = 0. Instances are immutable and
    hashable; arithmetic always returns new objects.
    """

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ambient dimension must be a positive integer")
        if len(self.coeffs) != self.n + 1:
            raise ValueError(
                f"expected {self.n + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_list(cls, n: int, seq) -> "ChowClass":
        """Build a class from any coefficient iterable, padding with zeros
        and discarding terms beyond h^n."""
        coeffs = list(seq)[: n + 1]
        coeffs += [0] * (n + 1 - len(coeffs))
        return cls(n, tuple(int(c) for c in coeffs))

    @classmethod
    def one(cls, n: int) -> "ChowClass":
        return cls.from_list(n, [1])

    def coefficient(self, i: int) -> int:
        """Coefficient of h^i; zero outside 0..n."""
        if 0 <= i <= self.n:
            return self.coeffs[i]
        return 0

    def _require_same_ring(self, other: "ChowClass") -> None:
        if self.n != other.n:
            raise ValueError("classes live on different projective spaces")

    def __add__(self, other: "ChowClass") -> "ChowClass":
        self._require_same_ring(other)
        return ChowClass(
            self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        self._require_same_ring(other)
        return ChowClass(
            self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.n, tuple(other * a for a in self.coeffs))
        self._require_same_ring(other)
        out = [0] * (self.n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            # truncation: terms with i + j > n vanish
            for j in range(self.n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return ChowClass(self.n, tuple(out))

    __rmul__ = __mul__

    def __neg__(self) -> "ChowClass":
        return self * -1


@dataclass(frozen=True)
class SplitBundle:
    """A direct sum of line bundles O(a_1) + ... + O(a_m) on P^n.

    Twists are stored sorted in descending order, so two bundles are equal
    exactly when they are isomorphic.
    """

    n: int
    twists: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ambient dimension must be a positive integer")
        if len(self.twists) < 1:
            raise ValueError("a split bundle has rank at least one")
        canon = tuple(sorted((int(a) for a in self.twists), reverse=True))
        object.__setattr__(self, "twists", canon)

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def c1(self) -> int:
        return sum(self.twists)

    def twist(self, t: int) -> "SplitBundle":
        return SplitBundle(self.n, tuple(a + t for a in self.twists))

    def dual(self) -> "SplitBundle":
        return SplitBundle(self.n, tuple(-a for a in self.twists))

    def direct_sum(self, other: "SplitBundle") -> "SplitBundle":
        if self.n != other.n:
            raise ValueError("bundles live on different projective spaces")
        return SplitBundle(self.n, self.twists + other.twists)

    def __str__(self) -> str:
        parts = []
        i = 0
        while i < len(self.twists):
            j = i
            while j < len(self.twists) and self.twists[j] == self.twists[i]:
                j += 1
            mult = j - i
            term = f"O({self.twists[i]})"
            parts.append(term if mult == 1 else f"{term}^{mult}")
            i = j
        return "+".join(parts)


@dataclass(frozen=True)
class DistributionParams:
    """Numeric profile (n, r, k, d) of a distribution on P^n.

    r is the dimension of the distribution (the rank of its tangent sheaf),
    k = n - r its codimension, and d its degree, defined through the tangency
    divisor with a general linear P^k. The degree is tied to the determinant
    convention det(F*) = O(d - r), equivalently c1(F) = r - d; it is NOT in
    general the sum of twists of a split tangent sheaf. The associated
    twisted form lives in Omega^k(d + k + 1).
    """

    n: int
    r: int
    d: int

    def __post_init__(self) -> None:
        if not 1 <= self.r <= self.n - 1:
            raise ValueError("need 1 <= r <= n-1")
        if self.d < 0:
            raise ValueError("degree must be nonnegative")

    @property
    def k(self) -> int:
        return self.n - self.r

    @property
    def form_twist(self) -> int:
        """The twist of the defining k-form: deg L = d + k + 1."""
        return self.d + self.k + 1

    @classmethod
    def from_tangent_twists(cls, n: int, twists) -> "DistributionParams":
        """Profile of a distribution with split tangent sheaf ⊕O(a_i):
        r = number of summands and d = r - sum(a_i)."""
        twists = tuple(int(a) for a in twists)
        r = len(twists)
        return cls(n, r, r - sum(twists))

    @classmethod
    def from_pfaff(cls, n: int, pfaff: SplitBundle) -> "DistributionParams":
        """Profile of the distribution whose Pfaff bundle is the given split
        bundle of rank n - r: c1(E) = r - d - n - 1 determines d."""
        r = n - pfaff.rank
        return cls(n, r, r - n - 1 - pfaff.c1)


def chern_total(bundle: SplitBundle) -> ChowClass:
    """Whitney product prod_i (1 + a_i h), truncated at h^{n+1}."""
    acc = ChowClass.one(bundle.n)
    for a in bundle.twists:
        acc = acc * ChowClass.from_list(bundle.n, [1, a])
    return acc


def tangent_chern(n: int) -> ChowClass:
    """c(T) = (1 + h)^{n+1} via the Euler sequence."""
    return ChowClass.from_list(n, [comb(n + 1, i) for i in range(n + 1)])


def cotangent_chern(n: int) -> ChowClass:
    """c(Omega^1) = (1 - h)^{n+1}."""
    return ChowClass.from_list(
        n, [(-1) ** i * comb(n + 1, i) for i in range(n + 1)]
    )


def chern_difference(num: ChowClass, den: ChowClass) -> ChowClass:
    """Power-series quotient num / den truncated at h^{n+1}.

    The denominator must have constant term 1 (it is a total Chern class),
    which keeps the quotient integral. Satisfies num == result * den after
    truncation.
    """
    num._require_same_ring(den)
    if den.coefficient(0) != 1:
        raise ValueError("denominator must have constant term 1")
    n = num.n
    out = [0] * (n + 1)
    for i in range(n + 1):
        acc = num.coefficient(i)
        for j in range(1, i + 1):
            acc -= den.coefficient(j) * out[i - j]
        out[i] = acc
    return ChowClass(n, tuple(out))


def _complete_homogeneous(max_degree: int, values) -> list[int]:
    """h_0, ..., h_{max_degree} of the given integers, where h_i is the sum
    of all degree-i monomials with repetition (coefficient of x^i in
    prod_j 1/(1 - v_j x))."""
    coeffs = [1] + [0] * max_degree
    for v in values:
        for i in range(1, max_degree + 1):
            coeffs[i] += v * coeffs[i - 1]
    return coeffs


def singular_degree_formula(n: int, r: int, d_list) -> int:
    """Degree of the singular scheme of a distribution with split tangent
    sheaf ⊕_{i=1}^{r} O(-d_i):

        sum_{i=0}^{n-r+1} C(n+1, n-r+1-i) * h_i(d_1, ..., d_r)

    with h_i the complete homogeneous symmetric polynomial. Equals the
    h^{n-r+1} coefficient of c(T)/c(⊕O(-d_i)).

    The d_i may be any integers: positivity of every d_i is the hypothesis
    under which the singular scheme is nonempty of pure dimension r-1 and
    the number is an honest degree, but the identity itself is polynomial.
    In particular pullback-type bundles contribute entries d_i = -1.
    """
    d_list = [int(d) for d in d_list]
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    if len(d_list) != r:
        raise ValueError(f"expected {r} twist entries, got {len(d_list)}")
    m = n - r + 1
    h = _complete_homogeneous(m, d_list)
    return sum(comb(n + 1, m - i) * h[i] for i in range(m + 1))


def pullback_degree(n: int, k: int, d: int) -> int:
    """Degree of the singular scheme of a codimension-k pullback of a
    degree-d foliation by curves under a generic linear projection to
    P^{k+1}: the geometric sum d^{k+1} + d^k + ... + d + 1."""
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return sum(d**j for j in range(k + 2))


def porteous_singular_degree(n: int, pfaff: SplitBundle) -> int:
    """Degree of the degeneracy locus of a Pfaff system E -> Omega^1 with
    split E, by Porteous: the h^codim coefficient of c(Omega^1)/c(E) where
    codim = n - rank(E) + 1.

    Raises PorteousInapplicableError when the coefficient is non-positive,
    since then the expected-codimension hypothesis behind the formula
    cannot hold; clamping would hide that.
    """
    if pfaff.n != n:
        raise ValueError("bundle does not live on P^n")
    if pfaff.rank > n - 1:
        raise ValueError("Pfaff bundle rank must be at most n-1")
    codim = min(n, n - pfaff.rank + 1)
    quotient = chern_difference(cotangent_chern(n), chern_total(pfaff))
    degree = quotient.coefficient(codim)
    if degree <= 0:
        raise PorteousInapplicableError(
            "formula inapplicable (expected-codimension hypothesis "
            f"violated): candidate degree {degree} in codimension {codim}"
        )
    return degree
