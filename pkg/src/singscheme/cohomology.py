"""Closed-form sheaf cohomology on P^n for a small exact calculus.

The calculus is built from two kinds of atoms, line bundles O(a) and twisted
cotangent powers Omega^p(k), closed under direct sum, twist, and Sym/Lambda
of split parts. Every atom has a closed-form h^q at every twist, so any
"vanishes at all twists" question is decidable: each row of an atom is
nonzero only on an explicit window of twists (a ray, a singleton, or
nothing), and those windows are carried on every table as certificates.

Atoms are kept in normal form: Omega^0(k) is O(k) and Omega^n(k) is
O(k-n-1), applied eagerly so equality of sheaves is syntactic. The tangent
bundle enters as Lambda^q T = Omega^{n-q}(n+1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb

from .chow import SplitBundle


@dataclass(frozen=True)
class LineBundle:
    """O(a)."""

    a: int


@dataclass(frozen=True)
class CotangentPower:
    """Omega^p(k) with 1 <= p <= n-1 in normal form."""

    p: int
    k: int


SheafAtom = LineBundle | CotangentPower


def normalize_atom(n: int, p: int, k: int) -> SheafAtom:
    """Omega^p(k) in normal form: the edge powers fold into line bundles."""
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got p={p}")
    if p == 0:
        return LineBundle(k)
    if p == n:
        # Omega^n = O(-n-1)
        return LineBundle(k - n - 1)
    return CotangentPower(p, k)


def _atom_sort_key(atom: SheafAtom):
    if isinstance(atom, LineBundle):
        return (0, 0, atom.a)
    return (1, atom.p, atom.k)


def _twist_atom(atom: SheafAtom, t: int) -> SheafAtom:
    if isinstance(atom, LineBundle):
        return LineBundle(atom.a + t)
    return CotangentPower(atom.p, atom.k + t)


def bott_dim(n: int, p: int, k: int, q: int) -> int:
    """h^q(P^n, Omega^p(k)) in closed form.

    Nonzero only in three regimes: global sections for k > p, the Hodge
    diagonal h^p(Omega^p) = 1 at k = 0, and top cohomology for k < p - n.
    The formula is its own Serre dual: (p, k, q) -> (n-p, -k, n-q) fixes it.
    """
    if n < 1:
        raise ValueError("ambient dimension must be positive")
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError("need 0 <= p, q <= n")
    if q == 0 and k > p:
        return comb(k + n - p, k) * comb(k - 1, p)
    if q == p and k == 0:
        return 1
    if q == n and k < p - n:
        return comb(p - k, -k) * comb(-k - 1, n - p)
    return 0


def atom_dim(n: int, atom: SheafAtom, q: int, twist: int = 0) -> int:
    if isinstance(atom, LineBundle):
        return bott_dim(n, 0, atom.a + twist, q)
    return bott_dim(n, atom.p, atom.k + twist, q)


@dataclass(frozen=True)
class Window:
    """Set of twists outside which a cohomology row is certified zero.

    lo=None means unbounded below, hi=None unbounded above; an empty window
    certifies the whole row vanishes.
    """

    lo: int | None
    hi: int | None
    empty: bool = False

    def __post_init__(self) -> None:
        if self.empty:
            object.__setattr__(self, "lo", None)
            object.__setattr__(self, "hi", None)
        elif self.lo is not None and self.hi is not None and self.lo > self.hi:
            object.__setattr__(self, "empty", True)
            object.__setattr__(self, "lo", None)
            object.__setattr__(self, "hi", None)

    @classmethod
    def nothing(cls) -> "Window":
        return cls(None, None, empty=True)

    @classmethod
    def everything(cls) -> "Window":
        return cls(None, None)

    @classmethod
    def hull(cls, *windows: "Window") -> "Window":
        live = [w for w in windows if not w.empty]
        if not live:
            return cls.nothing()
        los = [w.lo for w in live]
        his = [w.hi for w in live]
        lo = None if any(v is None for v in los) else min(los)
        hi = None if any(v is None for v in his) else max(his)
        return cls(lo, hi)

    def contains(self, t: int) -> bool:
        if self.empty:
            return False
        if self.lo is not None and t < self.lo:
            return False
        if self.hi is not None and t > self.hi:
            return False
        return True

    def shift(self, dt: int) -> "Window":
        if self.empty:
            return self
        return Window(
            None if self.lo is None else self.lo + dt,
            None if self.hi is None else self.hi + dt,
        )

    @property
    def is_finite(self) -> bool:
        return not self.empty and self.lo is not None and self.hi is not None


def atom_window(n: int, atom: SheafAtom, q: int) -> Window:
    """Twists t where h^q(atom(t)) can be nonzero; tight on both ends."""
    if q < 0 or q > n:
        return Window.nothing()
    if isinstance(atom, LineBundle):
        if q == 0:
            return Window(-atom.a, None)
        if q == n:
            return Window(None, -atom.a - n - 1)
        return Window.nothing()
    p, k0 = atom.p, atom.k
    if q == 0:
        return Window(p - k0 + 1, None)
    if q == p:
        return Window(-k0, -k0)
    if q == n:
        return Window(None, p - n - k0 - 1)
    return Window.nothing()


@dataclass(frozen=True)
class VirtualSheaf:
    """Formal direct sum of atoms with positive multiplicities on P^n."""

    n: int
    atoms: tuple[tuple[SheafAtom, int], ...]

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "VirtualSheaf":
        merged: dict[SheafAtom, int] = {}
        for atom, mult in pairs:
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            if isinstance(atom, CotangentPower):
                atom = normalize_atom(n, atom.p, atom.k)
            merged[atom] = merged.get(atom, 0) + mult
        if not merged:
            raise ValueError("a virtual sheaf needs at least one atom")
        items = tuple(sorted(merged.items(), key=lambda it: _atom_sort_key(it[0])))
        return cls(n, items)

    @classmethod
    def from_atom(cls, n: int, atom: SheafAtom, mult: int = 1) -> "VirtualSheaf":
        return cls.from_pairs(n, [(atom, mult)])

    @classmethod
    def from_split(cls, bundle: SplitBundle) -> "VirtualSheaf":
        return cls.from_pairs(
            bundle.n, [(LineBundle(a), 1) for a in bundle.twists]
        )

    @property
    def rank(self) -> int:
        total = 0
        for atom, mult in self.atoms:
            r = 1 if isinstance(atom, LineBundle) else comb(self.n, atom.p)
            total += mult * r
        return total

    @property
    def is_split(self) -> bool:
        return all(isinstance(atom, LineBundle) for atom, _ in self.atoms)

    def as_split_bundle(self) -> SplitBundle:
        if not self.is_split:
            raise ValueError("sheaf contains cotangent atoms; it is not split")
        twists = []
        for atom, mult in self.atoms:
            twists.extend([atom.a] * mult)
        return SplitBundle(self.n, tuple(twists))

    def twist(self, t: int) -> "VirtualSheaf":
        return VirtualSheaf.from_pairs(
            self.n, [(_twist_atom(atom, t), m) for atom, m in self.atoms]
        )

    def direct_sum(self, other: "VirtualSheaf") -> "VirtualSheaf":
        if self.n != other.n:
            raise ValueError("sheaves live on different projective spaces")
        return VirtualSheaf.from_pairs(self.n, self.atoms + other.atoms)

    def dual(self) -> "VirtualSheaf":
        """Dual of a split sheaf. Duals of cotangent powers leave the
        calculus (they are not sums of atoms), so they are rejected."""
        if not self.is_split:
            raise ValueError("dual is only defined for split sheaves here")
        return VirtualSheaf.from_pairs(
            self.n, [(LineBundle(-atom.a), m) for atom, m in self.atoms]
        )

    def h(self, q: int, twist: int = 0) -> int:
        return sum(m * atom_dim(self.n, a, q, twist) for a, m in self.atoms)

    def row_window(self, q: int) -> Window:
        return Window.hull(*(atom_window(self.n, a, q) for a, _ in self.atoms))

    def __str__(self) -> str:
        parts = []
        for atom, mult in self.atoms:
            if isinstance(atom, LineBundle):
                s = f"O({atom.a})"
            else:
                s = f"Om({atom.p},{atom.k})"
            parts.append(s if mult == 1 else f"{s}^{mult}")
        return "+".join(parts)


def sheaf_dim(sheaf: VirtualSheaf, q: int, twist: int = 0) -> int:
    return sheaf.h(q, twist)


def sheaf_window(sheaf: VirtualSheaf, q: int) -> Window:
    return sheaf.row_window(q)


def tangent_sheaf(n: int) -> VirtualSheaf:
    """T as the normalized atom Omega^{n-1}(n+1)."""
    return VirtualSheaf.from_atom(n, normalize_atom(n, n - 1, n + 1))


def sym_power(bundle: SplitBundle, j: int) -> SplitBundle:
    """Sym^j of a split bundle: all j-fold twist sums with repetition."""
    if j < 0:
        raise ValueError("symmetric power degree must be nonnegative")
    if j == 0:
        return SplitBundle(bundle.n, (0,))
    twists = tuple(
        sum(c) for c in combinations_with_replacement(bundle.twists, j)
    )
    return SplitBundle(bundle.n, twists)


def ext_power_split(bundle: SplitBundle, j: int) -> SplitBundle:
    """Lambda^j of a split bundle: j-fold twist sums without repetition."""
    if not 0 <= j <= bundle.rank:
        raise ValueError("exterior power degree out of range")
    if j == 0:
        return SplitBundle(bundle.n, (0,))
    twists = tuple(sum(c) for c in combinations(bundle.twists, j))
    return SplitBundle(bundle.n, twists)


def ext_power_tangent(n: int, q: int) -> SheafAtom:
    """Lambda^q T = Omega^{n-q}(n+1), in normal form."""
    if not 0 <= q <= n:
        raise ValueError("need 0 <= q <= n")
    return normalize_atom(n, n - q, n + 1)


def tensor_with_split(sheaf, bundle: SplitBundle) -> VirtualSheaf:
    """Tensor an atom or virtual sheaf with a split bundle, distributing
    twists over atoms. Omega (x) Omega products are outside the calculus
    and cannot be expressed here by construction."""
    if isinstance(sheaf, (LineBundle, CotangentPower)):
        sheaf = VirtualSheaf.from_atom(bundle.n, sheaf)
    if sheaf.n != bundle.n:
        raise ValueError("operands live on different projective spaces")
    pairs = []
    for atom, mult in sheaf.atoms:
        for a in bundle.twists:
            pairs.append((_twist_atom(atom, a), mult))
    return VirtualSheaf.from_pairs(sheaf.n, pairs)


def twist(sheaf: VirtualSheaf, t: int) -> VirtualSheaf:
    return sheaf.twist(t)


def dual_split(bundle: SplitBundle) -> SplitBundle:
    return bundle.dual()


@dataclass(frozen=True)
class DimValue:
    """A cohomology dimension, exact or boxed in an interval [lo, hi].

    hi=None means no upper bound is known. Exact values have lo == hi.
    """

    lo: int
    hi: int | None

    def __post_init__(self) -> None:
        if self.lo < 0:
            raise ValueError("dimensions are nonnegative")
        if self.hi is not None and self.hi < self.lo:
            raise ValueError("empty interval")

    @classmethod
    def exact(cls, v: int) -> "DimValue":
        return cls(v, v)

    @classmethod
    def unknown(cls) -> "DimValue":
        return cls(0, None)

    @property
    def is_exact(self) -> bool:
        return self.hi == self.lo

    @property
    def is_zero(self) -> bool:
        return self.hi == 0

    @property
    def possibly_nonzero(self) -> bool:
        return self.hi is None or self.hi > 0

    @property
    def definitely_nonzero(self) -> bool:
        return self.lo > 0

    def __add__(self, other: "DimValue") -> "DimValue":
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return DimValue(self.lo + other.lo, hi)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{self.lo},{hi}]"


@dataclass
class CohomologyTable:
    """Rows q = 0..n of twist -> DimValue with per-row zero certificates.

    windows[q] is the Window outside which the row is certified zero, or
    None when no certificate is available (then unmaterialized queries
    answer with the trivial interval [0, inf)). dim_z tags tables that
    describe an ideal sheaf with the dimension of its subscheme.
    """

    n: int
    rows: dict[int, dict[int, DimValue]]
    windows: dict[int, Window | None]
    dim_z: int | None = None

    def window(self, q: int) -> Window | None:
        if q < 0 or q > self.n:
            return Window.nothing()
        return self.windows.get(q)

    def value(self, q: int, t: int) -> DimValue:
        if q < 0 or q > self.n:
            return DimValue.exact(0)
        row = self.rows.get(q, {})
        if t in row:
            return row[t]
        w = self.windows.get(q)
        if w is not None and not w.contains(t):
            return DimValue.exact(0)
        return DimValue.unknown()

    def with_dim_z(self, dim_z: int) -> "CohomologyTable":
        return CohomologyTable(self.n, self.rows, self.windows, dim_z)

    def to_json(self) -> dict:
        def enc_value(v: DimValue):
            if v.is_exact:
                return v.lo
            return [v.lo, v.hi]

        def enc_window(w: Window | None):
            if w is None:
                return None
            if w.empty:
                return {"empty": True}
            return {"lo": w.lo, "hi": w.hi}

        return {
            "n": self.n,
            "dim_z": self.dim_z,
            "rows": {
                str(q): {str(t): enc_value(v) for t, v in sorted(row.items())}
                for q, row in sorted(self.rows.items())
            },
            "windows": {
                str(q): enc_window(w) for q, w in sorted(self.windows.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "CohomologyTable":
        n = int(data["n"])

        def dec_value(v) -> DimValue:
            if isinstance(v, int):
                return DimValue.exact(v)
            lo, hi = v
            return DimValue(int(lo), None if hi is None else int(hi))

        def dec_window(w) -> Window | None:
            if w is None:
                return None
            if w.get("empty"):
                return Window.nothing()
            lo, hi = w.get("lo"), w.get("hi")
            return Window(
                None if lo is None else int(lo),
                None if hi is None else int(hi),
            )

        rows = {
            int(q): {int(t): dec_value(v) for t, v in row.items()}
            for q, row in data.get("rows", {}).items()
        }
        windows = {
            int(q): dec_window(w) for q, w in data.get("windows", {}).items()
        }
        for q in rows:
            if not 0 <= q <= n:
                raise ValueError(f"row index {q} out of range")
        dim_z = data.get("dim_z")
        return cls(n, rows, windows, None if dim_z is None else int(dim_z))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "CohomologyTable":
        return cls.from_json(json.loads(text))


def table(sheaf: VirtualSheaf, twist_lo: int, twist_hi: int) -> CohomologyTable:
    """Exact cohomology table of a virtual sheaf.

    Materializes every twist in [twist_lo, twist_hi], and additionally the
    whole of every finite row window, so vanishing questions about the
    middle rows are decided by the table alone.
    """
    if twist_lo > twist_hi:
        raise ValueError("empty twist range")
    n = sheaf.n
    rows: dict[int, dict[int, DimValue]] = {}
    windows: dict[int, Window | None] = {}
    for q in range(n + 1):
        w = sheaf.row_window(q)
        windows[q] = w
        ts = set(range(twist_lo, twist_hi + 1))
        if w.is_finite:
            ts.update(range(w.lo, w.hi + 1))
        rows[q] = {t: DimValue.exact(sheaf.h(q, t)) for t in sorted(ts)}
    return CohomologyTable(n, rows, windows)
