"""Dimension chasing through short exact sequences of sheaves on P^n.

A long exact cohomology sequence rarely needs its maps: once enough
neighboring terms vanish, ranks are forced. ExactTriple records a short
exact sequence whose terms are virtual sheaves or named unknowns; chase()
walks an ordered list of such triples, first bounding the twist support of
every unknown row by window propagation, then materializing requested
entries: exact where the six-term neighborhood has enough zeros, an
interval [lo, hi] from rank-nullity otherwise. Every materialized entry
carries a trace that replays to the same number, and every triple is
checked for Euler-characteristic consistency at the twists it touched.

On top of the engine sit the complex builders used throughout: the
Eagon-Northcott complex of a split subsheaf of the tangent bundle, its
analogues for split Pfaff data in dimensions 1..3, two-term resolutions of
codimension-2 ideal sheaves, and the cohomology bounds for corank-one
distribution sheaves derived from the ideal sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .chow import SplitBundle
from .cohomology import (
    CohomologyTable,
    DimValue,
    VirtualSheaf,
    Window,
    normalize_atom,
    sym_power,
    tangent_sheaf,
)
from .criteria import Verdict, _vanishing_verdict, acm_check, beilinson_rank_bound


class ChaseDependencyError(ValueError):
    """The triple list cannot be solved in order: a triple either adds no
    new unknown (cycle or duplicate definition) or needs several."""


class InconsistentTripleError(ValueError):
    """Materialized dimensions violate rank-nullity along a triple."""


@dataclass(frozen=True)
class TableRef:
    """A named unknown; at chase twist t it denotes the unknown at t + offset."""

    name: str
    offset: int = 0

    def __str__(self) -> str:
        if self.offset == 0:
            return self.name
        return f"{self.name}({self.offset:+d})"


Term = VirtualSheaf | TableRef

_POSITIONS = ("a", "b", "c")


@dataclass(frozen=True)
class ExactTriple:
    """A short exact sequence 0 -> a -> b -> c -> 0 on P^n.

    Only the shape is used: no differentials are ever materialized. Terms
    are virtual sheaves (cohomology known in closed form) or TableRefs to
    unknowns solved earlier in a chase. Twisting the chase variable twists
    all three terms together.
    """

    a: Term
    b: Term
    c: Term
    n: int
    label: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ambient dimension must be positive")
        for pos in _POSITIONS:
            t = self.term(pos)
            if isinstance(t, VirtualSheaf) and t.n != self.n:
                raise ValueError(
                    f"term {pos} lives on P^{t.n}, triple on P^{self.n}"
                )
        if all(isinstance(self.term(p), VirtualSheaf) for p in _POSITIONS):
            if self.b.rank != self.a.rank + self.c.rank:
                raise ValueError(
                    f"rank additivity fails: {self.b.rank} != "
                    f"{self.a.rank} + {self.c.rank}"
                )

    def term(self, pos: str) -> Term:
        return getattr(self, pos)


# Reads needed to solve one position at cohomological degree q, as
# (role, dq) in the fixed order (kill1, keep1, kill2, keep2): the value is
# forced(keep1, kill1) + forced(keep2, kill2), where forced(x, y) is the
# part of x that y cannot absorb, [max(0, lo(x) - hi(y)), hi(x)].
_READS = {
    "c": (("a", 0), ("b", 0), ("b", 1), ("a", 1)),
    "a": (("b", -1), ("c", -1), ("c", 0), ("b", 0)),
    "b": (("c", -1), ("a", 0), ("a", 1), ("c", 0)),
}


def _forced(keep: DimValue, kill: DimValue) -> tuple[int, int | None]:
    lo = 0 if kill.hi is None else max(0, keep.lo - kill.hi)
    return lo, keep.hi


@dataclass(frozen=True)
class TraceInput:
    """One neighbor value consumed by a solve step."""

    role: str
    term: str
    q: int
    twist: int
    lo: int
    hi: int | None


@dataclass(frozen=True)
class Trace:
    """Provenance of one materialized entry.

    rule is one of solve-a / solve-b / solve-c (derived via the fixed
    four-input rank-nullity formula), window (outside the certified
    support), given (read off a supplied table), or unbounded (queried
    unknown that no triple constrains).
    """

    unknown: str
    q: int
    twist: int
    rule: str
    triple: str
    inputs: tuple[TraceInput, ...]
    lo: int
    hi: int | None


def replay_trace(trace: Trace) -> DimValue:
    """Recompute a trace's value from its recorded inputs."""
    if trace.rule == "window":
        return DimValue.exact(0)
    if trace.rule == "unbounded":
        return DimValue.unknown()
    if trace.rule == "given":
        return DimValue(trace.lo, trace.hi)
    if trace.rule not in ("solve-a", "solve-b", "solve-c"):
        raise ValueError(f"unknown trace rule {trace.rule!r}")
    kill1, keep1, kill2, keep2 = (
        DimValue(i.lo, i.hi) for i in trace.inputs
    )
    lo1, hi1 = _forced(keep1, kill1)
    lo2, hi2 = _forced(keep2, kill2)
    hi = None if hi1 is None or hi2 is None else hi1 + hi2
    return DimValue(lo1 + lo2, hi)


def _term_desc(term: Term) -> str:
    return str(term)


@dataclass(frozen=True)
class ChaseResult:
    """Everything a chase established: entries, windows, and provenance.

    entries maps (unknown, q, twist) in the unknown's own twist coordinates
    to an exact value or interval; traces carries one Trace per entry.
    Windows are complete (rows 0..n) for every solved unknown.
    """

    n: int
    entries: dict
    traces: dict
    windows: dict
    given: dict

    def value(self, name: str, q: int, twist: int) -> DimValue:
        key = (name, q, twist)
        if key in self.entries:
            return self.entries[key]
        if q < 0 or q > self.n:
            return DimValue.exact(0)
        if name in self.windows:
            if not self.windows[name][q].contains(twist):
                return DimValue.exact(0)
            return DimValue.unknown()
        if name in self.given:
            return self.given[name].value(q, twist)
        return DimValue.unknown()

    def window(self, name: str, q: int) -> Window | None:
        if q < 0 or q > self.n:
            return Window.nothing()
        if name in self.windows:
            return self.windows[name][q]
        if name in self.given:
            return self.given[name].window(q)
        return None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.windows) | set(self.given)))

    def table(self, name: str, dim_z: int | None = None) -> CohomologyTable:
        if name in self.given:
            t = self.given[name]
            if dim_z is not None and t.dim_z != dim_z:
                return t.with_dim_z(dim_z)
            return t
        if name not in self.windows:
            raise ValueError(f"unknown {name!r} was never constrained")
        rows: dict[int, dict[int, DimValue]] = {}
        for (nm, q, t), v in self.entries.items():
            if nm == name:
                rows.setdefault(q, {})[t] = v
        return CohomologyTable(self.n, rows, dict(self.windows[name]), dim_z)

    def explain_json(self) -> str:
        """Deterministic JSON dump of all traces, for --explain output."""

        def enc_window(w: Window) -> object:
            if w.empty:
                return {"empty": True}
            return {"lo": w.lo, "hi": w.hi}

        def enc_value(lo: int, hi: int | None) -> object:
            if hi == lo:
                return lo
            return [lo, hi]

        entries = []
        for key in sorted(self.entries):
            name, q, t = key
            tr = self.traces[key]
            entries.append(
                {
                    "unknown": name,
                    "q": q,
                    "twist": t,
                    "value": enc_value(tr.lo, tr.hi),
                    "rule": tr.rule,
                    "triple": tr.triple,
                    "inputs": [
                        {
                            "role": i.role,
                            "term": i.term,
                            "q": i.q,
                            "twist": i.twist,
                            "value": enc_value(i.lo, i.hi),
                        }
                        for i in tr.inputs
                    ],
                }
            )
        payload = {
            "n": self.n,
            "windows": {
                name: {str(q): enc_window(w) for q, w in sorted(rows.items())}
                for name, rows in sorted(self.windows.items())
            },
            "entries": entries,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def chase(triples, queries=(), given=None) -> ChaseResult:
    """Solve an ordered list of exact triples for their unknowns.

    Each triple must introduce exactly one unknown not yet solved (its
    other TableRefs must point at given tables or at unknowns solved by
    earlier triples); anything else raises ChaseDependencyError. queries
    is an iterable of (name, q, (lo, hi)) asking for the unknown's values
    on an inclusive twist range, in the unknown's own coordinates. A query
    against a name no triple constrains is answered [0, inf) and flagged
    "unbounded". On every triple, at every twist it materialized, the
    alternating sum of Euler characteristics is checked to vanish whenever
    all three columns are exact; a violation (possible only with
    inconsistent supplied tables) raises InconsistentTripleError.
    """
    triples = list(triples)
    given = dict(given or {})
    n = triples[0].n if triples else None

    for tr in triples:
        if tr.n != triples[0].n:
            raise ValueError("triples live on different projective spaces")
    for name, tab in given.items():
        if not isinstance(tab, CohomologyTable):
            raise ValueError(f"given[{name!r}] is not a cohomology table")
        if n is None:
            n = tab.n
        if tab.n != n:
            raise ValueError(f"given[{name!r}] lives on P^{tab.n}, chase on P^{n}")

    if n is None:
        raise ValueError("chase needs at least one triple or given table")

    queries = [tuple(q) for q in queries]
    for q in queries:
        if len(q) != 3:
            raise ValueError("queries are (name, q, (lo, hi)) tuples")
        name, deg, rng = q
        lo, hi = rng
        if lo > hi:
            raise ValueError(f"empty twist range {rng} for {name!r}")

    # Pass 0: ordering. Each triple defines the unique unresolved ref.
    solved_windows: dict[str, dict[int, Window]] = {}
    plan: list[tuple[ExactTriple, str, str, int]] = []
    for tr in triples:
        fresh = [
            pos
            for pos in _POSITIONS
            if isinstance(tr.term(pos), TableRef)
            and tr.term(pos).name not in given
            and tr.term(pos).name not in solved_windows
        ]
        if len(fresh) != 1:
            what = (
                "adds no new unknown (cycle or duplicate definition)"
                if not fresh
                else "needs "
                + ", ".join(repr(tr.term(p).name) for p in fresh)
                + " before they are defined (cyclic or misordered)"
            )
            raise ChaseDependencyError(f"triple {tr.label or tr}: {what}")
        pos = fresh[0]
        ref = tr.term(pos)
        solved_windows[ref.name] = {}
        plan.append((tr, pos, ref.name, ref.offset))

    def term_window(term: Term, q: int) -> Window:
        """Support window of a term's row q, in chase coordinates."""
        if q < 0 or q > n:
            return Window.nothing()
        if isinstance(term, VirtualSheaf):
            return term.row_window(q)
        if term.name in given:
            w = given[term.name].window(q)
            return Window.everything() if w is None else w.shift(-term.offset)
        rows = solved_windows.get(term.name)
        if not rows:
            return Window.everything()
        return rows[q].shift(-term.offset)

    # Pass 1: window propagation, in order. Support of an unknown row is
    # contained in the union of the two rows of the sequence it sits
    # between, so the hull of their windows is a sound zero certificate.
    _HULL_SOURCES = {"c": (("b", 0), ("a", 1)), "a": (("c", -1), ("b", 0)), "b": (("a", 0), ("c", 0))}
    for tr, pos, name, offset in plan:
        rows = {}
        for q in range(n + 1):
            parts = [
                term_window(tr.term(p2), q + dq)
                for p2, dq in _HULL_SOURCES[pos]
            ]
            rows[q] = Window.hull(*parts).shift(offset)
        solved_windows[name] = rows

    # Pass 2: requirements, walking consumers before definers.
    req: dict[str, set[tuple[int, int]]] = {name: set() for _, _, name, _ in plan}
    unbounded: list[tuple[str, int, int]] = []
    given_reads: list[tuple[str, int, int]] = []
    for name, deg, (lo, hi) in queries:
        for t in range(lo, hi + 1):
            if name in req:
                if 0 <= deg <= n:
                    req[name].add((deg, t))
            elif name in given:
                given_reads.append((name, deg, t))
            else:
                unbounded.append((name, deg, t))

    for tr, pos, name, offset in reversed(plan):
        for q, s in sorted(req[name]):
            t = s - offset
            for p2, dq in _READS[pos]:
                other = tr.term(p2)
                if not isinstance(other, TableRef) or other.name in given:
                    continue
                if other.name == name:
                    continue
                q2 = q + dq
                if 0 <= q2 <= n:
                    req[other.name].add((q2, t + other.offset))

    # Pass 3: materialization, in order, plus the consistency check.
    values: dict[tuple[str, int, int], DimValue] = {}
    traces: dict[tuple[str, int, int], Trace] = {}

    def term_value(term: Term, q: int, t: int) -> DimValue:
        if q < 0 or q > n:
            return DimValue.exact(0)
        if isinstance(term, VirtualSheaf):
            return DimValue.exact(term.h(q, t))
        s = t + term.offset
        if term.name in given:
            return given[term.name].value(q, s)
        key = (term.name, q, s)
        if key in values:
            return values[key]
        rows = solved_windows.get(term.name)
        if rows and not rows[q].contains(s):
            return DimValue.exact(0)
        return DimValue.unknown()

    for tr, pos, name, offset in plan:
        label = tr.label or f"0->{tr.a}->{tr.b}->{tr.c}->0"
        rows = solved_windows[name]
        for q, s in sorted(req[name]):
            key = (name, q, s)
            if key in values:
                continue
            t = s - offset
            if not rows[q].contains(s):
                values[key] = DimValue.exact(0)
                traces[key] = Trace(name, q, s, "window", label, (), 0, 0)
                continue
            inputs = []
            for role, dq in _READS[pos]:
                v = term_value(tr.term(role), q + dq, t)
                inputs.append(
                    TraceInput(role, _term_desc(tr.term(role)), q + dq, t, v.lo, v.hi)
                )
            kill1, keep1, kill2, keep2 = (DimValue(i.lo, i.hi) for i in inputs)
            lo1, hi1 = _forced(keep1, kill1)
            lo2, hi2 = _forced(keep2, kill2)
            hi = None if hi1 is None or hi2 is None else hi1 + hi2
            v = DimValue(lo1 + lo2, hi)
            values[key] = v
            traces[key] = Trace(
                name, q, s, f"solve-{pos}", label, tuple(inputs), v.lo, v.hi
            )

        # Euler-characteristic consistency at every twist this triple
        # materialized, wherever all three columns are exact. The solve
        # formulas are rank-nullity, so a violation can only come from
        # supplied tables that contradict their own certificates.
        for t in sorted({s - offset for _, s in req[name]}):
            chis = []
            for p2 in _POSITIONS:
                chi = 0
                for q in range(n + 1):
                    v = term_value(tr.term(p2), q, t)
                    if not v.is_exact:
                        chi = None
                        break
                    chi += v.lo if q % 2 == 0 else -v.lo
                if chi is None:
                    break
                chis.append(chi)
            if len(chis) == 3 and chis[0] - chis[1] + chis[2] != 0:
                raise InconsistentTripleError(
                    f"triple {label} at twist {t}: "
                    f"chi(a)-chi(b)+chi(c) = {chis[0]}-{chis[1]}+{chis[2]} != 0"
                )

    entries = dict(values)
    for name, deg, t in given_reads:
        v = given[name].value(deg, t)
        entries[(name, deg, t)] = v
        traces[(name, deg, t)] = Trace(
            name, deg, t, "given", "", (), v.lo, v.hi
        )
    for name, deg, t in unbounded:
        entries[(name, deg, t)] = DimValue.unknown()
        traces[(name, deg, t)] = Trace(
            name, deg, t, "unbounded", "", (), 0, None
        )

    return ChaseResult(
        n=n,
        entries=entries,
        traces=traces,
        windows=solved_windows,
        given=given,
    )


def windowed_chase(triples, name: str, n: int, given=None, extra=()) -> ChaseResult:
    """Chase twice: a probe run fixes the support windows, then every
    finite window row of the named unknown is materialized, plus any extra
    (name, q, (lo, hi)) queries."""
    probe = chase(triples, (), given=given)
    queries = list(extra)
    for q in range(n + 1):
        w = probe.window(name, q)
        if w is not None and w.is_finite:
            queries.append((name, q, (w.lo, w.hi)))
    return chase(triples, tuple(queries), given=given)


def _materialized_table(
    triples,
    name: str,
    n: int,
    given=None,
    dim_z: int | None = None,
    extra=(),
) -> CohomologyTable:
    full = windowed_chase(triples, name, n, given=given, extra=extra)
    return full.table(name, dim_z=dim_z)


def en_complex_tangent(F: SplitBundle, n: int) -> list[ExactTriple]:
    """Eagon-Northcott complex of a split subsheaf F of the tangent bundle.

    The complex has terms Omega^{r+j} (x) Sym_j(F)(c1) for j = 0..k with
    r = rank F, k = n - r and c1 = c1(F), and resolves the ideal sheaf of
    the degeneracy scheme; the final map is Omega^r(c1) -> I_Z. Returned
    broken into k short exact triples with unknowns U{k-2}, .., U0, I_Z.
    """
    r = F.rank
    k = n - r
    if F.n != n:
        raise ValueError(f"bundle lives on P^{F.n}, not P^{n}")
    if k < 1:
        raise ValueError("need rank(F) <= n - 1")
    c1 = F.c1

    def term(j: int) -> VirtualSheaf:
        pairs = [
            (normalize_atom(n, r + j, w + c1), 1)
            for w in sym_power(F, j).twists
        ]
        return VirtualSheaf.from_pairs(n, pairs)

    if k == 1:
        return [
            ExactTriple(term(1), term(0), TableRef("I_Z"), n, label="en0")
        ]
    triples = [
        ExactTriple(term(k), term(k - 1), TableRef(f"U{k - 2}"), n, label="en0")
    ]
    for i, j in enumerate(range(k - 2, 0, -1), start=1):
        triples.append(
            ExactTriple(
                TableRef(f"U{j}"),
                term(j),
                TableRef(f"U{j - 1}"),
                n,
                label=f"en{i}",
            )
        )
    triples.append(
        ExactTriple(
            TableRef("U0"), term(0), TableRef("I_Z"), n, label=f"en{k - 1}"
        )
    )
    return triples


def en_complex_pfaff(E: SplitBundle, r: int, n: int) -> list[ExactTriple]:
    """Eagon-Northcott triples for split Pfaff data of dimension r in {1,2,3}.

    E = (+) O(a_i) has rank n - r and c = sum a_i; the complex, with
    Lambda^q T rewritten as Omega^{n-q}(n+1), runs

        0 -> Sym_r(E)(n+1+c) -> ... -> Omega^r(n+1+c) -> I_Z -> 0,

    except that for r = 1 it degenerates to 0 -> E -> Omega^1 -> I_Z(d-1) -> 0
    with d = -n - c the distribution degree.
    """
    if r not in (1, 2, 3):
        raise ValueError(f"unsupported dimension r={r}: only 1, 2, 3")
    if E.n != n:
        raise ValueError(f"bundle lives on P^{E.n}, not P^{n}")
    if E.rank != n - r:
        raise ValueError(
            f"Pfaff data of dimension {r} on P^{n} needs rank {n - r}, "
            f"got {E.rank}"
        )
    c = E.c1
    if r == 1:
        d = -n - c
        return [
            ExactTriple(
                VirtualSheaf.from_split(E),
                VirtualSheaf.from_atom(n, normalize_atom(n, 1, 0)),
                TableRef("I_Z", d - 1),
                n,
                label="pf0",
            )
        ]

    def omega_sum(p: int, bundle: SplitBundle | None) -> VirtualSheaf:
        twists = (0,) if bundle is None else bundle.twists
        return VirtualSheaf.from_pairs(
            n, [(normalize_atom(n, p, n + 1 + c + w), 1) for w in twists]
        )

    if r == 2:
        return [
            ExactTriple(
                VirtualSheaf.from_split(sym_power(E, 2).twist(n + 1 + c)),
                omega_sum(1, E),
                TableRef("ker1"),
                n,
                label="pf0",
            ),
            ExactTriple(
                TableRef("ker1"),
                omega_sum(2, None),
                TableRef("I_Z"),
                n,
                label="pf1",
            ),
        ]
    return [
        ExactTriple(
            VirtualSheaf.from_split(sym_power(E, 3).twist(n + 1 + c)),
            omega_sum(1, sym_power(E, 2)),
            TableRef("ker1"),
            n,
            label="pf0",
        ),
        ExactTriple(
            TableRef("ker1"),
            omega_sum(2, E),
            TableRef("ker2"),
            n,
            label="pf1",
        ),
        ExactTriple(
            TableRef("ker2"),
            omega_sum(3, None),
            TableRef("I_Z"),
            n,
            label="pf2",
        ),
    ]


def tangent_ideal_table(F: SplitBundle, n: int, extra=()) -> CohomologyTable:
    """Ideal-sheaf cohomology of the degeneracy scheme of split F in T.

    Chases the tangent Eagon-Northcott complex and materializes every
    finite window; the scheme has dimension rank(F) - 1.
    """
    return _materialized_table(
        en_complex_tangent(F, n), "I_Z", n, dim_z=F.rank - 1, extra=extra
    )


def pfaff_ideal_table(
    E: SplitBundle, r: int, n: int, extra=()
) -> CohomologyTable:
    """Ideal-sheaf cohomology of the singular scheme of split Pfaff data;
    the scheme has dimension n - r - 1."""
    return _materialized_table(
        en_complex_pfaff(E, r, n), "I_Z", n, dim_z=n - r - 1, extra=extra
    )


@dataclass(frozen=True)
class ResolutionData:
    """Two-term resolution of a codimension-2 ideal sheaf,

        0 -> (+) O(-a_i) -> ((+) Omega^{p_j}(-k_j)^{l_j}) (+) ((+) O(-c_s)) -> I_Y -> 0.

    left lists the a_i, omegas the (p_j, k_j, l_j), lines the c_s. The
    middle's rank must exceed the left's by exactly one, the codimension-2
    normalization of an ideal-sheaf resolution.
    """

    n: int
    left: tuple[int, ...]
    omegas: tuple[tuple[int, int, int], ...]
    lines: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("codimension-2 resolutions need n >= 3")
        object.__setattr__(self, "left", tuple(int(a) for a in self.left))
        object.__setattr__(
            self, "omegas", tuple((int(p), int(k), int(l)) for p, k, l in self.omegas)
        )
        object.__setattr__(self, "lines", tuple(int(c) for c in self.lines))
        mid = len(self.lines)
        for p, _, l in self.omegas:
            if not 1 <= p <= self.n - 1:
                raise ValueError(f"Omega power {p} out of range 1..{self.n - 1}")
            if l < 1:
                raise ValueError("summand multiplicities must be positive")
            mid += l * comb(self.n, p)
        if mid - len(self.left) != 1:
            raise ValueError(
                f"rank(middle) - rank(left) must be 1, got {mid - len(self.left)}"
            )


def omega_resolution_cohomology(res: ResolutionData) -> CohomologyTable:
    """Chase h^p(I_Y(q)) out of a two-term resolution.

    Exact where one side vanishes, an interval otherwise; rows 1..n-2
    always end up inside finite windows and are materialized in full, so
    the ACM and Buchsbaum checks run off this table directly.
    """
    n = res.n
    left = VirtualSheaf.from_pairs(
        n, [(normalize_atom(n, 0, -a), 1) for a in res.left]
    )
    pairs = [(normalize_atom(n, p, -k), l) for p, k, l in res.omegas]
    pairs.extend((normalize_atom(n, 0, -c), 1) for c in res.lines)
    middle = VirtualSheaf.from_pairs(n, pairs)
    triples = [
        ExactTriple(left, middle, TableRef("I_Z"), n, label="omega-res")
    ]
    return _materialized_table(triples, "I_Z", n, dim_z=n - 2)


def _distribution_triple(d: int, n: int) -> ExactTriple:
    """0 -> F -> T -> I_Z(d+2) -> 0 for a corank-one distribution of degree d."""
    return ExactTriple(
        TableRef("F"),
        tangent_sheaf(n),
        TableRef("I_Z", d + 2),
        n,
        label="distribution",
    )


def _ray_vanishing(tab: CohomologyTable, q: int, cutoff: int, label: str) -> Verdict:
    """holds iff h^q vanishes at every twist <= cutoff."""
    w = tab.window(q)
    if w is None:
        return Verdict(
            "undetermined", (), f"{label}: row {q} has no zero certificate"
        )
    if w.empty or (w.lo is not None and w.lo > cutoff):
        return Verdict(
            "holds", (), f"{label}: window clears all twists <= {cutoff}"
        )
    if w.lo is None:
        return Verdict(
            "undetermined", (), f"{label}: row {q} unbounded below"
        )
    for s in range(w.lo, cutoff + 1):
        v = tab.value(q, s)
        if v.definitely_nonzero:
            return Verdict("fails", ((q, s, v),), label)
        if not v.is_zero:
            return Verdict(
                "undetermined", ((q, s, v),), f"{label}: twist {s} not pinned"
            )
    return Verdict(
        "holds", (), f"{label}: twists {w.lo}..{cutoff} materialized zero"
    )


def _peak_verdict(tab: CohomologyTable, n: int) -> Verdict:
    """Row n-1 supported only at -n-1, with value at most 1 there."""
    q = n - 1
    w = tab.window(q)
    if w is None or (not w.empty and not w.is_finite):
        return Verdict(
            "undetermined", (), "top intermediate row window is not finite"
        )
    if not w.empty:
        for t in range(w.lo, w.hi + 1):
            if t == -n - 1:
                continue
            v = tab.value(q, t)
            if v.definitely_nonzero:
                return Verdict(
                    "fails", ((q, t, v),), "support away from twist -n-1"
                )
            if not v.is_zero:
                return Verdict(
                    "undetermined", ((q, t, v),), f"twist {t} not pinned"
                )
    peak = tab.value(q, -n - 1)
    if peak.lo >= 2:
        return Verdict("fails", ((q, -n - 1, peak),), "value exceeds 1")
    if peak.hi is not None and peak.hi <= 1:
        return Verdict(
            "holds",
            ((q, -n - 1, peak),),
            "supported only at -n-1 and bounded by 1 there",
        )
    return Verdict(
        "undetermined", ((q, -n - 1, peak),), "no upper bound at -n-1"
    )


@dataclass(frozen=True)
class DistributionReport:
    """Cohomology bounds for the tangent sheaf of a corank-one distribution.

    items maps "i".."iv" to verdicts: (i) h^0(F(p)) = 0 for p <= -2;
    (ii) h^1(F(p)) = 0 for p <= -d-3; and, under the hypothesis that the
    singular scheme is ACM of dimension n-2, (iii) rows 2..n-2 vanish
    identically and (iv) h^{n-1}(F(p)) is supported at p = -n-1 with value
    at most 1. sheaf_table carries the chased bounds on F itself.
    """

    n: int
    degree: int
    acm: Verdict
    items: dict
    sheaf_table: CohomologyTable
    ideal_table: CohomologyTable

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.items.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "acm": self.acm.to_json(),
            "items": {k: v.to_json() for k, v in sorted(self.items.items())},
            "holds": self.holds,
        }


def distribution_cohomology_bounds(F, d: int, n: int) -> DistributionReport:
    """Bounds on h^q(F(p)) for a corank-one distribution of degree d.

    F is the rank n-1 tangent sheaf, supplied either as a SplitBundle
    (its singular-scheme table is chased from the tangent Eagon-Northcott
    complex) or indirectly as the ideal-sheaf table of the singular
    scheme. Everything flows from the single sequence
    0 -> F -> T -> I_Z(d+2) -> 0; items (iii) and (iv) additionally need
    the scheme to be ACM and are reported undetermined when that
    hypothesis is not certified.
    """
    if n < 3:
        raise ValueError("corank-one bounds need n >= 3")
    if d < 0:
        raise ValueError("distribution degree is nonnegative")
    if isinstance(F, SplitBundle):
        if F.n != n:
            raise ValueError(f"bundle lives on P^{F.n}, not P^{n}")
        if F.rank != n - 1:
            raise ValueError(
                f"corank-one data needs rank {n - 1}, got {F.rank}"
            )
        if d != (n - 1) - F.c1:
            raise ValueError(
                f"twists give degree {(n - 1) - F.c1}, not {d}"
            )
        triples = en_complex_tangent(F, n) + [_distribution_triple(d, n)]
        given = {}
    elif isinstance(F, CohomologyTable):
        if F.n != n:
            raise ValueError(f"table lives on P^{F.n}, not P^{n}")
        triples = [_distribution_triple(d, n)]
        given = {"I_Z": F}
    else:
        raise TypeError("F must be a SplitBundle or an ideal-sheaf table")

    probe = chase(triples, (), given=given)
    queries = []
    w0 = probe.window("F", 0)
    if w0.lo is not None and w0.lo <= -2:
        queries.append(("F", 0, (w0.lo, -2)))
    w1 = probe.window("F", 1)
    if w1.lo is not None and w1.lo <= -d - 3:
        queries.append(("F", 1, (w1.lo, -d - 3)))
    for q in range(2, n - 1):
        wq = probe.window("F", q)
        if wq.is_finite:
            queries.append(("F", q, (wq.lo, wq.hi)))
    wt = probe.window("F", n - 1)
    if wt.is_finite:
        queries.append(
            ("F", n - 1, (min(wt.lo, -n - 1), max(wt.hi, -n - 1)))
        )
    else:
        queries.append(("F", n - 1, (-n - 1, -n - 1)))
    result = chase(triples, tuple(queries), given=given)

    f_table = result.table("F")
    ideal_table = result.table("I_Z", dim_z=n - 2)
    acm = acm_check(ideal_table, n - 2)

    gate = Verdict(
        "undetermined",
        (),
        f"needs the singular scheme ACM of dimension {n - 2}; "
        f"acm check came back {acm.decision}",
    )
    items = {
        "i": _ray_vanishing(f_table, 0, -2, "no sections below twist -1"),
        "ii": _ray_vanishing(
            f_table, 1, -d - 3, f"h^1 vanishes below twist {-d - 2}"
        ),
        "iii": _vanishing_verdict(f_table, 2, n - 2, "interior rows")
        if acm.holds
        else gate,
        "iv": _peak_verdict(f_table, n) if acm.holds else gate,
    }
    return DistributionReport(
        n=n,
        degree=d,
        acm=acm,
        items=items,
        sheaf_table=f_table,
        ideal_table=ideal_table,
    )


@dataclass(frozen=True)
class SplitObstruction:
    """Outcome of the rank-bound obstruction against splitting."""

    bound: int
    rank: int

    @property
    def contradiction(self) -> bool:
        return self.bound > self.rank

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "rank": self.rank,
            "contradiction": self.contradiction,
        }


def beilinson_split_obstruction(
    f_table: CohomologyTable, rank: int, n: int
) -> SplitObstruction:
    """Test a rank budget against the Beilinson-type bound.

    If the table satisfies the bound's hypotheses, any sheaf with that
    cohomology has rank at least n * h^{n-1}(F(-n-1)); a budget below the
    bound is a contradiction (the sheaf cannot exist, e.g. a hypothetical
    split corank-one tangent sheaf). Raises InapplicableError when the
    hypotheses are not certified by the table.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    return SplitObstruction(beilinson_rank_bound(f_table, n), rank)
