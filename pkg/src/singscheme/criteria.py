"""Decision procedures on cohomology tables.

Splitting criteria (Horrocks, Evans-Griffith, Kumar-Peterson-Rao), the ACM
and numeric Buchsbaum checks, Castelnuovo-Mumford regularity, and the
Beilinson-type rank bound all reduce to questions of the form "does row q
vanish at every twist". A table can answer that honestly in three ways:
certified yes (the row's window is empty, or every twist inside a finite
window is materialized as exact zero), witnessed no (some entry has a
positive lower bound), or undetermined (intervals straddle zero, or the
window is unbounded). Verdicts carry the witnesses, never just a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import CohomologyTable, DimValue, Window


class InapplicableError(ValueError):
    """A criterion's hypotheses exclude the given input."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a criterion: holds / fails / undetermined, justified.

    Witnesses are (q, twist, value) triples; fails always carries the
    offending entries, undetermined carries the blockers when they are
    localized, and holds relies on the certificate string.
    """

    decision: str
    witnesses: tuple[tuple[int, int, DimValue], ...] = ()
    certificate: str = ""

    def __post_init__(self) -> None:
        if self.decision not in ("holds", "fails", "undetermined"):
            raise ValueError(f"unknown decision {self.decision!r}")
        if self.decision in ("holds", "fails"):
            if not self.witnesses and not self.certificate:
                raise ValueError(
                    "holds/fails needs a witness or a certificate"
                )

    @property
    def holds(self) -> bool:
        return self.decision == "holds"

    def to_json(self) -> dict:
        def enc(v: DimValue):
            return v.lo if v.is_exact else [v.lo, v.hi]

        return {
            "decision": self.decision,
            "witnesses": [[q, t, enc(v)] for q, t, v in self.witnesses],
            "certificate": self.certificate,
        }


def _row_status(table: CohomologyTable, q: int):
    """Classify row q: ('zero', None), ('nonzero', witness), or
    ('unknown', reason). A definite nonzero wins even without a window."""
    row = table.rows.get(q, {})
    for t in sorted(row):
        if row[t].definitely_nonzero:
            return "nonzero", (q, t, row[t])
    w = table.window(q)
    if w is None:
        return "unknown", f"row {q} has no zero certificate"
    if w.empty:
        return "zero", None
    if not w.is_finite:
        return "unknown", f"row {q} window is unbounded"
    for t in range(w.lo, w.hi + 1):
        v = table.value(q, t)
        if not v.is_zero:
            return "unknown", f"row {q} not pinned at twist {t}"
    return "zero", None


def _vanishing_verdict(
    table: CohomologyTable, q_lo: int, q_hi: int, label: str
) -> Verdict:
    """holds iff rows q_lo..q_hi are certified zero at every twist."""
    if q_lo > q_hi:
        return Verdict(
            "holds", (), f"{label}: empty row range {q_lo}..{q_hi}"
        )
    witnesses = []
    blockers = []
    for q in range(q_lo, q_hi + 1):
        status, info = _row_status(table, q)
        if status == "nonzero":
            witnesses.append(info)
        elif status == "unknown":
            blockers.append((q, info))
    if witnesses:
        return Verdict(
            "fails",
            tuple(witnesses),
            f"{label}: nonzero intermediate cohomology",
        )
    if blockers:
        reasons = "; ".join(info for _, info in blockers)
        return Verdict("undetermined", (), f"{label}: {reasons}")
    return Verdict(
        "holds", (), f"{label}: rows {q_lo}..{q_hi} certified zero at all twists"
    )


def horrocks(table: CohomologyTable) -> Verdict:
    """Split iff no intermediate cohomology: rows 1..n-1 vanish."""
    return _vanishing_verdict(table, 1, table.n - 1, "horrocks")


def evans_griffith(table: CohomologyTable, rank: int, n: int) -> Verdict:
    """Low-rank refinement: rows 1..rank-1 vanish, for rank <= n."""
    if n != table.n:
        raise ValueError("n does not match the table")
    if rank < 1:
        raise ValueError("rank must be positive")
    if rank > n:
        raise InapplicableError(
            f"evans-griffith needs rank <= n, got rank {rank} on P^{n}"
        )
    return _vanishing_verdict(table, 1, rank - 1, "evans-griffith")


def kpr(table: CohomologyTable, rank: int, n: int) -> Verdict:
    """Middle-band criterion: rows 2..n-2 vanish. Applies for rank <= n-1
    on even-dimensional spaces and rank <= n-2 on odd-dimensional ones."""
    if n != table.n:
        raise ValueError("n does not match the table")
    if rank < 1:
        raise ValueError("rank must be positive")
    limit = n - 1 if n % 2 == 0 else n - 2
    if rank > limit:
        raise InapplicableError(
            f"kpr needs rank <= {limit} on P^{n} (n {'even' if n % 2 == 0 else 'odd'}), got {rank}"
        )
    return _vanishing_verdict(table, 2, n - 2, "kpr")


def acm_check(
    ideal_table: CohomologyTable, dim_z: int | None = None
) -> Verdict:
    """Arithmetically Cohen-Macaulay: rows 1..dim Z of the ideal sheaf
    vanish at all twists."""
    if dim_z is None:
        dim_z = ideal_table.dim_z
    if dim_z is None:
        raise ValueError("dimension of the subscheme is required")
    if dim_z > ideal_table.n - 1:
        raise ValueError("a proper subscheme has dimension at most n-1")
    return _vanishing_verdict(ideal_table, 1, dim_z, "acm")


def _possible_entries(table: CohomologyTable, q: int):
    """Twists where row q is possibly nonzero, enumerated from a finite
    window; None if the row cannot be enumerated."""
    w = table.window(q)
    if w is None:
        return None
    if w.empty:
        return []
    if not w.is_finite:
        return None
    out = []
    for t in range(w.lo, w.hi + 1):
        v = table.value(q, t)
        if v.possibly_nonzero:
            out.append((t, v))
    return out


def buchsbaum_numeric(
    ideal_table: CohomologyTable, dim_z: int | None = None
) -> Verdict:
    """Numeric sufficient criterion for arithmetically Buchsbaum.

    Two conditions over rows 1..dim Z. The gap condition: nonzero h^p(I(i))
    and h^q(I(j)) with p < q force (p+i) - (q+j) != 1; violated by two
    definite nonzeros -> fails. The multiplication condition concerns maps,
    which a table cannot see; the sufficient numeric form used here is that
    no row is possibly nonzero at two consecutive twists, so every
    multiplication map lands in (or starts from) a zero group. Both
    certified -> holds; gap condition intact but the multiplication
    criterion not certifiable -> undetermined.
    """
    if dim_z is None:
        dim_z = ideal_table.dim_z
    if dim_z is None:
        raise ValueError("dimension of the subscheme is required")
    if dim_z <= 0:
        return Verdict("holds", (), "buchsbaum: no intermediate rows")

    rows = range(1, dim_z + 1)

    # Definite gap violations first: they decide "fails" outright.
    definite = {
        q: sorted(
            (t, v)
            for t, v in ideal_table.rows.get(q, {}).items()
            if v.definitely_nonzero
        )
        for q in rows
    }
    for p in rows:
        for q in rows:
            if p >= q:
                continue
            for i, vp in definite[p]:
                for j, vq in definite[q]:
                    if (p + i) - (q + j) == 1:
                        return Verdict(
                            "fails",
                            ((p, i, vp), (q, j, vq)),
                            f"buchsbaum: gap condition violated, (p+i)-(q+j)=1 at p={p}, i={i}, q={q}, j={j}",
                        )

    # For a positive verdict every row must be enumerable.
    possible: dict[int, list] = {}
    for q in rows:
        entries = _possible_entries(ideal_table, q)
        if entries is None:
            return Verdict(
                "undetermined",
                (),
                f"buchsbaum: row {q} cannot be enumerated (missing or unbounded window)",
            )
        possible[q] = entries

    for p in rows:
        for q in rows:
            if p >= q:
                continue
            for i, vp in possible[p]:
                for j, vq in possible[q]:
                    if (p + i) - (q + j) == 1:
                        return Verdict(
                            "undetermined",
                            ((p, i, vp), (q, j, vq)),
                            f"buchsbaum: possible gap-condition violation at p={p}, i={i}, q={q}, j={j}",
                        )

    for q in rows:
        twists = {t for t, _ in possible[q]}
        for t in sorted(twists):
            if t + 1 in twists:
                vs = dict(possible[q])
                return Verdict(
                    "undetermined",
                    ((q, t, vs[t]), (q, t + 1, vs[t + 1])),
                    f"buchsbaum: multiplication criterion not certifiable, row {q} possibly nonzero at consecutive twists {t}, {t + 1}",
                )

    return Verdict(
        "holds",
        (),
        "buchsbaum: gap condition holds and all multiplication maps meet a zero group",
    )


def regularity(ideal_table: CohomologyTable) -> int:
    """Least m with h^q(I(m-q)) = 0 for all q > 0, stably so.

    Each row's contribution is top_q + q + 1 where top_q is the largest
    twist at which the row can be nonzero. Rows are scanned downward from
    the window's upper edge through materialized exact zeros; the first
    twist not pinned to zero is taken as top_q, so on tables with interval
    entries the result is a safe upper bound."""
    n = ideal_table.n
    best = None
    for q in range(1, n + 1):
        w = ideal_table.window(q)
        if w is None:
            raise ValueError(
                f"row {q} has no zero certificate; regularity is undecidable"
            )
        if w.empty:
            continue
        if w.hi is None:
            raise ValueError(
                f"row {q} is unbounded above; regularity is undecidable"
            )
        t = w.hi
        top = None
        while w.lo is None or t >= w.lo:
            if ideal_table.value(q, t).is_zero:
                t -= 1
                continue
            top = t
            break
        if top is None:
            continue
        cand = top + q + 1
        if best is None or cand > best:
            best = cand
    return 0 if best is None else best


def beilinson_rank_bound(table: CohomologyTable, n: int) -> int:
    """Rank lower bound n * h^{n-1}(F(-n-1)) from the Beilinson spectral
    sequence, valid on P^n, n >= 4, under three vanishing hypotheses:

      (i)   h^0(F(s)) = 0 for s <= -2;
      (ii)  h^q(F(s)) = 0 for -n-2 <= s <= -2 and 2 <= q <= n-2;
      (iii) h^{n-1}(F(s)) = 0 for s = -n-2 and -n <= s <= -2.

    Each hypothesis must be certified by the table or the bound is
    inapplicable (raised, naming the clause that blocked)."""
    if n != table.n:
        raise ValueError("n does not match the table")
    if n < 4:
        raise InapplicableError("rank bound needs n >= 4")

    w0 = table.window(0)
    if w0 is None:
        raise InapplicableError(
            "clause (i) not certifiable: row 0 has no zero certificate"
        )
    if not w0.empty:
        if w0.lo is None:
            raise InapplicableError(
                "clause (i) not certifiable: row 0 unbounded below"
            )
        for s in range(w0.lo, -1):
            if not table.value(0, s).is_zero:
                raise InapplicableError(
                    f"clause (i) fails: h^0 at twist {s} not certified zero"
                )

    for q in range(2, n - 1):
        for s in range(-n - 2, -1):
            if not table.value(q, s).is_zero:
                raise InapplicableError(
                    f"clause (ii) fails: h^{q} at twist {s} not certified zero"
                )

    for s in [-n - 2, *range(-n, -1)]:
        if not table.value(n - 1, s).is_zero:
            raise InapplicableError(
                f"clause (iii) fails: h^{n - 1} at twist {s} not certified zero"
            )

    a = table.value(n - 1, -n - 1)
    if not a.is_exact:
        raise InapplicableError(
            f"h^{n - 1} at twist {-n - 1} is not exact: {a}"
        )
    return n * a.lo
