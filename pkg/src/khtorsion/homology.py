"""Integer Khovanov homology via Smith normal form.

Homology at (i, j) is ker(d_i) / im(d_{i-1}): the free rank is
dim ker(d_i) - rank(d_{i-1}) and the torsion is read off the invariant
factors of d_{i-1}.  The Smith normal form is computed by fraction-free
integer elimination with pivots chosen of smallest magnitude (ties by
least fill); Python integers keep everything exact.

`is_exact` solves d(y) = v over the integers using the transforms
U M V = S: with b = U v the system is solvable iff b_t is divisible by
the t-th invariant factor (and b vanishes beyond the rank), in which
case y = V z is a witness.  `class_order` applies this to m v for the
divisors m of the exponent bound (the largest invariant factor).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional

from .chaincomplex import SparseIntMatrix, boundary_matrix, differential
from .diagram import Diagram
from .smoothing import Chain, EnhancedState, enumerate_states, smooth


class SizeGuardError(RuntimeError):
    """Diagram too large for full enhanced-state enumeration."""

    def __init__(self, n_total: int, limit: int):
        super().__init__(
            f"diagram has {n_total} crossings, above the enumeration guard "
            f"({limit}); raise the limit explicitly to proceed")
        self.n_total = n_total
        self.limit = limit


class NotACycleError(ValueError):
    """The chain handed to an exactness query is not a cycle."""


DEFAULT_CROSSING_LIMIT = 18


@dataclass
class SNFResult:
    """U @ M @ V = S with S = diag(factors) padded by zeros."""

    u: Optional[SparseIntMatrix]
    v: Optional[SparseIntMatrix]
    factors: list[int]
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.factors)

    def s_matrix(self) -> SparseIntMatrix:
        s = SparseIntMatrix(self.nrows, self.ncols)
        for t, d in enumerate(self.factors):
            s.rows[t][t] = d
        return s


def smith_normal_form(matrix: SparseIntMatrix,
                      transforms: bool = True) -> SNFResult:
    """Smith normal form of an integer matrix.

    Returns factors in divisibility order (each dividing the next, all
    positive) plus unimodular U, V when `transforms` is set.  Pivots are
    chosen of smallest magnitude with least Markowitz fill through a
    lazily revalidated heap; rows and columns are never physically
    swapped during elimination, the permutation is applied to the
    transforms at the end.
    """
    m = matrix.copy()
    nrows, ncols = m.nrows, m.ncols
    u = SparseIntMatrix.identity(nrows) if transforms else None
    # V is maintained column-major: vcols[c] = dict row -> value
    vcols = [{c: 1} for c in range(ncols)] if transforms else None

    col_rows: list[set[int]] = [set() for _ in range(ncols)]
    for r, row in enumerate(m.rows):
        for c in row:
            col_rows[c].add(r)

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        if q == 0:
            return
        rdst, rsrc = m.rows[dst], m.rows[src]
        for c, v in rsrc.items():
            x = rdst.get(c, 0) + q * v
            if x:
                if c not in rdst:
                    col_rows[c].add(dst)
                rdst[c] = x
            elif c in rdst:
                col_rows[c].discard(dst)
                del rdst[c]
        if u is not None:
            udst, usrc = u.rows[dst], u.rows[src]
            for c, v in usrc.items():
                x = udst.get(c, 0) + q * v
                if x:
                    udst[c] = x
                elif c in udst:
                    del udst[c]

    def add_col(src, dst, q):
        # col[dst] += q * col[src]
        if q == 0:
            return
        for r in list(col_rows[src]):
            row = m.rows[r]
            v = row[src]
            x = row.get(dst, 0) + q * v
            if x:
                if dst not in row:
                    col_rows[dst].add(r)
                row[dst] = x
            elif dst in row:
                col_rows[dst].discard(r)
                del row[dst]
        if vcols is not None:
            cdst, csrc = vcols[dst], vcols[src]
            for r, v in csrc.items():
                x = cdst.get(r, 0) + q * v
                if x:
                    cdst[r] = x
                elif r in cdst:
                    del cdst[r]

    heap: list[tuple[int, int, int, int]] = []

    def push_row(r):
        row = m.rows[r]
        if not row:
            return
        lr = len(row) - 1
        for c, v in row.items():
            heap.append((v if v > 0 else -v,
                         lr * (len(col_rows[c]) - 1), r, c))

    for r in range(nrows):
        push_row(r)
    heapq.heapify(heap)

    done_rows: set[int] = set()
    done_cols: set[int] = set()
    pivots: list[tuple[int, int]] = []

    while heap:
        a, fill, pr, pc = heapq.heappop(heap)
        if pr in done_rows or pc in done_cols:
            continue
        v = m.rows[pr].get(pc)
        if v is None:
            continue
        key = (v if v > 0 else -v,
               (len(m.rows[pr]) - 1) * (len(col_rows[pc]) - 1))
        if key != (a, fill):
            heapq.heappush(heap, (key[0], key[1], pr, pc))
            continue
        touched: set[int] = set()
        while True:
            pivot = m.rows[pr][pc]
            changed = False
            for r2 in list(col_rows[pc]):
                if r2 == pr:
                    continue
                add_row(pr, r2, -(m.rows[r2][pc] // pivot))
                touched.add(r2)
                if m.rows[r2].get(pc):
                    pr = r2  # the remainder is the smaller pivot
                    changed = True
                    break
            if changed:
                continue
            pivot = m.rows[pr][pc]
            for c2 in list(m.rows[pr]):
                if c2 == pc:
                    continue
                add_col(pc, c2, -(m.rows[pr][c2] // pivot))
                if m.rows[pr].get(c2):
                    pc = c2
                    changed = True
                    break
            if changed:
                continue
            if len(m.rows[pr]) == 1 and len(col_rows[pc]) == 1:
                break
        if m.rows[pr][pc] < 0:
            m.rows[pr][pc] = -m.rows[pr][pc]
            if u is not None:
                u.rows[pr] = {c: -v for c, v in u.rows[pr].items()}
        done_rows.add(pr)
        done_cols.add(pc)
        pivots.append((pr, pc))
        for r2 in touched:
            if r2 not in done_rows:
                push_row(r2)
        # keep the heap from degenerating on repeated stale pushes
        if len(heap) > 8 * (m.nnz() + 1):
            live = [(vv if vv > 0 else -vv,
                     (len(m.rows[r]) - 1) * (len(col_rows[c]) - 1), r, c)
                    for r in range(nrows) if r not in done_rows
                    for c, vv in m.rows[r].items() if c not in done_cols]
            heap.clear()
            heap.extend(live)
            heapq.heapify(heap)

    factors = [m.rows[r][c] for r, c in pivots]

    if not transforms:
        # refine the diagonal multiset into invariant factors
        changed = True
        while changed:
            changed = False
            for t in range(len(factors) - 1):
                a, b = factors[t], factors[t + 1]
                if b % a:
                    g = math.gcd(a, b)
                    factors[t], factors[t + 1] = g, a // g * b
                    changed = True
        factors.sort()
        return SNFResult(None, None, factors, nrows, ncols)

    # permute the pivots onto the leading diagonal
    row_order = [r for r, _ in pivots] +         [r for r in range(nrows) if r not in done_rows]
    col_order = [c for _, c in pivots] +         [c for c in range(ncols) if c not in done_cols]
    m2 = SparseIntMatrix(nrows, ncols)
    for t, (r, c) in enumerate(pivots):
        m2.rows[t][t] = m.rows[r][c]
    m = m2
    col_rows = [set([t]) if t < len(pivots) else set()
                for t in range(ncols)]
    u = SparseIntMatrix(nrows, nrows, [u.rows[r] for r in row_order])
    vcols = [vcols[c] for c in col_order]

    # enforce divisibility d_t | d_{t+1} on the (now) diagonal matrix
    changed = True
    while changed:
        changed = False
        for t in range(len(factors) - 1):
            a, b = m.rows[t].get(t, 0), m.rows[t + 1].get(t + 1, 0)
            if b % a == 0:
                continue
            changed = True
            g = math.gcd(a, b)
            # R_t += R_{t+1}; columns (t, t+1) <- the gcd combination;
            # then R_{t+1} -= (b y / g) R_t.
            _, x, y = _xgcd(a, b)
            add_row(t + 1, t, 1)
            _col_gcd_step(m, vcols, col_rows, t, t + 1, a, b, x, y)
            q = m.rows[t + 1].get(t, 0) // m.rows[t][t]
            add_row(t, t + 1, -q)
    factors = [m.rows[t][t] for t in range(len(pivots))]

    v = SparseIntMatrix(ncols, ncols)
    for c, col in enumerate(vcols):
        for r, val in col.items():
            v.rows[r][c] = val
    return SNFResult(u, v, factors, nrows, ncols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a x + b y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _col_gcd_step(m, vcols, col_rows, c1, c2, a, b, x, y):
    """Columns (c1, c2) <- (x c1 + y c2, -(b/g) c1 + (a/g) c2).

    The transform [[x, -b/g], [y, a/g]] has determinant 1.
    """
    g = math.gcd(a, b)
    for r in list(col_rows[c1] | col_rows[c2]):
        row = m.rows[r]
        v1, v2 = row.get(c1, 0), row.get(c2, 0)
        n1 = x * v1 + y * v2
        n2 = -(b // g) * v1 + (a // g) * v2
        for c, nv in ((c1, n1), (c2, n2)):
            if nv:
                col_rows[c].add(r)
                row[c] = nv
            else:
                col_rows[c].discard(r)
                row.pop(c, None)
    if vcols is not None:
        w1, w2 = {}, {}
        for r in set(vcols[c1]) | set(vcols[c2]):
            v1 = vcols[c1].get(r, 0)
            v2 = vcols[c2].get(r, 0)
            n1 = x * v1 + y * v2
            n2 = -(b // g) * v1 + (a // g) * v2
            if n1:
                w1[r] = n1
            if n2:
                w2[r] = n2
        vcols[c1], vcols[c2] = w1, w2


# ---------------------------------------------------------------------------
# cached per-diagram linear algebra
# ---------------------------------------------------------------------------


def _cache(diagram: Diagram) -> dict:
    if diagram._solver is None:
        diagram._solver = {}
    return diagram._solver


def basis(diagram: Diagram, i: int, j: int) -> list[EnhancedState]:
    key = ("basis", i, j)
    store = _cache(diagram)
    if key not in store:
        store[key] = enumerate_states(diagram, i, j)
    return store[key]


def matrix_d(diagram: Diagram, i: int, j: int) -> SparseIntMatrix:
    """Boundary matrix d_i at quantum degree j (cached)."""
    key = ("mat", i, j)
    store = _cache(diagram)
    if key not in store:
        store[key] = boundary_matrix(diagram, i, j,
                                     basis(diagram, i, j),
                                     basis(diagram, i + 1, j))
    return store[key]


def _snf(diagram: Diagram, i: int, j: int, transforms: bool) -> SNFResult:
    key = ("snft" if transforms else "snf", i, j)
    store = _cache(diagram)
    if key not in store:
        if transforms and ("snf", i, j) in store:
            pass  # recompute with transforms; the cheap result stays valid
        store[key] = smith_normal_form(matrix_d(diagram, i, j), transforms)
    return store[key]


def homology_at(diagram: Diagram, i: int, j: int) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion invariant factors > 1) of Kh^{i,j}(D)."""
    dim = len(basis(diagram, i, j))
    rank_di = _snf(diagram, i, j, transforms=False).rank
    prev = _snf(diagram, i - 1, j, transforms=False)
    free = dim - rank_di - prev.rank
    torsion = tuple(d for d in prev.factors if d > 1)
    return free, torsion


# ---------------------------------------------------------------------------
# the full table
# ---------------------------------------------------------------------------


class KhovanovTable:
    """Integer Khovanov homology of a diagram, in both gradings.

    Entries are stored in diagram degrees (i, j); the link degrees are
    h = i - n and q = j + p - 2n.
    """

    def __init__(self, entries: dict[tuple[int, int], tuple[int, tuple[int, ...]]],
                 p: int, n: int):
        self.entries = {k: v for k, v in entries.items()
                        if v[0] or v[1]}
        self.p = p
        self.n = n

    def entry(self, i: int, j: int) -> tuple[int, tuple[int, ...]]:
        return self.entries.get((i, j), (0, ()))

    def entry_hq(self, h: int, q: int) -> tuple[int, tuple[int, ...]]:
        return self.entry(h + self.n, q - self.p + 2 * self.n)

    def hq_entries(self) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
        return {(i - self.n, j + self.p - 2 * self.n): v
                for (i, j), v in self.entries.items()}

    def torsion_positions(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """(i, j) -> invariant factors, restricted to torsion entries."""
        return {k: v[1] for k, v in self.entries.items() if v[1]}

    def has_torsion(self) -> bool:
        return any(v[1] for v in self.entries.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, KhovanovTable)
                and self.entries == other.entries
                and (self.p, self.n) == (other.p, other.n))

    def to_json(self) -> dict:
        table = {f"{i},{j}": {"rank": r, "torsion": list(t)}
                 for (i, j), (r, t) in sorted(self.entries.items())}
        return {"schema": 1, "offsets": {"p": self.p, "n": self.n},
                "table": table}

    def render_text(self) -> str:
        """Two-variable text grid: rows j descending, columns i ascending,
        with the link degrees (h, q) alongside."""
        if not self.entries:
            return "(empty homology)"
        is_ = sorted({i for i, _ in self.entries})
        js = sorted({j for _, j in self.entries}, reverse=True)
        irange = list(range(is_[0], is_[-1] + 1))

        def cell(i, j):
            r, tors = self.entry(i, j)
            parts = []
            if r == 1:
                parts.append("Z")
            elif r > 1:
                parts.append(f"Z^{r}")
            parts.extend(f"Z{d}" for d in tors)
            return "+".join(parts)

        head = ["j\\i (q\\h)"] + [f"{i} ({i - self.n})" for i in irange]
        rows = [head]
        for j in js:
            q = j + self.p - 2 * self.n
            rows.append([f"{j} ({q})"] + [cell(i, j) for i in irange])
        widths = [max(len(r[k]) for r in rows) for k in range(len(head))]
        lines = ["  ".join(r[k].rjust(widths[k]) for k in range(len(r)))
                 for r in rows]
        return "\n".join(lines)


def khovanov_table(diagram: Diagram,
                   limit: int = DEFAULT_CROSSING_LIMIT) -> KhovanovTable:
    """Full integer Khovanov homology table of the diagram."""
    if diagram.n_total > limit:
        raise SizeGuardError(diagram.n_total, limit)
    # quantum support per homological degree
    support: set[tuple[int, int]] = set()
    for labels in range(1 << diagram.n_total):
        i = bin(labels).count("1")
        m = smooth(diagram, labels).circles
        for plus_count in range(m + 1):
            support.add((i, i + 2 * plus_count - m))
    entries = {}
    for (i, j) in sorted(support):
        free, torsion = homology_at(diagram, i, j)
        if free or torsion:
            entries[(i, j)] = (free, torsion)
    p, n, _ = diagram.stats()
    return KhovanovTable(entries, p, n)


# ---------------------------------------------------------------------------
# exactness oracle
# ---------------------------------------------------------------------------


def is_exact(chain: Chain) -> tuple[bool, Optional[Chain]]:
    """Decide whether the cycle is a boundary, with an integral witness.

    Returns (True, y) with d(y) = chain, or (False, None).  Raises
    NotACycleError if d(chain) != 0.
    """
    diagram = chain.diagram
    if not differential(diagram, chain).is_zero():
        raise NotACycleError("is_exact needs a cycle")
    i, j = chain.i, chain.j
    if chain.is_zero():
        return True, Chain(diagram, i - 1, j)
    b_to = basis(diagram, i, j)
    b_from = basis(diagram, i - 1, j)
    index = {s: r for r, s in enumerate(b_to)}
    vec = [0] * len(b_to)
    for s, c in chain.coeffs.items():
        vec[index[s]] = c
    if not b_from:
        return False, None
    snf = _snf(diagram, i - 1, j, transforms=True)
    b = snf.u.apply(vec)
    z = [0] * snf.ncols
    for t, d in enumerate(snf.factors):
        if b[t] % d:
            return False, None
        z[t] = b[t] // d
    if any(b[t] for t in range(snf.rank, snf.nrows)):
        return False, None
    y = snf.v.apply(z)
    witness = Chain(diagram, i - 1, j,
                    {b_from[k]: y[k] for k in range(len(b_from)) if y[k]},
                    check=False)
    return True, witness


def class_order(chain: Chain):
    """Order of the homology class of the cycle: an integer, or math.inf.

    The order divides the exponent of the torsion subgroup, i.e. the
    largest invariant factor of d_{i-1}; each divisor is tested through
    the exactness oracle.
    """
    exact, _ = is_exact(chain)
    if exact:
        return 1
    snf = _snf(chain.diagram, chain.i - 1, chain.j, transforms=False)
    bound = snf.factors[-1] if snf.factors else 1
    for m in sorted(_divisors(bound)):
        if m == 1:
            continue
        exact, _ = is_exact(m * chain)
        if exact:
            return m
    return math.inf


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
