"""The enhanced-state chain complex and its boundary matrices.

The differential acts on an enhanced state by turning one blue (A) scar
red at a time.  Turning the scar at crossing x red either merges the two
circles it touches or splits its single circle, and the circle signs
follow the usual rules: mergings (+,+) -> +, (+,-) -> -, (-,+) -> -, and
nothing on (-,-); splittings + -> (+,-) + (-,+) and - -> (-,-).  Each
term carries the sign (-1)^k, where k counts the B-labels at crossings
ordered before x.
"""

from __future__ import annotations

from typing import Optional

from .diagram import Diagram
from .smoothing import Chain, EnhancedState, degrees, enumerate_states, smooth


def differential(diagram: Diagram, arg) -> Chain:
    """d of an enhanced state or of a chain (extended linearly)."""
    if isinstance(arg, Chain):
        i, j = arg.i, arg.j
        out = Chain(diagram, i + 1, j)
        for state, c in arg.coeffs.items():
            out = out + c * _differential_state(diagram, state)
        return out
    return _differential_state(diagram, EnhancedState(*arg))


def _differential_state(diagram: Diagram, state: EnhancedState) -> Chain:
    labels, plus = state
    i = bin(labels).count("1")
    sm = smooth(diagram, labels)
    j = i + 2 * bin(plus).count("1") - sm.circles
    coeffs: dict[EnhancedState, int] = {}
    k = 0  # number of B labels before the current crossing
    for x in range(diagram.n_total):
        if labels >> x & 1:
            k += 1
            continue
        side0, side1 = sm.scar_sides[x]
        sign = -1 if k & 1 else 1
        new_labels = labels | (1 << x)
        tm = smooth(diagram, new_labels)
        if side0 != side1:  # merging
            s0 = plus >> side0 & 1
            s1 = plus >> side1 & 1
            if not s0 and not s1:
                continue  # (-,-) kills the term
            merged_plus = _transfer_signs(sm, tm, plus)
            target = tm.scar_sides[x][0]
            if s0 and s1:
                merged_plus |= 1 << target
            else:
                merged_plus &= ~(1 << target)
            _add(coeffs, EnhancedState(new_labels, merged_plus), sign)
        else:  # splitting
            c0, c1 = tm.scar_sides[x]
            base_plus = _transfer_signs(sm, tm, plus) & ~(1 << c0) & ~(1 << c1)
            if plus >> side0 & 1:  # + -> (+,-) + (-,+)
                _add(coeffs, EnhancedState(new_labels, base_plus | (1 << c0)), sign)
                _add(coeffs, EnhancedState(new_labels, base_plus | (1 << c1)), sign)
            else:  # - -> (-,-)
                _add(coeffs, EnhancedState(new_labels, base_plus), sign)
    return Chain(diagram, i + 1, j, coeffs, check=False)


def _transfer_signs(sm, tm, plus: int) -> int:
    """Carry the signs of the untouched circles from sm to tm.

    Circles are matched through a shared edge; the one or two circles
    touched by the change crossing are overwritten by the caller.
    """
    out = 0
    for c, min_edge in enumerate(sm.min_edges):
        if plus >> c & 1:
            out |= 1 << tm.circle_of_edge[min_edge]
    return out


def _add(coeffs: dict, state: EnhancedState, value: int) -> None:
    v = coeffs.get(state, 0) + value
    if v:
        coeffs[state] = v
    else:
        coeffs.pop(state, None)


def incidence(diagram: Diagram, s, t) -> int:
    """The incidence number i(s, t) in {-1, 0, +1}.

    Nonzero iff t is adjacent to s: same labels except a single crossing
    changing A -> B, equal quantum degree, equal signs on the common
    circles and an allowed merge/split sign transition; the value is
    then (-1)^k with k the number of B labels of s before the change
    crossing.
    """
    s = EnhancedState(*s)
    t = EnhancedState(*t)
    flips = s.labels ^ t.labels
    if flips == 0 or flips & (flips - 1):
        return 0
    if s.labels & flips:
        return 0  # the change must be A -> B in s
    x = flips.bit_length() - 1
    si, _, sj = degrees(diagram, s)
    ti, _, tj = degrees(diagram, t)
    if ti != si + 1 or tj != sj:
        return 0
    sm = smooth(diagram, s.labels)
    tm = smooth(diagram, t.labels)
    # common circles keep their signs
    touched_s = set(sm.scar_sides[x])
    for c, min_edge in enumerate(sm.min_edges):
        if c in touched_s:
            continue
        if (s.plus >> c & 1) != (t.plus >> tm.circle_of_edge[min_edge] & 1):
            return 0
    side0, side1 = sm.scar_sides[x]
    c0, c1 = tm.scar_sides[x]
    if side0 != side1:  # merging
        a = s.plus >> side0 & 1
        b = s.plus >> side1 & 1
        merged = t.plus >> c0 & 1
        if (a, b) == (0, 0):
            return 0
        if merged != (a and b):
            return 0
    else:  # splitting
        a = s.plus >> side0 & 1
        u = t.plus >> c0 & 1
        v = t.plus >> c1 & 1
        if a and (u, v) not in ((1, 0), (0, 1)):
            return 0
        if not a and (u, v) != (0, 0):
            return 0
    k = bin(s.labels & ((1 << x) - 1)).count("1")
    return -1 if k & 1 else 1


class SparseIntMatrix:
    """A sparse integer matrix stored as one dict per row."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int,
                 rows: Optional[list[dict[int, int]]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.rows[rc[0]].get(rc[1], 0)

    def set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows[r][c] = v
        else:
            self.rows[r].pop(c, None)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.nrows, self.ncols,
                               [dict(r) for r in self.rows])

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        m = cls(n, n)
        for k in range(n):
            m.rows[k][k] = 1
        return m

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseIntMatrix(self.nrows, other.ncols)
        for r, row in enumerate(self.rows):
            acc: dict[int, int] = {}
            for k, v in row.items():
                for c, w in other.rows[k].items():
                    x = acc.get(c, 0) + v * w
                    if x:
                        acc[c] = x
                    else:
                        del acc[c]
            out.rows[r] = acc
        return out

    def apply(self, vec: list[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum(v * vec[c] for c, v in row.items()) for row in self.rows]

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def to_dense(self) -> list[list[int]]:
        return [[row.get(c, 0) for c in range(self.ncols)] for row in self.rows]

    def dump_coordinate(self) -> str:
        """Coordinate-list text format: header `rows cols nnz`, then one
        `i j value` line per entry (1-based indices)."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz()}"]
        for r, row in enumerate(self.rows):
            for c in sorted(row):
                lines.append(f"{r + 1} {c + 1} {row[c]}")
        return "\n".join(lines)


def boundary_matrix(diagram: Diagram, i: int, j: int,
                    basis_from: Optional[list[EnhancedState]] = None,
                    basis_to: Optional[list[EnhancedState]] = None
                    ) -> SparseIntMatrix:
    """Matrix of d_i : C^{i,j} -> C^{i+1,j} in the canonical bases.

    Built column by column from the differential of each basis state;
    column s, row t holds the incidence number i(s, t).
    """
    if basis_from is None:
        basis_from = enumerate_states(diagram, i, j)
    if basis_to is None:
        basis_to = enumerate_states(diagram, i + 1, j)
    index = {state: r for r, state in enumerate(basis_to)}
    mat = SparseIntMatrix(len(basis_to), len(basis_from))
    for col, state in enumerate(basis_from):
        for tstate, c in _differential_state(diagram, state).coeffs.items():
            mat.rows[index[tstate]][col] = c
    return mat
