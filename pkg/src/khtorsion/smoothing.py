"""Kauffman states, smoothed diagrams, enhanced states and chains.

A Kauffman state is a bitmask over the crossings of a diagram (bit set =
B label).  Smoothing resolves every crossing according to its label; the
resulting circles are computed by union-find over the edges, and each
crossing leaves a scar (blue for A, red for B) whose endpoints lie on
one or two circles.

An enhanced state assigns a sign to every circle; it is stored as the
pair ``(labels, plus)`` of bitmasks, where bit c of ``plus`` is the sign
of the circle with canonical index c.  Circles are indexed by the
minimal edge label they contain, so equal smoothings compare bit-equal
across runs.

Degrees: i = number of B labels, theta = (#plus) - (#minus) circles,
j = i + theta.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .diagram import Diagram


class SmoothingError(ValueError):
    """Invalid state or enhanced state for the given diagram."""


class Smoothing:
    """The circles-and-scars picture of one Kauffman state.

    Attributes:
        labels: the state bitmask (bit set = B).
        circles: number of circles.
        circle_of_edge: edge label -> canonical circle index.
        min_edges: canonical circle index -> minimal edge label on it.
        scar_sides: per crossing, the pair (side0, side1) of circle
            indices its scar touches; side0 is the circle through the
            joined pair containing slot 0.
    """

    __slots__ = ("labels", "circles", "circle_of_edge", "min_edges",
                 "scar_sides")

    def __init__(self, diagram: Diagram, labels: int):
        self.labels = labels
        parent: dict[int, int] = {e: e for e in diagram.edges}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry

        for ci, crossing in enumerate(diagram.crossings):
            a, b, c, d = crossing.edges
            if labels >> ci & 1:  # B joins (1,2) and (3,0)
                union(b, c)
                union(d, a)
            else:  # A joins (0,1) and (2,3)
                union(a, b)
                union(c, d)

        roots = sorted({find(e) for e in parent})
        index = {r: k for k, r in enumerate(roots)}
        self.circles = len(roots)
        self.circle_of_edge = {e: index[find(e)] for e in parent}
        self.min_edges = tuple(roots)
        sides = []
        for ci, crossing in enumerate(diagram.crossings):
            a, b, c, d = crossing.edges
            if labels >> ci & 1:
                sides.append((self.circle_of_edge[a], self.circle_of_edge[b]))
            else:
                sides.append((self.circle_of_edge[a], self.circle_of_edge[c]))
        self.scar_sides = tuple(sides)

    def is_monochord(self, crossing_index: int) -> bool:
        s0, s1 = self.scar_sides[crossing_index]
        return s0 == s1


def smooth(diagram: Diagram, labels: int) -> Smoothing:
    """Smooth the diagram according to the state; results are cached on
    the diagram and shared (read-only) between callers."""
    if labels < 0 or labels >> diagram.n_total:
        raise SmoothingError(
            f"state 0x{labels:x} does not match a {diagram.n_total}-crossing diagram")
    cache = diagram._smooth_cache
    sm = cache.get(labels)
    if sm is None:
        sm = cache[labels] = Smoothing(diagram, labels)
    return sm


def state_A(diagram: Diagram) -> int:
    """The all-A state."""
    return 0


def state_B(diagram: Diagram) -> int:
    return (1 << diagram.n_total) - 1


def signed_state(diagram: Diagram) -> int:
    """A-labels on positive crossings, B-labels on negative ones."""
    mask = 0
    for ci, crossing in enumerate(diagram.crossings):
        if crossing.sign < 0:
            mask |= 1 << ci
    return mask


class EnhancedState(NamedTuple):
    """A Kauffman state with a sign on every circle (bit set = plus)."""

    labels: int
    plus: int


def degrees(diagram: Diagram, state: EnhancedState) -> tuple[int, int, int]:
    """(i, theta, j) of an enhanced state."""
    sm = smooth(diagram, state.labels)
    if state.plus >> sm.circles:
        raise SmoothingError("sign bitmask does not fit the circle count")
    i = bin(state.labels).count("1")
    plus = bin(state.plus).count("1")
    theta = 2 * plus - sm.circles
    return i, theta, i + theta


def enumerate_states(diagram: Diagram, i: int, j: int) -> list[EnhancedState]:
    """All enhanced states of degree (i, j), in canonical order.

    Order: label bitmask ascending, then sign bitmask ascending.
    """
    if i < 0 or i > diagram.n_total:
        return []
    out = []
    for labels in _masks_with_popcount(diagram.n_total, i):
        sm = smooth(diagram, labels)
        theta = j - i
        two_plus = sm.circles + theta
        if two_plus < 0 or two_plus % 2 or two_plus > 2 * sm.circles:
            continue
        for plus in _masks_with_popcount(sm.circles, two_plus // 2):
            out.append(EnhancedState(labels, plus))
    return out


def _masks_with_popcount(width: int, k: int) -> Iterator[int]:
    """Bitmasks of the given width with exactly k bits set, ascending."""
    if k < 0 or k > width:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << width
    while mask < limit:
        yield mask
        # Gosper's hack: next mask with the same popcount
        low = mask & -mask
        ripple = mask + low
        mask = ripple | ((mask ^ ripple) >> (low.bit_length() + 1))


class Chain:
    """An integer linear combination of enhanced states of fixed (i, j).

    Zero coefficients are dropped; two chains are equal iff their
    coefficient maps are equal.  Degree bookkeeping is enforced: all
    member states must live in the same (i, j).
    """

    __slots__ = ("diagram", "i", "j", "coeffs")

    def __init__(self, diagram: Diagram, i: int, j: int,
                 coeffs: Optional[dict[EnhancedState, int]] = None,
                 check: bool = True):
        self.diagram = diagram
        self.i = i
        self.j = j
        self.coeffs: dict[EnhancedState, int] = {}
        if coeffs:
            for state, c in coeffs.items():
                if c == 0:
                    continue
                state = EnhancedState(*state)
                if check:
                    di, _, dj = degrees(diagram, state)
                    if (di, dj) != (i, j):
                        raise SmoothingError(
                            f"state at degree ({di},{dj}) in a ({i},{j}) chain")
                self.coeffs[state] = c

    @classmethod
    def zero(cls, diagram: Diagram, i: int, j: int) -> "Chain":
        return cls(diagram, i, j)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Chain) and self.diagram == other.diagram
                and self.coeffs == other.coeffs
                and (self.is_zero() or (self.i, self.j) == (other.i, other.j)))

    def __hash__(self):
        if not self.coeffs:
            return hash(())  # zero chains compare equal across degrees
        return hash((self.i, self.j, frozenset(self.coeffs.items())))

    def _compat(self, other: "Chain") -> None:
        if self.diagram != other.diagram:
            raise SmoothingError("chains over different diagrams")
        if not self.is_zero() and not other.is_zero() and \
                (self.i, self.j) != (other.i, other.j):
            raise SmoothingError(
                f"degree mismatch: ({self.i},{self.j}) vs ({other.i},{other.j})")

    def __add__(self, other: "Chain") -> "Chain":
        self._compat(other)
        coeffs = dict(self.coeffs)
        for s, c in other.coeffs.items():
            c2 = coeffs.get(s, 0) + c
            if c2:
                coeffs[s] = c2
            else:
                coeffs.pop(s, None)
        return Chain(self.diagram, self.i, self.j, coeffs, check=False)

    def __neg__(self) -> "Chain":
        return self * -1

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar: int) -> "Chain":
        if scalar == 0:
            return Chain(self.diagram, self.i, self.j)
        return Chain(self.diagram, self.i, self.j,
                     {s: scalar * c for s, c in self.coeffs.items()},
                     check=False)

    __rmul__ = __mul__

    def coefficient(self, state: EnhancedState) -> int:
        return self.coeffs.get(EnhancedState(*state), 0)

    def states(self) -> list[EnhancedState]:
        return sorted(self.coeffs)

    def to_json(self) -> list[list]:
        return [[format(s.labels, "x"), format(s.plus, "x"), c]
                for s, c in sorted(self.coeffs.items())]

    def __repr__(self):
        if self.is_zero():
            return f"Chain(0; i={self.i}, j={self.j})"
        terms = ", ".join(f"{c}*({s.labels:#x},{s.plus:#x})"
                          for s, c in sorted(self.coeffs.items()))
        return f"Chain({terms}; i={self.i}, j={self.j})"
