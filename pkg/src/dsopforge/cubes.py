"""Cube algebra over positional trit strings.

A cube is a product term over n Boolean variables, written as a string
of trits where character i describes variable i: '0' for a negated
literal, '1' for a plain literal, '-' for a free (unbound) variable.
So "01--" over four variables binds x1=0 and x2=1 and leaves x3, x4
free, covering the four minterms 0100, 0101, 0110, 0111.

Internally a cube stores two integer masks: `mask` has bit i set when
variable i is bound, and `bits` holds the bound value at those
positions (zero elsewhere). Intersection, containment and literal
counting are then word-parallel bit operations. All values are
immutable; operations return new cubes.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Cube",
    "DimensionMismatch",
    "ContractViolation",
    "intersect",
    "contains",
    "common_literal_count",
    "disjoint_sharp",
]


class DimensionMismatch(ValueError):
    """Two cubes over different variable counts were combined."""


class ContractViolation(ValueError):
    """An operation was invoked outside its stated precondition."""


@dataclass(frozen=True, slots=True)
class Cube:
    """An n-variable product term: bit i of `mask` set iff variable i is
    bound; `bits` gives the bound values and is a subset of `mask`."""

    n: int
    mask: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ContractViolation(f"negative variable count {self.n}")
        space = (1 << self.n) - 1
        if self.mask & ~space:
            raise ContractViolation("mask binds variables beyond n")
        if self.bits & ~self.mask:
            raise ContractViolation("bits set outside bound positions")

    @classmethod
    def from_string(cls, trits: str) -> "Cube":
        """Build a cube from a trit string such as "01--"."""
        if not trits:
            raise ValueError("empty trit string")
        mask = 0
        bits = 0
        for i, ch in enumerate(trits):
            if ch == "-":
                continue
            if ch == "0":
                mask |= 1 << i
            elif ch == "1":
                mask |= 1 << i
                bits |= 1 << i
            else:
                raise ValueError(f"invalid trit {ch!r} at position {i}")
        return cls(len(trits), mask, bits)

    @classmethod
    def universe(cls, n: int) -> "Cube":
        """The all-free cube covering every point of the n-space."""
        return cls(n, 0, 0)

    @classmethod
    def from_minterm(cls, n: int, index: int) -> "Cube":
        """The fully bound cube for one minterm; bit i of `index` is the
        value of variable i."""
        space = (1 << n) - 1
        if index & ~space:
            raise ValueError(f"minterm {index} out of range for n={n}")
        return cls(n, space, index)

    def to_string(self) -> str:
        out = []
        for i in range(self.n):
            b = 1 << i
            if not self.mask & b:
                out.append("-")
            elif self.bits & b:
                out.append("1")
            else:
                out.append("0")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Cube({self.to_string()!r})"

    @property
    def literal_count(self) -> int:
        """Number of bound variables (k in weight formulas)."""
        return self.mask.bit_count()

    @property
    def dimension(self) -> int:
        """Number of free variables; the cube covers 2**dimension points."""
        return self.n - self.mask.bit_count()

    @property
    def is_minterm(self) -> bool:
        return self.mask == (1 << self.n) - 1

    @property
    def is_universe(self) -> bool:
        return self.mask == 0

    def covers_minterm(self, index: int) -> bool:
        """True iff the minterm (bit i = value of variable i) lies in the cube."""
        return (index & self.mask) == self.bits

    def point_mask(self) -> int:
        """Characteristic bitmask of the cube's minterm set: bit m is set
        iff the cube covers minterm m. Intended for small n; the result
        has 2**n bits."""
        out = 1
        for i in range(self.n):
            b = 1 << i
            if not self.mask & b:
                out |= out << (1 << i)
            elif self.bits & b:
                out <<= 1 << i
        return out


def _check_same_n(p: Cube, q: Cube) -> None:
    if p.n != q.n:
        raise DimensionMismatch(f"cube widths differ: {p.n} vs {q.n}")


def intersect(p: Cube, q: Cube) -> Cube | None:
    """Largest cube contained in both, or None when they share no point.

    The intersection is empty exactly when some variable is bound to
    opposite values; otherwise it binds the union of the bound literals.
    """
    _check_same_n(p, q)
    if (p.mask & q.mask) & (p.bits ^ q.bits):
        return None
    return Cube(p.n, p.mask | q.mask, p.bits | q.bits)


def contains(p: Cube, q: Cube) -> bool:
    """True iff q's point set is a subset of p's (every literal of p
    appears in q with the same value)."""
    _check_same_n(p, q)
    return not (p.mask & ~q.mask) and not ((p.bits ^ q.bits) & p.mask)


def common_literal_count(p: Cube, q: Cube) -> int:
    """Number of variables bound to the same value in both cubes."""
    _check_same_n(p, q)
    return ((p.mask & q.mask) & ~(p.bits ^ q.bits)).bit_count()


def disjoint_sharp(q: Cube, p: Cube) -> list[Cube]:
    """Split q \\ p into pairwise-disjoint cubes.

    Scans variables in ascending index order. For each position where q
    is free but the intersection r = q & p is bound, one fragment is
    emitted: a copy of q with all earlier such positions fixed to r's
    value and the current position set to the complement of r's value.
    Exactly literal_count(r) - literal_count(q) fragments result; the
    list is empty iff p contains q. Requires a nonempty intersection.
    """
    r = intersect(q, p)
    if r is None:
        raise ContractViolation("disjoint_sharp requires overlapping cubes")
    out: list[Cube] = []
    acc_mask = q.mask
    acc_bits = q.bits
    todo = r.mask & ~q.mask
    while todo:
        b = todo & -todo
        todo ^= b
        rv = r.bits & b
        # complement r's value at this position, keep earlier ones aligned
        out.append(Cube(q.n, acc_mask | b, acc_bits | (b ^ rv)))
        acc_mask |= b
        acc_bits |= rv
    return out
