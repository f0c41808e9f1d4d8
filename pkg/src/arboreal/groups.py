"""Small finite groups given by an explicit element list and a multiplication.

Used for exhaustive checks on tree automorphism groups and on the affine groups G_r.
Subgroups are represented as Python int bitmasks over element indices.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterator, Sequence

__all__ = ["BudgetExceeded", "FiniteGroup", "closure", "bits"]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def closure(gens: Sequence, mul: Callable, identity, budget: int = DEFAULT_BUDGET) -> list:
    """All products of ``gens``; breadth-first, raising past ``budget`` elements."""
    seen = {identity: None}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen[y] = None
                    order.append(y)
                    nxt.append(y)
                    if len(order) > budget:
                        raise BudgetExceeded(f"closure exceeds {budget} elements")
        frontier = nxt
    return order


class FiniteGroup:
    """Cayley table over a list of hashable elements."""

    def __init__(self, elements: Sequence[Hashable], mul: Callable, budget: int = 5000):
        if len(elements) > budget:
            raise BudgetExceeded(f"{len(elements)} elements exceed table budget {budget}")
        self.elements = list(elements)
        self.index = {x: k for k, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        n = len(self.elements)
        self.table = [[self.index[mul(x, y)] for y in self.elements] for x in self.elements]
        ident = [k for k in range(n) if all(self.table[k][j] == j for j in range(n))]
        if len(ident) != 1:
            raise ValueError("no unique identity; not a group")
        self.identity = ident[0]
        self.inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self.identity:
                    self.inv[a] = b
                    break
            else:
                raise ValueError(f"element {self.elements[a]!r} has no inverse; not a group")
        self.commute_mask = [
            sum(1 << b for b in range(n) if self.table[a][b] == self.table[b][a]) for a in range(n)
        ]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_abelian(self) -> bool:
        full = (1 << self.order) - 1
        return all(m == full for m in self.commute_mask)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def generated(self, gens: Sequence[int]) -> int:
        mask = 1 << self.identity
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if not mask >> y & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def _extend_abelian(self, H: int, g: int) -> int:
        """<H, g> for g centralising the abelian subgroup H."""
        elems = list(bits(H))
        out = H
        x = g
        while not H >> x & 1:
            for h in elems:
                out |= 1 << self.table[h][x]
            x = self.table[x][g]
        return out

    def abelian_subgroups(self, limit: int = 10**6) -> list[int]:
        """Every abelian subgroup, as bitmasks; grown one centralising element at a time."""
        start = 1 << self.identity
        seen = {start}
        stack = [start]
        while stack:
            H = stack.pop()
            cent = (1 << self.order) - 1
            for h in bits(H):
                cent &= self.commute_mask[h]
            for g in bits(cent & ~H):
                H2 = self._extend_abelian(H, g)
                if H2 not in seen:
                    seen.add(H2)
                    if len(seen) > limit:
                        raise BudgetExceeded(f"more than {limit} abelian subgroups")
                    stack.append(H2)
        return sorted(seen, key=lambda m: (bin(m).count("1"), m))

    def max_abelian_order(self) -> int:
        return max(bin(H).count("1") for H in self.abelian_subgroups())

    def derived_subgroup(self) -> int:
        n = self.order
        comms = {
            self.table[self.table[a][b]][self.table[self.inv[a]][self.inv[b]]]
            for a in range(n)
            for b in range(n)
        }
        return self.generated(sorted(comms))
