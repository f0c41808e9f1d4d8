"""Finite-level automorphism groups of spherically homogeneous trees with horizontal cycles.

Vertices at level ``l`` are indexed ``0 .. #L_l - 1`` with children of ``u`` at
``u*n + j`` (``j`` zero based).  A :class:`Word` is the tuple ``(i_l, ..., i_1)`` of
one-based letters; ``i_1`` picks the level-one vertex, so the child of ``w`` along
letter ``j`` is ``(j,) + w``.

Automorphisms are stored as the tuple of their vertex permutations on levels
``1..L``; composition is functional, ``(s*t)(w) = s(t(w))``.  The portrait label
of ``s`` at ``w`` is the rotation amount of the local permutation below ``w``, so

    phi_w(s*t) = phi_w(t) + phi_{t(w)}(s).

In the prime-restricted variant, levels whose degree differs from the prime carry
no horizontal cycle, and arbitrary local permutations are allowed there.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .groups import DEFAULT_BUDGET, BudgetExceeded, FiniteGroup, bits, closure

__all__ = [
    "TreeShape",
    "TreeAut",
    "Word",
    "PreconditionError",
    "generator_sigma",
    "apply",
    "compose",
    "inverse",
    "commutator",
    "phi",
    "psi",
    "psi_pushed",
    "tilde_phi",
    "verify_commutator_pairing",
    "OneDimResult",
    "onedim_image_check",
    "all_automorphisms",
    "standard_generators",
    "tree_group",
    "MatrixGroupElem",
    "affine_group",
    "max_abelian_order_G",
    "max_set_count",
    "run_oracles",
    "random_automorphism",
    "PairSampleReport",
    "sampled_pair_check",
]

Word = tuple  # (i_l, ..., i_1), letters one-based


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class TreeShape:
    degrees: tuple[int, ...]
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(n) for n in self.degrees))
        if not self.degrees:
            raise ValueError("shape needs at least one level")
        if any(n < 2 for n in self.degrees):
            raise ValueError("every degree must be >= 2")
        if self.prime is not None:
            p = self.prime
            if any(not _is_prime(n) for n in self.degrees):
                raise ValueError("prime-restricted shapes need prime degrees")
            if self.degrees[0] != p:
                raise ValueError("the distinguished prime must be the first degree")

    @property
    def depth(self) -> int:
        return len(self.degrees)

    def n(self, level: int) -> int:
        """Degree ``n_level`` (one-based)."""
        return self.degrees[level - 1]

    def level_size(self, level: int) -> int:
        return math.prod(self.degrees[:level])

    @property
    def horizontal(self) -> tuple[int, ...]:
        """One-based levels whose vertices are joined in horizontal cycles (the set I)."""
        if self.prime is None:
            return tuple(range(1, self.depth + 1))
        return tuple(k for k in range(1, self.depth + 1) if self.degrees[k - 1] == self.prime)

    def group_order(self) -> int:
        out = 1
        for k in range(1, self.depth + 1):
            local = self.n(k) if k in self.horizontal else math.factorial(self.n(k))
            out *= local ** self.level_size(k - 1)
        return out

    def words(self, level: int) -> list[Word]:
        """Words of the given length in vertex-index order (``i_1`` most significant)."""
        return [self.word(level, idx) for idx in range(self.level_size(level))]

    def index(self, w: Sequence[int]) -> int:
        level = len(w)
        if level > self.depth:
            raise ValueError(f"word {w} is deeper than the shape")
        idx = 0
        for k, letter in enumerate(reversed(tuple(w)), start=1):
            n = self.n(k)
            if not 1 <= letter <= n:
                raise ValueError(f"letter {letter} out of range at level {k}")
            idx = idx * n + (letter - 1)
        return idx

    def word(self, level: int, idx: int) -> Word:
        letters = []
        for k in range(level, 0, -1):
            n = self.n(k)
            letters.append(idx % n + 1)
            idx //= n
        return tuple(letters)

    def to_json(self) -> dict:
        out: dict = {"degrees": list(self.degrees)}
        if self.prime is not None:
            out["prime"] = self.prime
        return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


class TreeAut:
    """An automorphism of the depth-``L`` tree, stored by its level permutations."""

    __slots__ = ("shape", "maps", "_hash")

    def __init__(self, shape: TreeShape, maps: Sequence[Sequence[int]], check: bool = True):
        self.shape = shape
        self.maps = tuple(tuple(m) for m in maps)
        self._hash = hash((shape, self.maps))
        if check:
            self._validate()

    def _validate(self):
        s = self.shape
        if len(self.maps) != s.depth:
            raise ValueError("one vertex permutation per level is required")
        horizontal = set(s.horizontal)
        prev = None
        for k in range(1, s.depth + 1):
            m = self.maps[k - 1]
            n = s.n(k)
            if sorted(m) != list(range(s.level_size(k))):
                raise ValueError(f"level {k} map is not a permutation")
            for u in range(s.level_size(k - 1)):
                image_u = 0 if prev is None else prev[u]
                local = [m[u * n + j] - image_u * n for j in range(n)]
                if sorted(local) != list(range(n)):
                    raise ValueError(f"level {k} map does not respect parents")
                if k in horizontal and any(local[j] != (local[0] + j) % n for j in range(n)):
                    raise ValueError(f"level {k} local permutation is not a rotation")
            prev = m

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, shape: TreeShape) -> TreeAut:
        return cls(shape, [range(shape.level_size(k)) for k in range(1, shape.depth + 1)], check=False)

    @classmethod
    def from_local(cls, shape: TreeShape, local: Sequence[Sequence[Sequence[int]]], check: bool = True) -> TreeAut:
        """Build from zero-based local permutations ``local[k][u]`` below vertex ``u`` of level ``k``."""
        maps = []
        prev = (0,)
        for k in range(shape.depth):
            n = shape.degrees[k]
            cur = [0] * shape.level_size(k + 1)
            for u in range(shape.level_size(k)):
                perm = local[k][u]
                base = prev[u] * n
                for j in range(n):
                    cur[u * n + j] = base + perm[j]
            maps.append(cur)
            prev = cur
        return cls(shape, maps, check=check)

    @classmethod
    def from_labels(
        cls,
        shape: TreeShape,
        labels: Mapping[Word, int],
        perms: Mapping[Word, Sequence[int]] | None = None,
    ) -> TreeAut:
        """Portrait constructor: ``labels[w]`` for words on horizontal levels (missing = 0).

        ``perms[w]`` gives a zero-based local permutation for words below non-horizontal
        levels of a prime-restricted shape (missing = identity).
        """
        perms = perms or {}
        horizontal = set(shape.horizontal)
        for w in labels:
            if len(w) >= shape.depth or len(w) + 1 not in horizontal:
                raise ValueError(f"no label slot at word {w}")
        for w in perms:
            if len(w) >= shape.depth or len(w) + 1 in horizontal:
                raise ValueError(f"no permutation slot at word {w}")
        local = []
        for k in range(shape.depth):
            n = shape.degrees[k]
            row = []
            for u in range(shape.level_size(k)):
                w = shape.word(k, u)
                if k + 1 in horizontal:
                    r = labels.get(w, 0) % n
                    row.append(tuple((j + r) % n for j in range(n)))
                else:
                    row.append(tuple(perms.get(w, range(n))))
            local.append(row)
        return cls.from_local(shape, local)

    # -- structure ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, TreeAut) and self.shape == other.shape and self.maps == other.maps

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: TreeAut) -> TreeAut:
        return compose(self, other)

    def image(self, level: int, idx: int) -> int:
        return idx if level == 0 else self.maps[level - 1][idx]

    def local_perm(self, level: int, u: int) -> tuple[int, ...]:
        """Zero-based local permutation below vertex ``u`` of ``level``."""
        n = self.shape.degrees[level]
        base = self.image(level, u) * n
        m = self.maps[level]
        return tuple(m[u * n + j] - base for j in range(n))

    def label(self, level: int, u: int) -> int:
        """Portrait label ``phi_w`` for the vertex ``u`` of ``level`` (a horizontal slot)."""
        if level + 1 not in self.shape.horizontal:
            raise ValueError(f"level {level} has no cyclic labels")
        return self.local_perm(level, u)[0]

    def labels(self) -> dict[str, int]:
        """Labels keyed by comma-joined words, length-lexicographically ordered."""
        s = self.shape
        out = {}
        for k in range(s.depth):
            if k + 1 not in s.horizontal:
                continue
            for w in sorted(s.words(k)):
                out[",".join(map(str, w))] = self.label(k, s.index(w))
        return out

    def to_json(self) -> dict:
        out = {"shape": list(self.shape.degrees), "labels": self.labels()}
        if self.shape.prime is not None:
            s = self.shape
            out["prime"] = s.prime
            out["perms"] = {
                ",".join(map(str, w)): list(self.local_perm(k, s.index(w)))
                for k in range(s.depth)
                if k + 1 not in s.horizontal
                for w in sorted(s.words(k))
            }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> TreeAut:
        shape = TreeShape(tuple(obj["shape"]), obj.get("prime"))

        def word(key: str) -> Word:
            return tuple(int(t) for t in key.split(",")) if key else ()

        labels = {word(k): v for k, v in obj.get("labels", {}).items()}
        perms = {word(k): v for k, v in obj.get("perms", {}).items()}
        return cls.from_labels(shape, labels, perms)

    def __repr__(self) -> str:
        return f"TreeAut({self.shape.degrees}, {self.labels()})"


# ---------------------------------------------------------------------------
# operations


def _same_shape(a: TreeAut, b: TreeAut):
    if a.shape != b.shape:
        raise ValueError("shape mismatch")


def generator_sigma(shape: TreeShape, w: Sequence[int]) -> TreeAut:
    """Adds one (cyclically) to the letter right after ``w``; order ``n_{l(w)+1}``."""
    w = tuple(w)
    if len(w) >= shape.depth:
        raise ValueError(f"word {w} too deep for shape of depth {shape.depth}")
    shape.index(w)
    level = len(w)
    n = shape.degrees[level]
    if level + 1 in shape.horizontal:
        return TreeAut.from_labels(shape, {w: 1})
    return TreeAut.from_labels(shape, {}, {w: tuple((j + 1) % n for j in range(n))})


def apply(a: TreeAut, w: Sequence[int]) -> Word:
    w = tuple(w)
    level = len(w)
    if level > a.shape.depth:
        raise ValueError("word deeper than the shape")
    return a.shape.word(level, a.image(level, a.shape.index(w)))


def compose(a: TreeAut, b: TreeAut) -> TreeAut:
    """``a*b`` acting as ``w -> a(b(w))``."""
    _same_shape(a, b)
    return TreeAut(a.shape, [tuple(ma[x] for x in mb) for ma, mb in zip(a.maps, b.maps)], check=False)


def inverse(a: TreeAut) -> TreeAut:
    maps = []
    for m in a.maps:
        inv = [0] * len(m)
        for src, dst in enumerate(m):
            inv[dst] = src
        maps.append(inv)
    return TreeAut(a.shape, maps, check=False)


def commutator(a: TreeAut, b: TreeAut) -> TreeAut:
    """``a b a^-1 b^-1``."""
    _same_shape(a, b)
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def _check_level(a: TreeAut, level: int):
    if not 1 <= level <= a.shape.depth:
        raise ValueError(f"level {level} out of range 1..{a.shape.depth}")
    if level not in a.shape.horizontal:
        raise ValueError(f"level {level} carries no cyclic character")


def psi(a: TreeAut, level: int) -> tuple[int, ...]:
    """Labels ``(phi_w(a))_{w in L_{level-1}}`` indexed by vertex.

    Satisfies ``psi(s*t) = psi(t) + t^* psi(s)`` where ``(t^* v)_w = v_{t(w)}``.
    """
    _check_level(a, level)
    return tuple(a.label(level - 1, u) for u in range(a.shape.level_size(level - 1)))


def psi_pushed(a: TreeAut, level: int) -> tuple[int, ...]:
    """``sum_w phi_w(a) * a(w)``: satisfies ``psi(s*t) = s.psi(t) + psi(s)``."""
    _check_level(a, level)
    out = [0] * a.shape.level_size(level - 1)
    for u in range(len(out)):
        out[a.image(level - 1, u)] = a.label(level - 1, u)
    return tuple(out)


def act(g: TreeAut, level: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Left permutation action on ``Z[L_level]``: ``(g.v)_{g(w)} = v_w``."""
    out = [0] * len(vec)
    for u, x in enumerate(vec):
        out[g.image(level, u)] = x
    return tuple(out)


def pull(g: TreeAut, level: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Right action ``(g^* v)_w = v_{g(w)}``."""
    return tuple(vec[g.image(level, u)] for u in range(len(vec)))


def phi(a: TreeAut, level: int) -> int:
    """Trace character ``sum_{w in L_{level-1}} phi_w(a)`` in ``Z/n_level``."""
    return sum(psi(a, level)) % a.shape.n(level)


def tilde_phi(a: TreeAut, level: int) -> tuple[int, ...]:
    """Component ``x_i`` is the sum of ``phi_{w x_i}(a)`` over ``w in L_{level-2}``."""
    if level < 2:
        raise ValueError("tilde_phi needs level >= 2")
    _check_level(a, level)
    s = a.shape
    n1 = s.n(1)
    block = s.level_size(level - 1) // n1
    out = [0] * n1
    for u, lab in enumerate(psi(a, level)):
        out[u // block] += lab
    n = s.n(level)
    return tuple(x % n for x in out)


def _order_mod(x: int, n: int) -> int:
    return n // math.gcd(x % n, n)


def verify_commutator_pairing(sigma: TreeAut, tau: TreeAut) -> bool:
    """For commuting ``sigma, tau`` with ``phi_1(tau) = 0``: every ``phi_i(tau)`` is a multiple of
    the order ``d`` of ``phi_1(sigma)``."""
    _same_shape(sigma, tau)
    if compose(sigma, tau) != compose(tau, sigma):
        raise PreconditionError("sigma and tau do not commute")
    if phi(tau, 1) != 0:
        raise PreconditionError("phi_1(tau) != 0")
    s = sigma.shape
    d = _order_mod(phi(sigma, 1), s.n(1))
    for i in s.horizontal:
        if phi(tau, i) % math.gcd(d, s.n(i)) != 0:
            return False
    return True


@dataclass(frozen=True)
class OneDimResult:
    """Outcome of :func:`onedim_image_check`; ``kind`` is "cyclic", "violation" or "non-abelian"."""

    kind: str
    cyclic_order: int | None = None
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.kind == "cyclic"


def character_vector(a: TreeAut, d1: int) -> tuple[int, ...]:
    """``(phi_1, (phi_i mod gcd(d1, n_i))_{i in I, i >= 2})``."""
    s = a.shape
    vec = [phi(a, 1)]
    for i in s.horizontal[1:]:
        vec.append(phi(a, i) % math.gcd(d1, s.n(i)))
    return tuple(vec)


def onedim_image_check(generators: Sequence[TreeAut], budget: int = DEFAULT_BUDGET) -> OneDimResult:
    gens = list(generators)
    if not gens:
        return OneDimResult("cyclic", 1)
    shape = gens[0].shape
    for g, h in itertools.combinations(gens, 2):
        _same_shape(g, h)
        if compose(g, h) != compose(h, g):
            return OneDimResult("non-abelian", witness=(g, h))
    elems = closure(gens, compose, TreeAut.identity(shape), budget)
    n1 = shape.n(1)
    d1 = len({phi(a, 1) for a in elems})
    seen: dict[int, tuple] = {}
    reps: dict[int, TreeAut] = {}
    for a in elems:
        vec = character_vector(a, d1)
        key = vec[0]
        if key in seen and seen[key] != vec:
            return OneDimResult("violation", witness=(reps[key], a))
        seen[key] = vec
        reps[key] = a
    assert len(seen) == d1 and n1 % d1 == 0
    return OneDimResult("cyclic", d1)


# ---------------------------------------------------------------------------
# whole groups


def _local_choices(shape: TreeShape, level: int) -> list[tuple[int, ...]]:
    n = shape.degrees[level]
    if level + 1 in shape.horizontal:
        return [tuple((j + r) % n for j in range(n)) for r in range(n)]
    return list(itertools.permutations(range(n)))


def all_automorphisms(shape: TreeShape, budget: int = DEFAULT_BUDGET) -> list[TreeAut]:
    """Every automorphism, by running over all portraits (local permutation choices)."""
    if shape.group_order() > budget:
        raise BudgetExceeded(f"|Omega| = {shape.group_order()} exceeds budget {budget}")
    slots = []
    for k in range(shape.depth):
        slots.extend([_local_choices(shape, k)] * shape.level_size(k))
    out = []
    for choice in itertools.product(*slots):
        local, pos = [], 0
        for k in range(shape.depth):
            size = shape.level_size(k)
            local.append(choice[pos : pos + size])
            pos += size
        out.append(TreeAut.from_local(shape, local, check=False))
    return out


def standard_generators(shape: TreeShape) -> list[TreeAut]:
    """``sigma_w`` for every word ``w`` above the leaves (plus transpositions on non-cyclic levels)."""
    gens = []
    for k in range(shape.depth):
        n = shape.degrees[k]
        for w in shape.words(k):
            gens.append(generator_sigma(shape, w))
            if k + 1 not in shape.horizontal and n > 2:
                swap = (1, 0) + tuple(range(2, n))
                gens.append(TreeAut.from_labels(shape, {}, {w: swap}))
    return gens


def tree_group(shape: TreeShape, budget: int = 5000) -> tuple[FiniteGroup, list[TreeAut]]:
    elems = all_automorphisms(shape, budget)
    return FiniteGroup(elems, compose, budget=budget), elems


# ---------------------------------------------------------------------------
# the affine groups G_r


@dataclass(frozen=True, order=True)
class MatrixGroupElem:
    """The matrix ``[[1, 0], [b, d]]`` over ``Z/r`` with ``d`` a unit."""

    r: int
    b: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "b", self.b % self.r)
        object.__setattr__(self, "d", self.d % self.r)
        if math.gcd(self.d, self.r) != 1:
            raise ValueError("d must be a unit mod r")

    def __mul__(self, other: MatrixGroupElem) -> MatrixGroupElem:
        if self.r != other.r:
            raise ValueError("modulus mismatch")
        return MatrixGroupElem(self.r, self.b + self.d * other.b, self.d * other.d)


def affine_group(r: int) -> list[MatrixGroupElem]:
    return [MatrixGroupElem(r, b, d) for d in range(r) if math.gcd(d, r) == 1 for b in range(r)]


def max_abelian_order_G(p: int, n: int, budget: int = 5000) -> int:
    """Largest abelian subgroup of ``G_{p^n}``, by exhaustive search."""
    r = p**n
    elems = affine_group(r)
    if len(elems) > budget:
        raise BudgetExceeded(f"|G_{r}| = {len(elems)} exceeds budget {budget}")
    return FiniteGroup(elems, lambda x, y: x * y, budget=budget).max_abelian_order()


# ---------------------------------------------------------------------------
# marked patterns


def max_set_count(shape: TreeShape, pattern: Iterable[Sequence[int]]) -> tuple[int, int]:
    """``(l_max, #Max)`` for a sibling-closed, ancestor-closed set of marked words.

    Max elements are marked vertices with no marked child; ``l_max`` is the deepest
    level holding one.
    """
    marked = {tuple(w) for w in pattern}
    for w in marked:
        shape.index(w)
    if () not in marked:
        raise PreconditionError("root must be marked")
    for w in marked:
        if w and w[1:] not in marked:
            raise PreconditionError(f"parent of {w} is unmarked")
        if w:
            n = shape.n(len(w))
            for j in range(1, n + 1):
                if (j,) + w[1:] not in marked:
                    raise PreconditionError(f"pattern not sibling-closed at {w}")
    maxes = []
    for w in marked:
        level = len(w)
        if level == shape.depth or (1,) + w not in marked:
            maxes.append(level)
    return max(maxes), len(maxes)


# ---------------------------------------------------------------------------
# oracle driver


@dataclass
class OracleReport:
    shape: TreeShape
    order: int
    expected_order: int
    closure_order: int | None = None
    cocycle_failures: int = 0
    homomorphism_failures: int = 0
    commuting_pairs_checked: int = 0
    pairing_failures: int = 0
    abelian_subgroups: int = 0
    onedim_failures: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.order == self.expected_order
            and (self.closure_order is None or self.closure_order == self.order)
            and self.cocycle_failures == 0
            and self.homomorphism_failures == 0
            and self.pairing_failures == 0
            and self.onedim_failures == 0
        )

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "order": self.order,
            "expected_order": self.expected_order,
            "closure_order": self.closure_order,
            "cocycle_failures": self.cocycle_failures,
            "homomorphism_failures": self.homomorphism_failures,
            "commuting_pairs_checked": self.commuting_pairs_checked,
            "pairing_failures": self.pairing_failures,
            "abelian_subgroups": self.abelian_subgroups,
            "onedim_failures": self.onedim_failures,
            "ok": self.ok,
        }


def run_oracles(shape: TreeShape, budget: int = 5000, with_closure: bool = True) -> OracleReport:
    """Exhaustive checks on the whole group of ``shape``: group order, the cocycle and
    trace-homomorphism laws, the commutator pairing over all commuting pairs, and the
    one-dimensional image over every abelian subgroup."""
    G, elems = tree_group(shape, budget)
    rep = OracleReport(shape, G.order, shape.group_order())
    if with_closure:
        rep.closure_order = len(closure(standard_generators(shape), compose, TreeAut.identity(shape), budget))
    levels = shape.horizontal
    psis = [{i: psi(a, i) for i in levels} for a in elems]
    pushed = [{i: psi_pushed(a, i) for i in levels} for a in elems]
    chars = [{i: phi(a, i) for i in levels} for a in elems]
    for x in range(G.order):
        for y in range(G.order):
            z = G.table[x][y]
            s, t = elems[x], elems[y]
            for i in levels:
                n = shape.n(i)
                pulled = pull(t, i - 1, psis[x][i])
                if any((p + q - r) % n for p, q, r in zip(psis[y][i], pulled, psis[z][i])):
                    rep.cocycle_failures += 1
                moved = act(s, i - 1, pushed[y][i])
                if any((p + q - r) % n for p, q, r in zip(moved, pushed[x][i], pushed[z][i])):
                    rep.cocycle_failures += 1
                if (chars[x][i] + chars[y][i] - chars[z][i]) % n:
                    rep.homomorphism_failures += 1
            if chars[y][1] == 0 and G.commute_mask[x] >> y & 1:
                rep.commuting_pairs_checked += 1
                if not verify_commutator_pairing(s, t):
                    rep.pairing_failures += 1
                    rep.failures.append(("pairing", s, t))
    n1 = shape.n(1)
    for H in G.abelian_subgroups():
        rep.abelian_subgroups += 1
        members = list(bits(H))
        d1 = len({chars[m][1] for m in members})
        image = {character_vector(elems[m], d1) for m in members}
        if len(image) != d1 or n1 % d1:
            rep.onedim_failures += 1
            rep.failures.append(("onedim", [elems[m] for m in members]))
    return rep


# ---------------------------------------------------------------------------
# sampled checks for groups too large for a Cayley table


def random_automorphism(shape: TreeShape, rng: random.Random) -> TreeAut:
    local = [[rng.choice(_local_choices(shape, k)) for _ in range(shape.level_size(k))] for k in range(shape.depth)]
    return TreeAut.from_local(shape, local, check=False)


@dataclass
class PairSampleReport:
    shape: TreeShape
    samples: int
    commuting_pairs: int = 0
    pairing_checked: int = 0
    pairing_failures: int = 0
    onedim_failures: int = 0

    @property
    def ok(self) -> bool:
        return self.pairing_failures == 0 and self.onedim_failures == 0

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), **{k: v for k, v in self.__dict__.items() if k != "shape"}, "ok": self.ok}


def sampled_pair_check(shape: TreeShape, samples: int = 20, seed: int = 0, budget: int = DEFAULT_BUDGET) -> PairSampleReport:
    """For random ``sigma`` and every ``tau`` commuting with it, check the commutator
    pairing and the one-dimensional image of the abelian group ``<sigma, tau>``.

    Needs the element list (``|Omega| <= budget``) but no Cayley table.
    """
    rng = random.Random(seed)
    elems = all_automorphisms(shape, budget)
    rep = PairSampleReport(shape, samples)
    for _ in range(samples):
        sigma = rng.choice(elems)
        for tau in elems:
            if compose(sigma, tau) != compose(tau, sigma):
                continue
            rep.commuting_pairs += 1
            if phi(tau, 1) == 0:
                rep.pairing_checked += 1
                if not verify_commutator_pairing(sigma, tau):
                    rep.pairing_failures += 1
            if not onedim_image_check([sigma, tau], budget).ok:
                rep.onedim_failures += 1
    return rep
