"""Finite lattices stored as dense order matrices with eager meet/join tables.

Elements are the integers ``0..n-1``.  The order relation is a read-only
boolean numpy matrix ``leq`` with ``leq[a, b]`` iff ``a <= b``; the meet and
join tables are built once at construction time, so every predicate scan
afterwards is a table lookup.  All objects here are immutable after
construction and safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations

import numpy as np

__all__ = [
    "CyclicInput",
    "Interval",
    "IrreducibleInfo",
    "Lattice",
    "NotALattice",
    "canonical_join_rep",
    "canonical_meet_rep",
    "double_interval",
    "from_cover_relations",
    "from_cover_text",
    "indecomposable_components",
    "is_convex_subset",
    "is_distributive",
    "is_lower_semimodular",
    "is_sd",
    "is_sd_join",
    "is_sd_meet",
    "kappa",
    "kappa_bijection_check",
    "kappa_sigma",
    "to_cover_text",
    "way_below",
]


class NotALattice(ValueError):
    """Some pair of elements has no unique glb or lub."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class CyclicInput(ValueError):
    """The input cover digraph contains a cycle."""


@dataclass(frozen=True)
class Interval:
    """The interval [lo, hi] = {c : lo <= c <= hi} of a host lattice."""

    lo: int
    hi: int


@dataclass(frozen=True)
class IrreducibleInfo:
    ji: frozenset
    mi: frozenset
    lower_star: dict  # j -> j_*, the unique lower cover of a join-irreducible
    upper_star: dict  # m -> m^*, the unique upper cover of a meet-irreducible


class Lattice:
    """Immutable finite lattice on elements 0..n-1.

    Construction validates the order axioms and the existence of unique
    glb/lub for every pair (raising :class:`NotALattice` otherwise), using
    the down-set/up-set bitmask dictionary: in a lattice the down set of
    ``a ∧ b`` is exactly ``down(a) & down(b)``.
    """

    def __init__(self, leq):
        leq = np.ascontiguousarray(np.asarray(leq, dtype=bool))
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise ValueError(f"order matrix must be square, got {leq.shape}")
        if n == 0:
            raise NotALattice("empty carrier has no bottom/top")
        self._check_partial_order(leq)
        leq.flags.writeable = False
        self.n = n
        self.leq = leq

        # Bitmask per element of everything below / above it.
        down = [_mask_of_bits(np.flatnonzero(leq[:, a])) for a in range(n)]
        up = [_mask_of_bits(np.flatnonzero(leq[a, :])) for a in range(n)]
        self.down_masks = down
        self.up_masks = up

        down_id = {down[a]: a for a in range(n)}
        up_id = {up[a]: a for a in range(n)}
        meet = np.empty((n, n), dtype=np.int32)
        join = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            meet[a, a] = join[a, a] = a
            for b in range(a + 1, n):
                z = down_id.get(down[a] & down[b])
                if z is None:
                    raise NotALattice(f"no unique glb for {(a, b)}", pair=(a, b))
                meet[a, b] = meet[b, a] = z
                w = up_id.get(up[a] & up[b])
                if w is None:
                    raise NotALattice(f"no unique lub for {(a, b)}", pair=(a, b))
                join[a, b] = join[b, a] = w
        meet.flags.writeable = False
        join.flags.writeable = False
        self.meet = meet
        self.join = join
        self.bottom = int(reduce(lambda x, y: meet[x, y], range(n)))
        self.top = int(reduce(lambda x, y: join[x, y], range(n)))

    @staticmethod
    def _check_partial_order(leq):
        if not leq[np.diag_indices_from(leq)].all():
            raise ValueError("order relation is not reflexive")
        if (leq & leq.T).sum() > len(leq):
            raise ValueError("order relation is not antisymmetric")
        if ((~leq) & (leq @ leq)).any():
            raise ValueError("order relation is not transitive")

    # -- structure ---------------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    @cached_property
    def cover_matrix(self):
        """Boolean matrix of the covering relation (transitive reduction)."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        red = strict & ~(strict @ strict)
        red.flags.writeable = False
        return red

    @cached_property
    def covers(self):
        """Upper-cover adjacency: covers[a] = tuple of b with a ≺ b."""
        cov = self.cover_matrix
        return tuple(tuple(int(b) for b in np.flatnonzero(cov[a])) for a in range(self.n))

    @cached_property
    def lower_covers(self):
        cov = self.cover_matrix
        return tuple(tuple(int(b) for b in np.flatnonzero(cov[:, a])) for a in range(self.n))

    @cached_property
    def irreducibles(self) -> IrreducibleInfo:
        ji, mi = set(), set()
        lower_star, upper_star = {}, {}
        for a in range(self.n):
            lows = self.lower_covers[a]
            if a != self.bottom and len(lows) == 1:
                ji.add(a)
                lower_star[a] = lows[0]
            ups = self.covers[a]
            if a != self.top and len(ups) == 1:
                mi.add(a)
                upper_star[a] = ups[0]
        return IrreducibleInfo(frozenset(ji), frozenset(mi), lower_star, upper_star)

    @cached_property
    def atoms(self):
        return frozenset(self.covers[self.bottom])

    @cached_property
    def coatoms(self):
        return frozenset(self.lower_covers[self.top])

    @cached_property
    def heights(self):
        """heights[a] = length of the longest chain from bottom to a."""
        h = np.zeros(self.n, dtype=int)
        for a in sorted(range(self.n), key=lambda x: self.down_masks[x].bit_count()):
            for b in self.covers[a]:
                h[b] = max(h[b], h[a] + 1)
        h.flags.writeable = False
        return h

    # -- subsets -----------------------------------------------------------

    def interval_mask(self, lo: int, hi: int) -> int:
        return self.up_masks[lo] & self.down_masks[hi]

    def interval(self, lo: int, hi: int) -> frozenset:
        return frozenset(_bits_of_mask(self.interval_mask(lo, hi)))

    def mask_of(self, elems) -> int:
        m = 0
        for e in elems:
            m |= 1 << e
        return m

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def meet_of(self, elems) -> int:
        return int(reduce(lambda x, y: self.meet[x, y], elems))

    def join_of(self, elems) -> int:
        return int(reduce(lambda x, y: self.join[x, y], elems))

    def __repr__(self):
        return f"Lattice(n={self.n})"


def _mask_of_bits(bits) -> int:
    m = 0
    for b in bits:
        m |= 1 << int(b)
    return m


def _bits_of_mask(mask: int):
    b = 0
    while mask:
        if mask & 1:
            yield b
        mask >>= 1
        b += 1


# -- construction ------------------------------------------------------------


def from_cover_relations(n: int, covers) -> Lattice:
    """Build and validate a lattice from cover pairs (lower, upper).

    The pairs may be any acyclic generating relation; the order is their
    reflexive-transitive closure.  Raises CyclicInput on a cycle and
    NotALattice when some pair has no unique glb/lub or there is no unique
    bottom/top.
    """
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for lo, hi in covers:
        if not (0 <= lo < n and 0 <= hi < n):
            raise ValueError(f"cover pair {(lo, hi)} out of range for n={n}")
        succ[lo].append(hi)
        indeg[hi] += 1
    # Kahn toposort for cycle detection.
    order = [a for a in range(n) if indeg[a] == 0]
    deg = list(indeg)
    for a in order:
        for b in succ[a]:
            deg[b] -= 1
            if deg[b] == 0:
                order.append(b)
    if len(order) != n:
        raise CyclicInput("cover relation contains a cycle")
    leq = np.eye(n, dtype=bool)
    for a in reversed(order):
        for b in succ[a]:
            leq[a] |= leq[b]
    return Lattice(leq)


def to_cover_text(L: Lattice) -> str:
    """Cover-list serialization: first line n, then one `i j` per cover i ≺ j."""
    lines = [str(L.n)]
    for a in range(L.n):
        for b in L.covers[a]:
            lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


def from_cover_text(text: str) -> Lattice:
    """Parse the cover-list format (`#` starts a comment)."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty cover-list input")
    n = int(rows[0])
    pairs = []
    for line in rows[1:]:
        a, b = line.split()
        pairs.append((int(a), int(b)))
    return from_cover_relations(n, pairs)


# -- predicates ---------------------------------------------------------------


def is_sd_join(L: Lattice) -> bool:
    """x∨y = x∨z implies x∨(y∧z) = x∨y, scanned over all triples."""
    J, M = L.join, L.meet
    for x in range(L.n):
        jx = J[x]
        same = jx[:, None] == jx[None, :]
        fixed = jx[M] == jx[:, None]
        if np.any(same & ~fixed):
            return False
    return True


def is_sd_meet(L: Lattice) -> bool:
    J, M = L.join, L.meet
    for x in range(L.n):
        mx = M[x]
        same = mx[:, None] == mx[None, :]
        fixed = mx[J] == mx[:, None]
        if np.any(same & ~fixed):
            return False
    return True


def is_sd(L: Lattice) -> bool:
    return is_sd_join(L) and is_sd_meet(L)


def is_distributive(L: Lattice) -> bool:
    J, M = L.join, L.meet
    for x in range(L.n):
        jx = J[x]
        lhs = jx[M]                # x ∨ (y ∧ z)
        rhs = M[np.ix_(jx, jx)]    # (x ∨ y) ∧ (x ∨ z)
        if np.any(lhs != rhs):
            return False
    return True


def is_lower_semimodular(L: Lattice) -> bool:
    """x ≺ x∨y implies x∧y ≺ y, scanned over all pairs."""
    cov = L.cover_matrix
    idx = np.arange(L.n)
    prem = cov[idx[:, None], L.join]      # x ≺ x∨y
    concl = cov[L.meet, idx[None, :]]     # x∧y ≺ y
    return not np.any(prem & ~concl)


def way_below(L: Lattice, X, Y) -> bool:
    """X ≪ Y: every x in X lies below some y in Y."""
    ys = list(Y)
    return all(any(L.leq[x, y] for y in ys) for x in X)


def is_convex_subset(L: Lattice, S) -> bool:
    """Whether [a, c] ⊆ S for every comparable pair a <= c inside S."""
    elems = sorted(S)
    smask = L.mask_of(elems)
    for a in elems:
        for c in elems:
            if L.leq[a, c] and L.interval_mask(a, c) & ~smask:
                return False
    return True


# -- canonical representations ------------------------------------------------


def canonical_join_rep(L: Lattice, x: int):
    """The canonical join representation of x, or None when it does not exist.

    Returns the unique antichain X of join-irreducibles with ∨X = x that is
    way-below every other join representation of x.  The bottom element's
    representation is the empty set.  For each lower cover y of x the set
    {j ∈ Ji : j <= x, j ≰ y} must have a unique minimal element (which is
    then the canonical joinand "responsible" for y); absence of such an
    element, or the collected joinands failing to form an antichain, is a
    witness that SD-join fails at x.
    """
    return _canonical_rep(L, x, dual=False)


def canonical_meet_rep(L: Lattice, x: int):
    """Dual of canonical_join_rep; the top's representation is the empty set."""
    return _canonical_rep(L, x, dual=True)


def _canonical_rep(L: Lattice, x: int, dual: bool):
    cache = L.__dict__.setdefault("_canonical_cache", {})
    key = (x, dual)
    if key in cache:
        return cache[key]
    cache[key] = out = _canonical_rep_uncached(L, x, dual)
    return out


def _canonical_rep_uncached(L: Lattice, x: int, dual: bool):
    if not dual:
        unit, leq = L.bottom, (lambda a, b: L.leq[a, b])
        irr = L.irreducibles.ji
        nearest = L.lower_covers
        table = L.join
    else:
        unit, leq = L.top, (lambda a, b: L.leq[b, a])
        irr = L.irreducibles.mi
        nearest = L.covers
        table = L.meet
    if x == unit:
        return frozenset()
    below = [j for j in irr if leq(j, x)]
    cands = set()
    for y in nearest[x]:
        fresh = [j for j in below if not leq(j, y)]
        mins = [j for j in fresh if not any(k != j and leq(k, j) for k in fresh)]
        if len(mins) != 1:
            return None
        cands.add(mins[0])
    for a, b in combinations(cands, 2):
        if leq(a, b) or leq(b, a):
            return None
    # Definitional check: no representation avoiding the up-set of a candidate
    # may reach x, i.e. x is not a join of irreducibles not above j.
    for j in cands:
        avoid = [u for u in below if not leq(j, u)]
        if _op_closure_contains(table, avoid, x):
            return None
    assert reduce(lambda a, b: int(table[a, b]), cands) == x
    return frozenset(cands)


def _op_closure_contains(table, seed, target: int) -> bool:
    """Whether target is reachable from seed by repeatedly applying table."""
    vals = set(seed)
    frontier = list(vals)
    while frontier:
        fresh = []
        for v in frontier:
            for u in seed:
                w = int(table[v, u])
                if w not in vals:
                    vals.add(w)
                    fresh.append(w)
        frontier = fresh
    return target in vals


# -- kappa maps ---------------------------------------------------------------


def kappa(L: Lattice, j: int):
    """Greatest element of K(j) = {u : u >= j_*, u ≱ j} if unique, else None.

    Defined for join-irreducible j.  When the result exists it is always
    meet-irreducible: every upper cover of it must be above j, hence equals
    the join with j.
    """
    info = L.irreducibles
    if j not in info.ji:
        raise ValueError(f"element {j} is not join-irreducible")
    jstar = info.lower_star[j]
    k_mask = 0
    for u in range(L.n):
        if L.leq[jstar, u] and not L.leq[j, u]:
            k_mask |= 1 << u
    for u in _bits_of_mask(k_mask):
        if k_mask & ~L.down_masks[u] == 0:
            assert u in info.mi
            return u
    return None


def kappa_sigma(L: Lattice, m: int):
    """Least element of K^σ(m) = {v : v <= m^*, v ≰ m} if unique, else None."""
    info = L.irreducibles
    if m not in info.mi:
        raise ValueError(f"element {m} is not meet-irreducible")
    mstar = info.upper_star[m]
    k_mask = 0
    for v in range(L.n):
        if L.leq[v, mstar] and not L.leq[v, m]:
            k_mask |= 1 << v
    for v in _bits_of_mask(k_mask):
        if k_mask & ~L.up_masks[v] == 0:
            assert v in info.ji
            return v
    return None


def kappa_bijection_check(L: Lattice) -> bool:
    """Whether κ is a total bijection Ji -> Mi with κ^σ as its inverse."""
    info = L.irreducibles
    image = {}
    for j in info.ji:
        m = kappa(L, j)
        if m is None:
            return False
        image[j] = m
    if set(image.values()) != set(info.mi) or len(set(image.values())) != len(image):
        return False
    for m in info.mi:
        j = kappa_sigma(L, m)
        if j is None or image.get(j) != m:
            return False
    return True


# -- decomposition and doubling ----------------------------------------------


def indecomposable_components(L: Lattice):
    """Intervals between consecutive cut elements (elements comparable to all).

    Concatenating the component intervals by glued sum reconstructs L.  A
    one-element lattice has no components.
    """
    cuts = [a for a in range(L.n) if np.all(L.leq[a] | L.leq[:, a])]
    cuts.sort(key=lambda a: L.down_masks[a].bit_count())
    return [Interval(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)]


def double_interval(L: Lattice, iv: Interval) -> Lattice:
    """Day doubling of the interval [iv.lo, iv.hi].

    Each x in the interval is replaced by the pair (x,0) < (x,1) with the
    product order inside the doubled region; outside elements compare to a
    doubled pair exactly as they compared to x.  The result is rebuilt from
    its order matrix, which re-runs full lattice verification, so a slip in
    the order definition cannot survive silently.
    """
    if not L.leq[iv.lo, iv.hi]:
        raise ValueError(f"not an interval: {iv}")
    imask = L.interval_mask(iv.lo, iv.hi)
    inside = sorted(_bits_of_mask(imask))
    outside = [a for a in range(L.n) if not (imask >> a) & 1]
    # New ids: outside elements first, then (x,0),(x,1) pairs in x order.
    new_id = {}
    for a in outside:
        new_id[a] = len(new_id)
    pair_id = {}
    for x in inside:
        pair_id[(x, 0)] = len(new_id) + len(pair_id)
        pair_id[(x, 1)] = len(new_id) + len(pair_id)
    n2 = L.n + len(inside)
    leq = np.zeros((n2, n2), dtype=bool)
    for a in outside:
        for b in outside:
            leq[new_id[a], new_id[b]] = L.leq[a, b]
        for x in inside:
            for i in (0, 1):
                leq[new_id[a], pair_id[(x, i)]] = L.leq[a, x]
                leq[pair_id[(x, i)], new_id[a]] = L.leq[x, a]
    for x in inside:
        for y in inside:
            for i in (0, 1):
                for k in (0, 1):
                    leq[pair_id[(x, i)], pair_id[(y, k)]] = L.leq[x, y] and i <= k
    doubled = Lattice(leq)
    assert doubled.n == L.n + len(inside)
    return doubled
