"""Chain-generated convex geometries as intersection-closed set families.

A geometry on ground set {1..m} is generated by k linear orders (chains),
each given as a permutation.  The family is the closure of all chain
prefixes under pairwise intersection; ordered by inclusion it is a lattice
(the lattice view reuses :class:`latmax.lattice.Lattice` verbatim, with the
inclusion order as ``leq``).  Ground points are 1-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .lattice import Lattice, is_lower_semimodular, is_sd_join

__all__ = [
    "BadPermutation",
    "ChainSpec",
    "ConvexGeometry",
    "TopOnly",
    "build_cg",
    "format_cg_text",
    "parse_cg_text",
]


class BadPermutation(ValueError):
    """A chain is not a permutation of {1..m}."""


class TopOnly(LookupError):
    """No proper meet-irreducible on the chain contains the point; only X does."""


@dataclass(frozen=True)
class ChainSpec:
    """A linear order on {1..m}: perm[k] is the (k+1)-st smallest point."""

    perm: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))

    @property
    def m(self) -> int:
        return len(self.perm)

    def validate(self, m: int):
        if sorted(self.perm) != list(range(1, m + 1)):
            raise BadPermutation(f"not a permutation of 1..{m}: {self.perm}")

    @cached_property
    def pos(self) -> dict:
        """1-based position of each point on the chain."""
        return {p: k + 1 for k, p in enumerate(self.perm)}

    def prefix(self, length: int) -> frozenset:
        return frozenset(self.perm[:length])


def _as_chain(chain) -> ChainSpec:
    return chain if isinstance(chain, ChainSpec) else ChainSpec(tuple(chain))


class ConvexGeometry:
    """Lattice of all intersections of chain prefixes, with chain indices.

    Exposes, for each chain i and ground point x, the least prefix C_i(x)
    containing x, the least meet-irreducible M_i(x) on the chain containing
    x, and the point closure (x), the smallest family member containing x.
    """

    def __init__(self, m: int, chains, verify: bool = True):
        if m < 1:
            raise BadPermutation("ground set must be nonempty")
        self.m = m
        self.chains = tuple(_as_chain(c) for c in chains)
        if not self.chains:
            raise BadPermutation("at least one generating chain is required")
        for c in self.chains:
            c.validate(m)

        prefixes = {frozenset()}
        for c in self.chains:
            for k in range(1, m + 1):
                prefixes.add(c.prefix(k))
        family = set(prefixes)
        frontier = set(prefixes)
        while frontier:
            fresh = set()
            for a in frontier:
                for b in prefixes:
                    ab = a & b
                    if ab not in family:
                        fresh.add(ab)
            family |= fresh
            frontier = fresh
        self.family = tuple(sorted(family, key=lambda s: (len(s), sorted(s))))
        self.set_index = {s: i for i, s in enumerate(self.family)}

        n = len(self.family)
        masks = [_points_mask(s) for s in self.family]
        leq = np.zeros((n, n), dtype=bool)
        for a in range(n):
            for b in range(n):
                leq[a, b] = masks[a] & ~masks[b] == 0
        self.lattice = Lattice(leq)
        self._point_masks = masks

        # chain_elements[i][k] = id of the k-point prefix of chain i.
        self.chain_elements = tuple(
            tuple(self.set_index[c.prefix(k)] for k in range(m + 1)) for c in self.chains
        )
        chain_sets = [set(ids) for ids in self.chain_elements]
        self.chain_member = tuple(
            tuple(a in ids for ids in chain_sets) for a in range(n)
        )
        self._closures: dict = {}
        if verify:
            self._verify()

    # -- indices -------------------------------------------------------------

    def element_set(self, a: int) -> frozenset:
        return self.family[a]

    def chain_prefix_of_point(self, i: int, x: int) -> int:
        """C_i(x): the least prefix of chain i containing ground point x."""
        return self.chain_elements[i][self.chains[i].pos[x]]

    def chain_prefix(self, i: int, a: int) -> int:
        """C_i(a): the least prefix of chain i containing family element a."""
        pts = self.family[a]
        if not pts:
            return self.chain_elements[i][0]
        return self.chain_elements[i][max(self.chains[i].pos[x] for x in pts)]

    def point_closure(self, x: int) -> int:
        """(x): the smallest family member containing x; join-irreducible."""
        cached = self._closures.get(x)
        if cached is None:
            out = (1 << self.m) - 1
            for i in range(len(self.chains)):
                out &= self._point_masks[self.chain_prefix_of_point(i, x)]
            cached = self._closures[x] = self.set_index[frozenset(_mask_points(out))]
        return cached

    def least_mi_on_chain(self, i: int, x: int) -> int:
        """M_i(x): least meet-irreducible prefix of chain i containing x.

        Raises TopOnly when the only chain element containing x that could
        qualify is the top X (which is never meet-irreducible).
        """
        mi = self.lattice.irreducibles.mi
        for k in range(self.chains[i].pos[x], self.m + 1):
            a = self.chain_elements[i][k]
            if a in mi:
                return a
        raise TopOnly(f"no proper meet-irreducible on chain {i} contains {x}")

    def cdim(self) -> int:
        """Convex dimension: the maximum antichain of meet-irreducibles."""
        mi = sorted(self.lattice.irreducibles.mi)
        return _poset_width(self.lattice, mi)

    def has_trivial_intersection(self) -> bool:
        """Whether every pair of generating chains shares only ∅ and X."""
        sets = [set(ids) for ids in self.chain_elements]
        ends = {self.lattice.bottom, self.lattice.top}
        for i in range(len(sets)):
            for k in range(i + 1, len(sets)):
                if (sets[i] & sets[k]) - ends:
                    return False
        return True

    # -- verification ----------------------------------------------------------

    def _verify(self):
        L = self.lattice
        n = L.n
        masks = self._point_masks
        # meet is intersection; join is the least family member over the union.
        for a in range(n):
            for b in range(a, n):
                assert masks[L.meet[a, b]] == masks[a] & masks[b]
                assert (masks[a] | masks[b]) & ~masks[L.join[a, b]] == 0
        assert is_sd_join(L), "geometry lattice must satisfy SD-join"
        assert is_lower_semimodular(L), "geometry lattice must be lower semimodular"
        # Every cover adds exactly one ground point.
        for a in range(n):
            for b in L.covers[a]:
                assert (masks[b] & ~masks[a]).bit_count() == 1
        # Every meet-irreducible lies on a generating chain.
        on_chain = set().union(*map(set, self.chain_elements))
        assert L.irreducibles.mi <= on_chain
        # a equals the meet of its chain prefixes.
        for a in range(n):
            acc = masks[L.top]
            for i in range(len(self.chains)):
                acc &= masks[self.chain_prefix(i, a)]
            assert acc == masks[a]

    def __repr__(self):
        return f"ConvexGeometry(m={self.m}, chains={len(self.chains)}, n={self.lattice.n})"


def build_cg(m: int, chains, verify: bool = True) -> ConvexGeometry:
    """Build the geometry generated by the given chains (permutations of 1..m)."""
    return ConvexGeometry(m, chains, verify=verify)


def _points_mask(s) -> int:
    out = 0
    for p in s:
        out |= 1 << (p - 1)
    return out


def _mask_points(mask: int):
    p = 1
    while mask:
        if mask & 1:
            yield p
        mask >>= 1
        p += 1


def _poset_width(L: Lattice, elems) -> int:
    """Width of the subposet on elems via Dilworth (bipartite matching)."""
    k = len(elems)
    if k == 0:
        return 0
    adj = [
        [b for b in range(k) if a != b and L.leq[elems[a], elems[b]]]
        for a in range(k)
    ]
    match_r = [-1] * k

    def augment(a, seen):
        for b in adj[a]:
            if not seen[b]:
                seen[b] = True
                if match_r[b] == -1 or augment(match_r[b], seen):
                    match_r[b] = a
                    return True
        return False

    matching = sum(augment(a, [False] * k) for a in range(k))
    return k - matching


# -- text format ---------------------------------------------------------------


def format_cg_text(m: int, chains) -> str:
    """CG text format: `m k` then one space-separated permutation per line."""
    chains = [_as_chain(c) for c in chains]
    lines = [f"{m} {len(chains)}"]
    lines += [" ".join(map(str, c.perm)) for c in chains]
    return "\n".join(lines) + "\n"


def parse_cg_text(text: str):
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty geometry input")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError("first line must be `m k`")
    m, k = int(head[0]), int(head[1])
    if len(rows) != k + 1:
        raise ValueError(f"expected {k} chain lines, got {len(rows) - 1}")
    chains = [ChainSpec(tuple(int(t) for t in row.split())) for row in rows[1:]]
    return m, chains
