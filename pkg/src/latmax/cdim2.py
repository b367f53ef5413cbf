"""Linear-time enumeration of maximal-sublattice complements for two chains.

The first chain is the identity order 1 < 2 < ... < m; the second is a
permutation phi.  A first pass registers, for every point j, the prefix
C1(j) = {1..j}, the prefix C2(j) of chain 2 up to j, and the point closure
(j) = C1(j) ∩ C2(j), all symbolically.  A second pass walks every j once and
decides with O(1) integer comparisons which of the intervals [(j), C1(j)],
[(j), C2(j)], or their union, is the complement of a maximal sublattice:

* positions on chain 2 come from the inverse permutation, so membership
  tests like ``j+1 in C2(j)`` are position comparisons;
* equality tests like ``(j) = C1(j)`` reduce to prefix-maximum comparisons
  (C1(j) ⊆ C2(j) iff every point up to j sits within the first
  phi^-1(j) positions of chain 2).

Output order is ascending j with the chain-1 interval before the chain-2
one.  Complements are returned as symbolic descriptors (point j plus the
two prefix lengths); materialization against a geometry is on demand and
costs O(lattice size).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .geometry import ChainSpec, ConvexGeometry, _as_chain
from .report import COUNTEREXAMPLE, HOLDS, SKIPPED, CheckReport
from .sublattice import is_sublattice

__all__ = [
    "Complement",
    "NoCaseMatches",
    "OpCounter",
    "classify_complement",
    "complements_from_json",
    "complements_to_json",
    "decompose_and_run",
    "fast_complements",
    "lemma_suite_64_65",
    "materialize",
]

SHAPE_CHAIN1 = "IntervalChain1"
SHAPE_CHAIN2 = "IntervalChain2"
SHAPE_UNION = "UnionBothChains"

TYPE1 = "Type1"
TYPE2 = "Type2"
TYPE3 = "Type3"


class NoCaseMatches(AssertionError):
    """A complement fits no classification case: a theorem violation."""


@dataclass(slots=True)
class OpCounter:
    comparisons: int = 0
    set_ops: int = 0


@dataclass(slots=True, frozen=True)
class Complement:
    """Symbolic complement descriptor relative to a pair of chains.

    ``j`` is the ground point whose closure (j) is the common minimum;
    ``c1_len``/``c2_len`` are the prefix lengths of C1(j)/C2(j) on the two
    chains.  ``shape`` says which intervals are present and ``case`` is the
    classification-theorem tag.
    """

    j: int
    shape: str
    case: str
    c1_len: int
    c2_len: int

    def endpoint_sets(self, chain1, chain2):
        """((j), [maxima]) as ground-point frozensets, per the host chains."""
        c1 = _as_chain(chain1).prefix(self.c1_len)
        c2 = _as_chain(chain2).prefix(self.c2_len)
        closure = c1 & c2
        if self.shape == SHAPE_CHAIN1:
            return closure, [c1]
        if self.shape == SHAPE_CHAIN2:
            return closure, [c2]
        return closure, [c1, c2]


def fast_complements(m: int, phi) -> tuple:
    """All complements of maximal sublattices of the geometry (identity, phi).

    Returns (complements, OpCounter).  OpCounter.comparisons tallies the
    branch comparisons of the second pass; set_ops counts the symbolic
    prefix registrations of the first pass.
    """
    phi = _as_chain(phi)
    phi.validate(m)
    perm = (0,) + phi.perm  # 1-based
    ops = OpCounter()

    # First pass: inverse positions and running prefix maxima stand in for
    # C1(j), C2(j) and (j).
    inv = [0] * (m + 1)
    for k in range(1, m + 1):
        inv[perm[k]] = k
    pm_chain2 = [0] * (m + 1)  # pm_chain2[k] = max point among first k of chain 2
    pm_chain1 = [0] * (m + 1)  # pm_chain1[j] = max chain-2 position among 1..j
    for k in range(1, m + 1):
        pm_chain2[k] = perm[k] if perm[k] > pm_chain2[k - 1] else pm_chain2[k - 1]
        pm_chain1[k] = inv[k] if inv[k] > pm_chain1[k - 1] else pm_chain1[k - 1]
        ops.set_ops += 3

    out = []
    emit = out.append
    comparisons = 0
    for j in range(1, m + 1):
        pj = inv[j]
        comparisons += 1
        if pj != m:
            comparisons += 1
            same_step = j + 1 == perm[pj + 1] if j < m else False
        else:
            same_step = False
        if same_step:
            comparisons += 1
            if pm_chain2[pj] == j:        # (j) = C2(j)
                emit(Complement(j, SHAPE_CHAIN1, TYPE2, j, pj))
            else:
                comparisons += 1
                if pm_chain1[j] == pj:    # (j) = C1(j)
                    emit(Complement(j, SHAPE_CHAIN2, TYPE2, j, pj))
                else:
                    emit(Complement(j, SHAPE_UNION, TYPE3, j, pj))
        else:
            comparisons += 1
            if j < m and inv[j + 1] < pj:          # j+1 in C2(j)
                emit(Complement(j, SHAPE_CHAIN1, TYPE1, j, pj))
            comparisons += 1
            if pj != m:
                comparisons += 1
                if perm[pj + 1] < j:               # phi(phi^-1(j)+1) in C1(j)
                    emit(Complement(j, SHAPE_CHAIN2, TYPE1, j, pj))
    ops.comparisons = comparisons
    return out, ops


def decompose_and_run(m: int, chains) -> list:
    """Complements for two arbitrary chains, via relabeling and block splitting.

    Relabels the ground set so that chain 1 is the identity, splits at the
    common prefixes of the two chains (which are cut elements of the
    lattice), runs the fast path on every block, and re-embeds: block-local
    descriptors are shifted by the block's base prefix and mapped back to
    the original point names.  A cut element squeezed between two singleton
    blocks is doubly irreducible and contributes a singleton complement.
    """
    chain1, chain2 = (_as_chain(c) for c in chains)
    chain1.validate(m)
    chain2.validate(m)
    pos1 = chain1.pos
    norm = [pos1[p] for p in chain2.perm]  # chain 2 in relabeled points

    # Block boundaries: running max of norm equals the position index.
    cuts = [0]
    running = 0
    for k in range(1, m + 1):
        running = max(running, norm[k - 1])
        if running == k:
            cuts.append(k)

    out = []
    for bi in range(len(cuts) - 1):
        lo, hi = cuts[bi], cuts[bi + 1]
        size = hi - lo
        local = [p - lo for p in norm[lo:hi]]
        comps, _ = fast_complements(size, ChainSpec(tuple(local)))
        for c in comps:
            out.append(
                Complement(
                    j=chain1.perm[lo + c.j - 1],
                    shape=c.shape,
                    case=c.case,
                    c1_len=lo + c.c1_len,
                    c2_len=lo + c.c2_len,
                )
            )
        # Cut element below a singleton block, itself topping a singleton
        # block, is doubly irreducible.
        if bi + 2 < len(cuts) and size == 1 and cuts[bi + 2] - hi == 1:
            out.append(
                Complement(
                    j=chain1.perm[hi - 1],
                    shape=SHAPE_CHAIN1,
                    case=TYPE2,
                    c1_len=hi,
                    c2_len=hi,
                )
            )
    out.sort(key=lambda c: (c.c1_len, 0 if c.shape != SHAPE_CHAIN2 else 1))
    return out


def materialize(G: ConvexGeometry, comp: Complement) -> frozenset:
    """The complement as a set of lattice-element ids of the geometry."""
    if len(G.chains) != 2:
        raise ValueError("materialization needs a two-chain geometry")
    lo_set, maxima = comp.endpoint_sets(G.chains[0], G.chains[1])
    L = G.lattice
    lo = G.set_index[lo_set]
    mask = 0
    for top_set in maxima:
        mask |= L.interval_mask(lo, G.set_index[top_set])
    return frozenset(_bits(mask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- classification ------------------------------------------------------------


def classify_complement(G: ConvexGeometry, C) -> str:
    """The unique classification case matched by a complement C (element ids).

    Case 1: a single interval [(j), C_i(j)] whose chain-i successor point
    already sits inside C_i'(j), with (j) off chain i'.  Case 2: a single
    interval with (j) on chain i' and both chains stepping at the same next
    point.  Case 3: the union of both intervals with (j) on neither chain,
    again stepping at the same point.  Raises NoCaseMatches when no case
    (or more than one) fits: that would refute the classification theorem.
    """
    if len(G.chains) != 2:
        raise ValueError("classification needs a two-chain geometry")
    cset = frozenset(C)
    if not cset:
        raise ValueError("empty complement")
    L = G.lattice
    minima = [a for a in cset if not any(b != a and L.leq[b, a] for b in cset)]
    maxima = [a for a in cset if not any(b != a and L.leq[a, b] for b in cset)]
    if len(minima) != 1:
        raise NoCaseMatches(f"complement has {len(minima)} minimal elements")
    lo = minima[0]
    j = _closure_point(G, lo)
    if j is None:
        raise NoCaseMatches("minimum is not a point closure")

    tags = set()
    if len(maxima) == 2:
        expected = {G.chain_prefix_of_point(0, j), G.chain_prefix_of_point(1, j)}
        if set(maxima) == expected and _union_matches(G, lo, maxima, cset):
            x1 = _next_point(G, 0, j)
            x2 = _next_point(G, 1, j)
            on1, on2 = G.chain_member[lo][0], G.chain_member[lo][1]
            if x1 is not None and x1 == x2 and not on1 and not on2:
                tags.add(TYPE3)
    elif len(maxima) == 1:
        hi = maxima[0]
        for i in (0, 1):
            if G.chain_prefix_of_point(i, j) != hi:
                continue
            if frozenset(_bits(L.interval_mask(lo, hi))) != cset:
                continue
            other = 1 - i
            xi = _next_point(G, i, j)
            if xi is None:
                continue
            on_other = G.chain_member[lo][other]
            # chain-i successor already inside C_other(j)?
            inside = G.chains[other].pos[xi] <= G.chains[other].pos[j] if xi != j else False
            if inside and not on_other:
                tags.add(TYPE1)
            if on_other and xi == _next_point(G, other, j):
                tags.add(TYPE2)
    if len(tags) != 1:
        raise NoCaseMatches(f"matched cases {sorted(tags)} for C={sorted(cset)}")
    return tags.pop()


def _closure_point(G: ConvexGeometry, a: int):
    for x in G.element_set(a):
        if G.point_closure(x) == a:
            return x
    return None


def _next_point(G: ConvexGeometry, i: int, j: int):
    """The point added right after C_i(j) on chain i, if any."""
    k = G.chains[i].pos[j]
    return G.chains[i].perm[k] if k < G.m else None


def _union_matches(G, lo, maxima, cset) -> bool:
    mask = 0
    for hi in maxima:
        mask |= G.lattice.interval_mask(lo, hi)
    return frozenset(_bits(mask)) == cset


# -- lemma checks ----------------------------------------------------------------


def lemma_suite_64_65(G: ConvexGeometry) -> CheckReport:
    """Closure claims for the candidate intervals at every eligible point.

    For each ground j whose two chain prefixes both have successors: when
    both chains step at the same point, the union (or single interval, when
    (j) lies on a chain) must be the complement of a sublattice; when they
    step at different points x1 != x2, the interval on the side whose
    successor is already in the other prefix is a sublattice complement and
    the opposite-side interval is not.  Requires trivial intersection.
    """
    label = f"m={G.m}"
    if len(G.chains) != 2:
        return CheckReport("lemma-6.4-6.5", label, 0, SKIPPED, None)
    if not G.has_trivial_intersection():
        return CheckReport("lemma-6.4-6.5", label, 0, SKIPPED, None)
    L = G.lattice
    full = frozenset(range(L.n))
    checked = 0

    def is_complement_of_sublattice(lo, his):
        mask = 0
        for hi in his:
            mask |= L.interval_mask(lo, hi)
        return is_sublattice(L, full - frozenset(_bits(mask)))

    for j in range(1, G.m + 1):
        x1 = _next_point(G, 0, j)
        x2 = _next_point(G, 1, j)
        if x1 is None or x2 is None:
            continue
        checked += 1
        lo = G.point_closure(j)
        c1 = G.chain_prefix_of_point(0, j)
        c2 = G.chain_prefix_of_point(1, j)
        on1, on2 = G.chain_member[lo][0], G.chain_member[lo][1]

        def fail(claim, **detail):
            witness = {
                "j": j,
                "x1": x1,
                "x2": x2,
                "claim": claim,
                "m": G.m,
                "chains": [list(c.perm) for c in G.chains],
            }
            witness.update(detail)
            return CheckReport("lemma-6.4-6.5", label, checked, COUNTEREXAMPLE, witness)

        if x1 == x2:
            closure_x = G.point_closure(x1)
            x_on1 = G.chain_member[closure_x][0]
            x_on2 = G.chain_member[closure_x][1]
            if not x_on1 and not x_on2:
                if on1 or on2:
                    return fail("6.4(1a): (j) should be on neither chain")
                if not is_complement_of_sublattice(lo, [c1, c2]):
                    return fail("6.4(1a): union not a sublattice complement")
            else:
                i = 0 if x_on1 else 1
                if not G.chain_member[lo][i]:
                    return fail("6.4(1b): (j) should lie on the same chain as (x)")
                other_prefix = c2 if i == 0 else c1
                if not is_complement_of_sublattice(lo, [other_prefix]):
                    return fail("6.4(1b): interval not a sublattice complement")
        else:
            inside = [
                G.chains[1 - i].pos[xi] <= G.chains[1 - i].pos[j]
                for i, xi in ((0, x1), (1, x2))
            ]
            for i, ci in ((0, c1), (1, c2)):
                if inside[i]:
                    if not is_complement_of_sublattice(lo, [ci]):
                        return fail(f"6.4(2): chain-{i + 1} interval not a complement")
                elif not inside[1 - i]:
                    # Both successors outside the opposite prefixes: the
                    # interval is not the complement of any sublattice.
                    if is_complement_of_sublattice(lo, [ci]):
                        return fail(f"6.4(3): chain-{i + 1} interval should fail")
                else:
                    # Mixed case: the written claim of 6.4(3) can fail (the
                    # interval may complement a non-maximal sublattice), but
                    # it must never complement a maximal one.
                    keep = full - frozenset(_bits(L.interval_mask(lo, ci)))
                    if is_sublattice(L, keep) and _is_maximal(L, keep):
                        return fail(f"6.4(3'): chain-{i + 1} interval is a maximal complement")
    return CheckReport("lemma-6.4-6.5", label, checked, HOLDS)


def _is_maximal(L, keep) -> bool:
    from .sublattice import is_maximal_sublattice

    return is_maximal_sublattice(L, keep)


# -- serialization ----------------------------------------------------------------


def complements_to_json(comps, chain1, chain2) -> str:
    """JSON array of descriptors with endpoint sets as sorted point lists."""
    rows = []
    for c in comps:
        lo, maxima = c.endpoint_sets(chain1, chain2)
        rows.append(
            {
                "j": c.j,
                "shape": c.shape,
                "class": c.case,
                "intervals": [[sorted(lo), sorted(hi)] for hi in maxima],
            }
        )
    return json.dumps(rows)


def complements_from_json(text: str):
    rows = json.loads(text)
    return [
        {
            "j": r["j"],
            "shape": r["shape"],
            "class": r["class"],
            "intervals": [[sorted(a), sorted(b)] for a, b in r["intervals"]],
        }
        for r in rows
    ]
