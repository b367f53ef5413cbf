"""Independent brute-force oracles the tests check the library against.

Everything here works from first principles (the order matrix, raw set
operations) and deliberately avoids the code paths under test.
"""
from __future__ import annotations

from itertools import chain, combinations


def naive_glb(leq, a, b):
    """Unique greatest common lower bound from the order matrix, or None."""
    n = len(leq)
    lows = [z for z in range(n) if leq[z, a] and leq[z, b]]
    tops = [z for z in lows if all(leq[w, z] for w in lows)]
    return tops[0] if len(tops) == 1 else None


def naive_lub(leq, a, b):
    n = len(leq)
    ups = [z for z in range(n) if leq[a, z] and leq[b, z]]
    bots = [z for z in ups if all(leq[z, w] for w in ups)]
    return bots[0] if len(bots) == 1 else None


def naive_is_sd_join(L):
    for x in range(L.n):
        for y in range(L.n):
            for z in range(L.n):
                if L.join[x, y] == L.join[x, z] and L.join[x, L.meet[y, z]] != L.join[x, y]:
                    return False
    return True


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def brute_canonical_join_rep(L, x):
    """Canonical join representation straight from the definition.

    Enumerates every join representation of x by join-irreducibles and picks
    the one that is way-below all of them and contained in each refinement
    of itself; None if no representation qualifies.
    """
    if x == L.bottom:
        return frozenset()
    ji_below = [j for j in sorted(L.irreducibles.ji) if L.leq[j, x]]
    reps = []
    for sub in powerset(ji_below):
        if sub and _fold_lub(L.leq, sub) == x:
            reps.append(frozenset(sub))
    winners = []
    for cand in reps:
        if all(_way_below(L.leq, cand, other) for other in reps) and all(
            not _way_below(L.leq, other, cand) or cand <= other for other in reps
        ):
            winners.append(cand)
    # The two defining clauses force uniqueness.
    assert len(winners) <= 1, (x, winners)
    return winners[0] if winners else None


def brute_canonical_meet_rep(L, x):
    if x == L.top:
        return frozenset()
    mi_above = [m for m in sorted(L.irreducibles.mi) if L.leq[x, m]]
    reps = []
    for sub in powerset(mi_above):
        if sub and _fold_glb(L.leq, sub) == x:
            reps.append(frozenset(sub))
    winners = []
    for cand in reps:
        if all(_way_above(L.leq, cand, other) for other in reps) and all(
            not _way_above(L.leq, other, cand) or cand <= other for other in reps
        ):
            winners.append(cand)
    assert len(winners) <= 1, (x, winners)
    return winners[0] if winners else None


def _way_below(leq, X, Y):
    return all(any(leq[x, y] for y in Y) for x in X)


def _way_above(leq, X, Y):
    return all(any(leq[y, x] for y in Y) for x in X)


def _fold_lub(leq, items):
    it = iter(items)
    acc = next(it)
    for v in it:
        acc = naive_lub(leq, acc, v)
        if acc is None:
            return None
    return acc


def _fold_glb(leq, items):
    it = iter(items)
    acc = next(it)
    for v in it:
        acc = naive_glb(leq, acc, v)
        if acc is None:
            return None
    return acc


def brute_removable_sets(L):
    """All nonempty C avoiding bottom/top with L minus C closed under both ops."""
    interior = [a for a in range(L.n) if a not in (L.bottom, L.top)]
    out = []
    for sub in powerset(interior):
        if not sub:
            continue
        keep = [a for a in range(L.n) if a not in sub]
        cset = set(sub)
        closed = all(
            L.meet[a, b] not in cset and L.join[a, b] not in cset
            for a in keep
            for b in keep
        )
        if closed:
            out.append(frozenset(sub))
    return out


def brute_max_complements(L):
    """Minimal removable sets: the independent subset-scan oracle (n small)."""
    removable = brute_removable_sets(L)
    return sorted(
        (c for c in removable if not any(r < c for r in removable)),
        key=lambda s: sorted(s),
    )


def closure_scheme_b(L, S):
    """Def 2.1(6)(b): iterate S -> (S^meet)^join to the fixpoint."""
    cur = frozenset(S)
    while True:
        met = _op_closure(L.meet, cur)
        joined = _op_closure(L.join, met)
        if joined == cur:
            return cur
        cur = joined


def _op_closure(table, items):
    vals = set(items)
    frontier = list(vals)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(vals):
                c = int(table[a, b])
                if c not in vals:
                    vals.add(c)
                    fresh.append(c)
        frontier = fresh
    return frozenset(vals)


def intersection_closure(sets):
    """Close a family of frozensets under pairwise intersection (fixpoint)."""
    family = set(sets)
    while True:
        fresh = {a & b for a in family for b in family} - family
        if not fresh:
            return family
        family |= fresh


def interval_set(L, lo, hi):
    return frozenset(c for c in range(L.n) if L.leq[lo, c] and L.leq[c, hi])


def random_cover_lattice(rng, n):
    """Random lattice attempt from a sampled cover DAG; None when not a lattice."""
    from latmax.lattice import NotALattice, from_cover_relations

    pairs = []
    for b in range(1, n):
        k = rng.randint(1, 2)
        lows = rng.sample(range(b), min(k, b))
        pairs.extend((a, b) for a in lows)
    try:
        return from_cover_relations(n, pairs)
    except NotALattice:
        return None
