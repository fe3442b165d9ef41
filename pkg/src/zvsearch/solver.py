"""Exact solvers and lower-bound certificates.

Three engines live here:

  * a reachability closure over clean sets for the plain game, pruned to
    an antichain of set-maximal states (sound because one round of the
    dynamics is monotone in the protected set),
  * an exact visited-set solver for monotonic searches (no antichain
    there: a bigger clean set can be a strictly worse monotonic
    position, a 3-star already shows it),
  * a subset DP for vertex separation, which equals pathwidth and hands
    us monotonic inspection numbers with a bag-sequence witness.

Plus the boundary-gap certificate: a size i such that no set of size
strictly between i-k and i has boundary below k. No width-k search can
grow its protected set past that gap, so finding one proves the
inspection number exceeds k. The converse fails (K_4 with k=3 has no
gap), which is why the certificate is a separate artifact and not part
of the solver's answer.

Everything returns replayable witnesses; nothing is trusted without a
simulation pass somewhere in the tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InputError, ResourceLimitError
from .game import is_monotonic, is_successful, simulate
from .graphs import boundary

_MASK_CAP = 22  # 2^22 numpy table is ~4M entries; beyond that, refuse


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve: the value, a replayable witness, and how much
    state space it cost. value is None when the scan stopped at k_max
    without an answer (that is "don't know up to here", never "no")."""

    value: object  # int or None
    witness: object  # tuple of steps, or None
    explored_states: int
    method: str

    def to_record(self):
        wit = None
        if self.witness is not None:
            wit = [sorted(s) for s in self.witness]
        return {
            "value": self.value,
            "witness": wit,
            "explored_states": self.explored_states,
            "method": self.method,
        }


@dataclass(frozen=True)
class PathDecomposition:
    """Bag sequence; every edge inside some bag, occurrences contiguous."""

    bags: tuple

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=1) - 1


@dataclass(frozen=True)
class BoundaryGapCertificate:
    """Proof that in(G) > k: no achievable set size lies strictly between
    i-k and i, so a width-k search cannot grow past size i."""

    k: int
    i: int
    profile: frozenset

    def to_record(self):
        return {"k": self.k, "i": self.i, "profile": sorted(self.profile)}


def _clean_after(nbr, full, protected):
    """Clean set after one round with the given protected set."""
    clean = protected
    outside = full & ~protected
    rem = protected
    while rem:
        low = rem & -rem
        if nbr[low.bit_length() - 1] & outside:
            clean &= ~low
        rem ^= low
    return clean


def _replay(parents, state):
    steps = []
    while parents[state] is not None:
        state, step = parents[state]
        steps.append(step)
    steps.reverse()
    return steps


def _closure(g, k, clean_start, state_budget, prune, monotone):
    """Breadth-first closure over clean-set states.

    Plain mode generates only full-size moves over dirty vertices: the
    round map is monotone in the protected set, so padding a smaller
    step never loses a solution. Monotone mode must try every step size
    (padding can overshoot into a state with no monotonic continuation)
    and must keep every visited state instead of a maximal antichain.

    Returns (steps or None, states expanded).
    """
    _, nbr, full = g.masks()
    start = g.to_mask(clean_start)
    if start == full:
        return [], 0
    if k == 0:
        return None, 0
    if k >= g.n:
        return [frozenset(g.vertices)], 1

    vs = g.vertices
    parents = {start: None}
    frontier = deque([start])
    archive = [start]
    expanded = 0
    while frontier:
        state = frontier.popleft()
        expanded += 1
        if expanded > state_budget:
            raise ResourceLimitError(
                f"solver state budget exhausted at k={k}",
                budget=state_budget,
                used=expanded,
            )
        dirty = [i for i in range(g.n) if not state >> i & 1]
        top = min(k, len(dirty))
        sizes = range(1, top + 1) if monotone else (top,)
        for j in sizes:
            for pick in combinations(dirty, j):
                protected = state
                for i in pick:
                    protected |= 1 << i
                nxt = _clean_after(nbr, full, protected)
                if nxt == full:
                    parents[nxt] = (state, frozenset(vs[i] for i in pick))
                    return _replay(parents, nxt), expanded
                if monotone and (nxt & state != state or nxt == state):
                    continue
                if nxt in parents:
                    continue
                if prune and not monotone:
                    if any(other | nxt == other for other in archive):
                        continue
                    archive[:] = [o for o in archive if o | nxt != nxt]
                    archive.append(nxt)
                parents[nxt] = (state, frozenset(vs[i] for i in pick))
                frontier.append(nxt)
    return None, expanded


# ---------------------------------------------------------------------------
# plain game


def exists_successful_search(g, k, clean_start=(), state_budget=200_000,
                             prune=True):
    """Steps of a successful search with width <= k, or None.

    None is a proof: the closure is exhaustive over reachable clean
    sets. prune=False disables the antichain and keeps every visited
    state; it exists so tests can cross-check the pruning.
    """
    if k < 0:
        raise InputError("k must be >= 0")
    steps, _ = _closure(g, k, clean_start, state_budget, prune, False)
    return steps


def inspection_number(g, k_max=None, clean_start=(), state_budget=200_000):
    """Smallest width admitting a successful search, as a SolveResult.

    The scan is capped at pathwidth+1 whenever the graph is small enough
    for the DP, since a bag sweep of an optimal decomposition always
    succeeds at that width. Disconnected graphs decompose: the searchers
    finish one component, move on, and nothing recontaminates behind
    them, so the answer is the max over components.
    """
    if g.n == 0:
        raise InputError("empty graph")
    if k_max is not None and k_max < 1:
        raise InputError("k_max must be >= 1")
    comps = g.components()
    if len(comps) > 1:
        start = frozenset(clean_start)
        best = 0
        all_steps = []
        states = 0
        for comp in comps:
            sub = g.induced(comp)
            res = inspection_number(sub, k_max=k_max,
                                    clean_start=start & comp,
                                    state_budget=state_budget)
            states += res.explored_states
            if res.value is None:
                return SolveResult(None, None, states, res.method)
            best = max(best, res.value)
            all_steps.extend(res.witness)
        return SolveResult(best, tuple(all_steps), states,
                           "clean-set closure per component")

    cap = g.n
    method = "clean-set closure"
    if g.n <= _MASK_CAP:
        width, _ = pathwidth(g)
        cap = width + 1
        method = "clean-set closure, capped at pathwidth+1"
    if k_max is not None:
        cap = min(cap, k_max)
    states = 0
    for k in range(1, cap + 1):
        steps, used = _closure(g, k, clean_start, state_budget, True, False)
        states += used
        if steps is not None:
            return SolveResult(k, tuple(steps), states, method)
    return SolveResult(None, None, states, method)


# ---------------------------------------------------------------------------
# monotonic variant


def exists_monotonic_search(g, k, clean_start=(), state_budget=400_000):
    """Steps of a successful search whose clean sets never shrink, or None.

    Exact visited-set exploration; see _closure for why neither the
    antichain nor the full-size-move shortcut is available here.
    """
    if k < 0:
        raise InputError("k must be >= 0")
    steps, _ = _closure(g, k, clean_start, state_budget, False, True)
    return steps


# ---------------------------------------------------------------------------
# pathwidth via vertex separation


def _mask_tables(g):
    """(popcount, boundary size) for every subset of a small graph."""
    n = g.n
    if n > _MASK_CAP:
        raise ResourceLimitError(
            f"subset tables need n <= {_MASK_CAP}, got {n}",
            budget=_MASK_CAP,
            used=n,
        )
    _, nbr, _ = g.masks()
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.uint8)
    bnd = np.zeros(1 << n, dtype=np.uint8)
    for v in range(n):
        inm = ((masks >> v) & 1).astype(bool)
        pc += inm
        if nbr[v]:
            hasout = (masks | nbr[v]) != masks
            bnd += inm & hasout
    return masks, pc, bnd


def _vertex_separation(g):
    """(separation number, layout) of a connected small graph."""
    n = g.n
    if n == 1:
        return 0, [g.vertices[0]]
    masks, pc, bnd = _mask_tables(g)
    f = np.zeros(1 << n, dtype=np.uint8)
    for layer in range(1, n + 1):
        sel = np.nonzero(pc == layer)[0]
        best = np.full(len(sel), 255, dtype=np.uint8)
        for v in range(n):
            has = ((sel >> v) & 1).astype(bool)
            if not has.any():
                continue
            cand = f[sel[has] ^ (1 << v)]
            best[has] = np.minimum(best[has], cand)
        f[sel] = np.maximum(best, bnd[sel])

    # rebuild a layout: peel the last vertex of an optimal ordering
    layout = []
    mask = (1 << n) - 1
    while mask:
        target = f[mask]
        for v in range(n):
            if mask >> v & 1 and f[mask ^ (1 << v)] <= target:
                layout.append(g.vertices[v])
                mask ^= 1 << v
                break
        else:
            raise AssertionError("DP table is inconsistent")
    layout.reverse()
    return int(f[(1 << n) - 1]), layout


def pathwidth(g):
    """(pathwidth, PathDecomposition): exact, via vertex separation.

    Bag i is the boundary of the first i-1 layout vertices plus the i-th
    vertex itself. Components are laid out one after another.
    """
    if g.n == 0:
        raise InputError("empty graph")
    width = 0
    bags = []
    for comp in g.components():
        sub = g.induced(comp)
        vs, order = _vertex_separation(sub)
        width = max(width, vs)
        prefix = set()
        for v in order:
            bags.append(frozenset(boundary(sub, prefix) | {v}))
            prefix.add(v)
    return width, PathDecomposition(tuple(bags))


def is_path_decomposition(g, bags):
    """Validate bag coverage and contiguity."""
    bags = [frozenset(b) for b in bags]
    seen = set().union(*bags) if bags else set()
    if seen != set(g.vertices):
        return False
    for u, v in g.edges():
        if not any(u in b and v in b for b in bags):
            return False
    for v in g.vertices:
        hits = [i for i, b in enumerate(bags) if v in b]
        if hits[-1] - hits[0] != len(hits) - 1:
            return False
    return True


def monotonic_inspection_number(g):
    """Monotonic inspection number as a SolveResult.

    Equals pathwidth + 1; the bag sequence of an optimal decomposition,
    searched in order, is a monotonic search of that width. The witness
    is simulated before returning, as a cheap self-check.
    """
    width, decomp = pathwidth(g)
    steps = tuple(decomp.bags)
    trace = simulate(g, steps)
    assert is_successful(trace) and is_monotonic(trace), "bag sweep failed"
    return SolveResult(width + 1, steps, 1 << g.n, "pathwidth + 1")


# ---------------------------------------------------------------------------
# boundary profiles and the gap certificate


def boundary_profile(g, k):
    """Set of sizes |C| over all vertex sets C with boundary below k."""
    if g.n == 0:
        raise InputError("empty graph")
    if k < 0:
        raise InputError("k must be >= 0")
    _, pc, bnd = _mask_tables(g)
    hit = bnd < k
    return frozenset(int(i) for i in np.unique(pc[hit]))


def boundary_gap_certificate(g, k):
    """Smallest size i in [1, n] with no profile member strictly between
    i-k and i, or None.

    A width-k search grows its protected set by at most k per step while
    every intermediate clean set must keep boundary below k; a gap of k
    consecutive missing sizes under i is therefore unreachable. None
    means every i is witnessed, which proves nothing about in(G).
    """
    profile = boundary_profile(g, k)
    for i in range(1, g.n + 1):
        if not any(i - k < c < i for c in profile):
            return BoundaryGapCertificate(k, i, profile)
    return None
