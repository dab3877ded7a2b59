"""Exact digraph homomorphism decision, enumeration, and the complement preorder.

The solver is plain backtracking over source vertices in max-degree-first
order with forward checking: every assignment intersects the candidate sets
of constrained later vertices with the image's out/in neighborhoods in the
target.  Candidate sets are bitmask integers, so targets with thousands of
vertices stay cheap.  Answers and witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph
from .errors import SizeLimitExceeded, VerificationFailed

SOURCE_CAP = 64
TARGET_CAP = 10_000


@dataclass(frozen=True)
class HomWitness:
    """Verified vertex map: map[u] is the image of source vertex u."""

    map: tuple[int, ...]


def verify_witness(g: Digraph, h: Digraph, witness: HomWitness) -> bool:
    m = witness.map
    if len(m) != g.n or any(not 0 <= t < h.n for t in m):
        return False
    return all(h.has_arc(m[u], m[v]) for u, v in g.arcs())


def _search_order(g: Digraph) -> list[int]:
    return sorted(range(g.n),
                  key=lambda v: (-(g.out_degree(v) + g.in_degree(v)), v))


def _solve(g: Digraph, h: Digraph, *, fix_first: bool, count_limit: int | None):
    """Shared backtracking core.

    With count_limit=None, returns the first witness map (by search order)
    or None.  Otherwise returns the number of homomorphisms found, capped.
    """
    n = g.n
    if n == 0:
        return HomWitness(()) if count_limit is None else 1
    if h.n == 0:
        return None if count_limit is None else 0

    order = _search_order(g)
    full = (1 << h.n) - 1
    domains = [full] * n
    if fix_first:
        domains[0] = 1  # image of the first-searched vertex pinned to vertex 0

    # constraints from position i to later positions j
    cons: list[list[tuple[int, bool, bool]]] = [[] for _ in range(n)]
    for i in range(n):
        u = order[i]
        for j in range(i + 1, n):
            x = order[j]
            fwd = g.has_arc(u, x)
            bwd = g.has_arc(x, u)
            if fwd or bwd:
                cons[i].append((j, fwd, bwd))

    assignment = [-1] * n
    count = 0

    def backtrack(i: int) -> bool:
        nonlocal count
        if i == n:
            count += 1
            return count_limit is None or count >= count_limit
        dom = domains[i]
        while dom:
            low = dom & -dom
            dom ^= low
            v = low.bit_length() - 1
            assignment[i] = v
            saved = []
            dead = False
            for j, fwd, bwd in cons[i]:
                nd = domains[j]
                if fwd:
                    nd &= h.out_mask(v)
                if bwd:
                    nd &= h.in_mask(v)
                if nd != domains[j]:
                    saved.append((j, domains[j]))
                    domains[j] = nd
                    if not nd:
                        dead = True
                        break
            if not dead and backtrack(i + 1):
                return True
            for j, old in saved:
                domains[j] = old
        assignment[i] = -1
        return False

    found = backtrack(0)
    if count_limit is not None:
        return count
    if not found:
        return None
    mapping = [0] * n
    for i, u in enumerate(order):
        mapping[u] = assignment[i]
    witness = HomWitness(tuple(mapping))
    if not verify_witness(g, h, witness):
        raise VerificationFailed("solver returned an invalid homomorphism")
    return witness


def _check_caps(g: Digraph, h: Digraph, source_cap: int, target_cap: int) -> None:
    if g.n > source_cap:
        raise SizeLimitExceeded(f"source capped at {source_cap} vertices, got {g.n}")
    if h.n > target_cap:
        raise SizeLimitExceeded(f"target capped at {target_cap} vertices, got {h.n}")


def hom_exists(g: Digraph, h: Digraph, *, target_vertex_transitive: bool = False,
               source_cap: int = SOURCE_CAP, target_cap: int = TARGET_CAP) -> HomWitness | None:
    """First homomorphism from g to h under the deterministic search order, or None.

    target_vertex_transitive=True pins the image of the first-searched source
    vertex to target vertex 0.  That is only sound when the target's
    automorphism group is transitive on vertices; the caller asserts it.
    """
    _check_caps(g, h, source_cap, target_cap)
    return _solve(g, h, fix_first=target_vertex_transitive, count_limit=None)


def hom_count(g: Digraph, h: Digraph, limit: int = 10**6, *,
              source_cap: int = SOURCE_CAP, target_cap: int = TARGET_CAP) -> int:
    """Number of distinct homomorphisms from g to h, capped at limit."""
    _check_caps(g, h, source_cap, target_cap)
    return _solve(g, h, fix_first=False, count_limit=limit)


def preorder_leq(g: Digraph, h: Digraph, *, source_cap: int = SOURCE_CAP,
                 target_cap: int = TARGET_CAP) -> bool:
    """Complement preorder: true iff complement(g) maps into complement(h)."""
    return hom_exists(g.complement(), h.complement(),
                      source_cap=source_cap, target_cap=target_cap) is not None
