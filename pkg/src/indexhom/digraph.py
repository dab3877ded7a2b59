"""Loopless digraph container and exact graph parameters at desk scale.

Adjacency is stored as per-vertex bitmask integers, which keeps the exact
searches (clique, coloring, subset enumeration) fast without any external
dependency.  Every exact operation has a hard size cap and raises
SizeLimitExceeded beyond it; there are no silent heuristic fallbacks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError, SizeLimitExceeded

CLIQUE_CAP = 64          # clique / independence / chromatic searches
SUBSET_CAP = 20          # largest induced subgraph mapping into a target
CORE_CAP = 12            # retract search
ISO_CAP = 8              # brute-force isomorphism


class Digraph:
    """Immutable loopless directed graph on vertices 0..n-1."""

    __slots__ = ("n", "_out", "_in", "labels")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} not allowed")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.n = n
        self._out = tuple(out)
        self._in = tuple(inn)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_out_masks(cls, n: int, out_masks: Sequence[int],
                       labels: Sequence[str] | None = None,
                       _in_masks: Sequence[int] | None = None) -> "Digraph":
        g = cls.__new__(cls)
        out = list(out_masks)
        for u in range(n):
            if out[u] >> n:
                raise ValueError("mask refers to vertices outside range")
            if out[u] & (1 << u):
                raise ValueError(f"self-loop at vertex {u} not allowed")
        if _in_masks is not None:
            # caller-supplied transpose, trusted (internal fast path)
            inn = list(_in_masks)
        else:
            inn = [0] * n
            for u in range(n):
                m = out[u]
                while m:
                    low = m & -m
                    inn[low.bit_length() - 1] |= 1 << u
                    m ^= low
        g.n = n
        g._out = tuple(out)
        g._in = tuple(inn)
        g.labels = tuple(labels) if labels is not None else None
        return g

    # -- queries -----------------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def out_mask(self, u: int) -> int:
        return self._out[u]

    def in_mask(self, u: int) -> int:
        return self._in[u]

    def out_degree(self, u: int) -> int:
        return self._out[u].bit_count()

    def in_degree(self, u: int) -> int:
        return self._in[u].bit_count()

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self._out[u]
            while m:
                low = m & -m
                out.append((u, low.bit_length() - 1))
                m ^= low
        return out

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self._out)

    # -- derived graphs ------------------------------------------------------

    def complement(self) -> "Digraph":
        """Directional complement: arc (u,v) iff u != v and (u,v) absent here."""
        full = (1 << self.n) - 1
        masks = [full & ~self._out[u] & ~(1 << u) for u in range(self.n)]
        return Digraph.from_out_masks(self.n, masks, self.labels)

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        arcs = [
            (pos[u], pos[v])
            for u in vs
            for v in vs
            if u != v and self.has_arc(u, v)
        ]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in vs]
        return Digraph(len(vs), arcs, labels)

    def underlying_masks(self) -> tuple[int, ...]:
        """Adjacency of the underlying undirected graph (arc either way)."""
        return tuple(self._out[u] | self._in[u] for u in range(self.n))

    def bidirectional_masks(self) -> tuple[int, ...]:
        """Adjacency restricted to pairs joined by arcs in both directions."""
        return tuple(self._out[u] & self._in[u] for u in range(self.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and other.n == self.n
            and other._out == self._out
        )

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count})"


def complement(g: Digraph) -> Digraph:
    return g.complement()


def empty_digraph(n: int) -> Digraph:
    return Digraph(n)


def complete_digraph(n: int) -> Digraph:
    """All arcs in both directions."""
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("directed cycle needs at least 2 vertices")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def enumerate_digraphs(n: int) -> Iterator[Digraph]:
    """All 2^(n(n-1)) labeled loopless digraphs on n vertices, in a fixed order."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(1 << len(pairs)):
        yield Digraph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


# -- colorings ---------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color assignment; proper when no arc joins equal colors."""

    assignment: tuple[int, ...]
    num_colors: int

    def is_proper(self, g: Digraph) -> bool:
        a = self.assignment
        for u, v in g.arcs():
            if a[u] == a[v]:
                return False
        return True


# -- exact parameters ---------------------------------------------------------


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise SizeLimitExceeded(f"{what} capped at {cap} vertices, got {n}")


def _max_clique_masks(masks: Sequence[int], n: int) -> int:
    """Maximum clique size for a symmetric adjacency given as bitmasks."""
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        # pivot on the candidate covering most of the rest
        m = cand
        pivot = -1
        cover = -1
        while m:
            low = m & -m
            v = low.bit_length() - 1
            c = (cand & masks[v]).bit_count()
            if c > cover:
                cover = c
                pivot = v
            m ^= low
        rest = cand & ~masks[pivot]
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            expand(size + 1, cand & masks[v])
            cand &= ~low
            rest ^= low
            if size + cand.bit_count() <= best:
                return

    expand(0, (1 << n) - 1)
    return best


def clique_number(g: Digraph, cap: int = CLIQUE_CAP) -> int:
    """Largest set of vertices pairwise joined by arcs in both directions."""
    _check_cap(g.n, cap, "clique search")
    if g.n == 0:
        return 0
    return _max_clique_masks(g.bidirectional_masks(), g.n)


def independence_number(g: Digraph, cap: int = CLIQUE_CAP) -> int:
    """Largest set with no arc in either direction; equals the complement's clique."""
    return clique_number(g.complement(), cap)


def _dsatur(adj: Sequence[int], n: int) -> tuple[int, list[int]]:
    colors = [-1] * n
    for _ in range(n):
        # pick uncolored vertex with max saturation, ties by degree then index
        best_v = -1
        best_key = None
        for v in range(n):
            if colors[v] != -1:
                continue
            sat = len({colors[u] for u in _bits(adj[v]) if colors[u] != -1})
            key = (sat, adj[v].bit_count(), -v)
            if best_key is None or key > best_key:
                best_key = key
                best_v = v
        used = {colors[u] for u in _bits(adj[best_v]) if colors[u] != -1}
        c = 0
        while c in used:
            c += 1
        colors[best_v] = c
    return (max(colors) + 1 if n else 0), colors


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _exact_k_coloring(adj: Sequence[int], n: int, k: int) -> list[int] | None:
    """Backtracking k-coloring; equal colors may only reuse or open one new color."""
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    colors = [-1] * n
    color_masks = [0] * k

    def bt(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        limit = min(used + 1, k)
        for c in range(limit):
            if not color_masks[c] & adj[v]:
                colors[v] = c
                color_masks[c] |= 1 << v
                if bt(i + 1, max(used, c + 1)):
                    return True
                color_masks[c] &= ~(1 << v)
                colors[v] = -1
        return False

    return colors if bt(0, 0) else None


def chromatic_number(g: Digraph, cap: int = CLIQUE_CAP) -> tuple[int, Coloring]:
    """Exact chromatic number treating an arc in either direction as a constraint.

    Branch and bound between the clique lower bound and the DSATUR upper
    bound; the returned coloring is a proper witness.
    """
    _check_cap(g.n, cap, "chromatic search")
    n = g.n
    if n == 0:
        return 0, Coloring((), 0)
    adj = g.underlying_masks()
    lb = _max_clique_masks(adj, n)
    ub, greedy = _dsatur(adj, n)
    if lb < ub:
        for k in range(lb, ub):
            found = _exact_k_coloring(adj, n, k)
            if found is not None:
                return k, Coloring(tuple(found), k)
    return ub, Coloring(tuple(greedy), ub)


def largest_induced_hom_subgraph(g: Digraph, target: Digraph,
                                 cap: int = SUBSET_CAP) -> int:
    """Size of the largest induced subgraph admitting a homomorphism into target.

    Subsets are searched largest-first; with a complete bidirectional target
    on l vertices this is the largest l-colorable induced subgraph.
    """
    from . import hom

    _check_cap(g.n, cap, "induced-subgraph search")
    n = g.n
    if n == 0 or target.n == 0:
        return 0
    if hom.hom_exists(g, target) is not None:
        return n
    # vertices sharing an image must be pairwise non-adjacent
    ub = min(n - 1, target.n * independence_number(g))
    for size in range(ub, 0, -1):
        for subset in itertools.combinations(range(n), size):
            if hom.hom_exists(g.induced(subset), target) is not None:
                return size
    return 0


def core(g: Digraph, cap: int = CORE_CAP) -> Digraph:
    """Minimal induced subgraph homomorphically equivalent to g.

    Repeatedly looks for a homomorphism into a one-vertex-deleted induced
    subgraph (such a map exists iff a proper retract exists) and shrinks to
    its image until no vertex can be dropped.
    """
    from . import hom

    _check_cap(g.n, cap, "core search")
    cur = g
    shrunk = True
    while shrunk and cur.n > 1:
        shrunk = False
        for x in range(cur.n):
            keep = [v for v in range(cur.n) if v != x]
            witness = hom.hom_exists(cur, cur.induced(keep))
            if witness is not None:
                image = sorted({keep[t] for t in witness.map})
                cur = cur.induced(image)
                shrunk = True
                break
    return cur


def is_directed_cycle(g: Digraph) -> bool:
    """True iff the graph is a single directed cycle on n >= 2 vertices."""
    n = g.n
    if n < 2:
        return False
    succ = []
    for v in range(n):
        if g.out_degree(v) != 1 or g.in_degree(v) != 1:
            return False
        succ.append(g.out_mask(v).bit_length() - 1)
    seen = 1
    v = succ[0]
    while v != 0:
        seen += 1
        v = succ[v]
        if seen > n:
            return False
    return seen == n


def are_isomorphic(g: Digraph, h: Digraph, cap: int = ISO_CAP) -> bool:
    """Brute-force isomorphism test for tiny graphs."""
    if g.n != h.n:
        return False
    _check_cap(g.n, cap, "isomorphism test")
    if g.arc_count != h.arc_count:
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.has_arc(perm[u], perm[v]) == g.has_arc(u, v)
               for u in range(g.n) for v in range(g.n) if u != v):
            return True
    return False


# -- text format ---------------------------------------------------------------
#
# Shared repo-wide format: `digraph <n>` header, one `u v` arc per line,
# `#` starts a comment.  A `matrix <n>` header instead introduces n rows of
# n 0/1 entries.  The writer always emits sorted edge lists.


def format_digraph(g: Digraph) -> str:
    lines = [f"digraph {g.n}"]
    for u, v in sorted(g.arcs()):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    header = None
    n = 0
    arcs: list[tuple[int, int]] = []
    matrix_rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2 or tokens[0] not in ("digraph", "matrix"):
                raise GraphParseError(lineno, "expected header 'digraph <n>' or 'matrix <n>'")
            try:
                n = int(tokens[1])
            except ValueError:
                raise GraphParseError(lineno, f"bad vertex count {tokens[1]!r}") from None
            if n < 0:
                raise GraphParseError(lineno, "vertex count must be >= 0")
            header = tokens[0]
            continue
        if header == "digraph":
            if len(tokens) != 2:
                raise GraphParseError(lineno, "expected 'u v' arc line")
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphParseError(lineno, "arc endpoints must be integers") from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(lineno, f"arc ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise GraphParseError(lineno, f"self-loop at {u} not allowed")
            arcs.append((u, v))
        else:
            if len(tokens) != n:
                raise GraphParseError(lineno, f"expected {n} matrix entries")
            try:
                row = [int(t) for t in tokens]
            except ValueError:
                raise GraphParseError(lineno, "matrix entries must be 0 or 1") from None
            if any(x not in (0, 1) for x in row):
                raise GraphParseError(lineno, "matrix entries must be 0 or 1")
            matrix_rows.append(row)
    if header is None:
        raise GraphParseError(1, "empty graph file")
    if header == "matrix":
        if len(matrix_rows) != n:
            raise GraphParseError(1, f"expected {n} matrix rows, got {len(matrix_rows)}")
        for i in range(n):
            if matrix_rows[i][i]:
                raise GraphParseError(1, f"self-loop at {i} not allowed")
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and matrix_rows[u][v]]
    return Digraph(n, arcs)
