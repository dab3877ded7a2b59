"""Construction and structural operations for the pair graphs H_k^q.

A vertex of H_k^q is an ordered pair (v, w) of normal vectors in F_q^k with
<v, w> != 0, and there is an arc from (v, w) to (v', w') exactly when
<v, w'> != 0 (between distinct vertices; the graphs are kept loopless).
The module also builds the explicit witnesses used elsewhere: the
automorphism moving any vertex onto the base vertex (e1, e1), the
first-component coloring of the complement, large independent and
l-colorable sets in the complement from a primitive element, and the
hardness-premise gadget checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from . import gf, hom
from .digraph import Coloring, Digraph, directed_cycle
from .errors import (
    ConstructionUnavailable,
    InvalidVertex,
    SizeLimitExceeded,
    VerificationFailed,
)
from .gf import FiniteField, FVector

HKQ_VERTEX_CAP = 10_000


def hkq_vertex_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1) * q ** (k - 1)


def hkq_degree(q: int, k: int) -> int:
    return q ** (2 * (k - 1)) - 1


@dataclass(frozen=True)
class HkqGraph:
    """A constructed pair graph plus its vertex labels.

    labels[i] is the ordered pair (v, w) of normal vectors at vertex i;
    index maps a label pair back to the vertex id.
    """

    field: FiniteField
    k: int
    graph: Digraph
    labels: tuple[tuple[FVector, FVector], ...]
    index: dict = dataclass_field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.index.update({lab: i for i, lab in enumerate(self.labels)})

    def vertex_id(self, v: FVector, w: FVector) -> int:
        try:
            return self.index[(v, w)]
        except KeyError:
            raise InvalidVertex(f"({v}, {w}) is not a vertex") from None


def construct_hkq(field: FiniteField, k: int,
                  max_vertices: int = HKQ_VERTEX_CAP) -> HkqGraph:
    """Build H_k^q with vertices ordered lexicographically by (v, w) labels."""
    if k < 1:
        raise ValueError("k must be >= 1")
    q = field.q
    expected = hkq_vertex_count(q, k)
    if expected > max_vertices:
        raise SizeLimitExceeded(
            f"H_{k}^{q} has {expected} vertices, over the cap {max_vertices}")

    normals = gf.enumerate_normal_vectors(field, k)
    nv = len(normals)
    ip = [[gf.inner(v, w) for w in normals] for v in normals]

    labels_idx = [(vi, wi) for vi in range(nv) for wi in range(nv) if ip[vi][wi]]
    n = len(labels_idx)
    if n != expected:
        raise VerificationFailed(
            f"vertex count {n} disagrees with closed form {expected}")

    # arc i -> j depends only on (v_i, w_j); one mask per first component
    w_of = [wi for _, wi in labels_idx]
    mask_for_v = []
    for vi in range(nv):
        row = ip[vi]
        m = 0
        for j, wj in enumerate(w_of):
            if row[wj]:
                m |= 1 << j
        mask_for_v.append(m)
    out = [mask_for_v[labels_idx[j][0]] & ~(1 << j) for j in range(n)]

    graph = Digraph.from_out_masks(n, out)
    labels = tuple((normals[vi], normals[wi]) for vi, wi in labels_idx)
    return HkqGraph(field, k, graph, labels)


_HKQ_CACHE: dict[tuple[int, int], HkqGraph] = {}
_HKQ_COMPL_CACHE: dict[tuple[int, int], Digraph] = {}


def get_hkq(q: int, k: int, max_vertices: int = HKQ_VERTEX_CAP) -> HkqGraph:
    """Cached construction keyed by (q, k)."""
    expected = hkq_vertex_count(q, k)
    if expected > max_vertices:
        raise SizeLimitExceeded(
            f"H_{k}^{q} has {expected} vertices, over the cap {max_vertices}")
    key = (q, k)
    if key not in _HKQ_CACHE:
        _HKQ_CACHE[key] = construct_hkq(gf.make_field(q), k, max_vertices=expected)
    return _HKQ_CACHE[key]


def get_hkq_complement(q: int, k: int, max_vertices: int = HKQ_VERTEX_CAP) -> Digraph:
    key = (q, k)
    if key not in _HKQ_COMPL_CACHE:
        _HKQ_COMPL_CACHE[key] = get_hkq(q, k, max_vertices).graph.complement()
    return _HKQ_COMPL_CACHE[key]


# -- vertex transitivity -------------------------------------------------------


def transitivity_automorphism(h: HkqGraph, source: int) -> tuple[int, ...]:
    """Automorphism of h sending the source vertex to the base vertex (e1, e1).

    For source (d, e): columns of the change-of-basis matrix X are e followed
    by a deterministic kernel basis of <d, .>; the map sends (u, v) to
    (normalize(X^T u), normalize(X^{-1} v)).  Returned as perm[i] = image id.
    """
    if not 0 <= source < h.graph.n:
        raise InvalidVertex(f"vertex {source} outside 0..{h.graph.n - 1}")
    f = h.field
    k = h.k
    d, e = h.labels[source]
    xi = gf.nullspace(f, [d.coords], k)  # k-1 vectors orthogonal to d
    columns = [e.coords] + [list(row) for row in xi]
    x_rows = tuple(tuple(col[r] for col in columns) for r in range(k))
    xt_rows = tuple(tuple(col) for col in columns)  # transpose of X
    x_inv = gf.invert(f, x_rows)

    perm = []
    for u, v in h.labels:
        iu = gf.normalize(FVector(f, gf.mat_vec(f, xt_rows, u.coords)))
        iv = gf.normalize(FVector(f, gf.mat_vec(f, x_inv, v.coords)))
        perm.append(h.vertex_id(iu, iv))
    return tuple(perm)


def base_vertex_id(h: HkqGraph) -> int:
    """Id of the vertex (e1, e1)."""
    e1 = gf.unit_vector(h.field, h.k, 0)
    return h.vertex_id(e1, e1)


def is_automorphism(g: Digraph, perm: tuple[int, ...]) -> bool:
    """Bijection preserving arcs and non-arcs alike (so also an automorphism
    of the complement)."""
    n = g.n
    if len(perm) != n or len(set(perm)) != n:
        return False
    for u in range(n):
        image_mask = 0
        m = g.out_mask(u)
        while m:
            low = m & -m
            image_mask |= 1 << perm[low.bit_length() - 1]
            m ^= low
        if image_mask != g.out_mask(perm[u]):
            return False
    return True


# -- complement coloring -------------------------------------------------------


def hkq_complement_coloring(h: HkqGraph) -> Coloring:
    """Color each vertex (d, e) by d; proper on the complement of h.

    Two vertices sharing the first component are joined both ways in h, so
    the complement has no arc between them.  Uses exactly one color per
    distinct first component, at most (q^k - 1)/(q - 1) in total.
    """
    firsts: dict[FVector, int] = {}
    assignment = []
    for v, _ in h.labels:
        if v not in firsts:
            firsts[v] = len(firsts)
        assignment.append(firsts[v])
    return Coloring(tuple(assignment), len(firsts))


# -- independent sets in the complement ----------------------------------------


def independent_set_size_bound(q: int, k: int) -> int:
    """Closed-form guarantee (q^2 - 1) q^(k-2) / 4 for odd q, k >= 2."""
    return (q * q - 1) * q ** (k - 2) // 4


def l_colorable_size_bound(q: int, k: int, l: int) -> int:
    """Closed-form guarantee (q + 1)(q^l - 1) q^(k-l-1) / 4 for odd q."""
    return (q + 1) * (q**l - 1) * q ** (k - l - 1) // 4


def _prefix_sets(field: FiniteField, k: int, j: int):
    """The two label families with first support at 0-based position j-1.

    First family: e_j and e_j + g^i e_{j+1} for 0 <= i <= (q-3)/2.
    Second family: vectors starting 0,...,0,1 at position j-1 whose next
    coordinate avoids every value -g^{-i} that would zero an inner product
    against the first family (the guard values are derived, then everything
    is verified downstream).
    """
    q = field.q
    g = field.primitive_element
    lead = j - 1  # 0-based position of the leading one

    a_vecs = [gf.unit_vector(field, k, lead)]
    for i in range((q - 3) // 2 + 1):
        coords = [0] * k
        coords[lead] = 1
        coords[lead + 1] = field.pow(g, i)
        a_vecs.append(FVector(field, coords))

    forbidden = {field.neg(field.inv(field.pow(g, i)))
                 for i in range((q - 3) // 2 + 1)}
    b_vecs = []
    import itertools as _it
    tail = k - j - 1  # free coordinates after position j (0-based lead+1)
    for nxt in field.elements():
        if nxt in forbidden:
            continue
        for rest in _it.product(field.elements(), repeat=tail):
            coords = [0] * k
            coords[lead] = 1
            coords[lead + 1] = nxt
            coords[lead + 2:] = list(rest)
            b_vecs.append(FVector(field, coords))
    return a_vecs, b_vecs


def _verify_independent(h: HkqGraph, ids: list[int], what: str) -> None:
    """Independence in the complement == both arcs present in h for each pair."""
    g = h.graph
    for a in range(len(ids)):
        u = ids[a]
        for b in range(a + 1, len(ids)):
            v = ids[b]
            if not (g.has_arc(u, v) and g.has_arc(v, u)):
                raise VerificationFailed(
                    f"{what}: vertices {u},{v} not independent in the complement")


def hkq_complement_independent_set(h: HkqGraph) -> tuple[int, ...]:
    """Verified independent set in complement(h) of size >= (q^2-1) q^(k-2) / 4.

    Product construction A x B from a primitive element; only defined for
    odd q and k >= 2.  Every claimed property is checked before returning.
    """
    q = h.field.q
    if q % 2 == 0:
        raise ConstructionUnavailable(
            "product construction needs odd q; use exact independence search")
    if h.k < 2:
        raise ConstructionUnavailable("construction needs k >= 2")

    a_vecs, b_vecs = _prefix_sets(h.field, h.k, 1)
    ids = []
    for v in a_vecs:
        for w in b_vecs:
            if gf.inner(v, w) == 0:
                raise VerificationFailed(
                    f"inner product vanished for {v}, {w}")
            ids.append(h.vertex_id(v, w))
    if len(set(ids)) != len(ids):
        raise VerificationFailed("duplicate vertices in product set")
    _verify_independent(h, ids, "independent-set construction")
    bound = independent_set_size_bound(q, h.k)
    if len(ids) < bound:
        raise VerificationFailed(
            f"set size {len(ids)} below guaranteed bound {bound}")
    return tuple(sorted(ids))


def hkq_complement_l_colorable_set(h: HkqGraph, l: int) -> tuple[tuple[int, ...], Coloring]:
    """Verified l-colorable induced subgraph of complement(h).

    Uses l shifted copies of the product construction; class j is an
    independent set, classes are disjoint, and the total size meets
    (q+1)(q^l - 1) q^(k-l-1) / 4.  Returns (sorted vertex ids, coloring
    aligned with that order).  l may be 1 (single product set) but must
    stay below k-1.
    """
    q = h.field.q
    k = h.k
    if q % 2 == 0:
        raise ConstructionUnavailable(
            "product construction needs odd q; use exact search")
    if not 1 <= l < k - 1:
        raise ValueError(f"l must satisfy 1 <= l < k-1, got l={l}, k={k}")

    class_of: dict[int, int] = {}
    for j in range(1, l + 1):
        a_vecs, b_vecs = _prefix_sets(h.field, k, j)
        ids = []
        for v in a_vecs:
            for w in b_vecs:
                if gf.inner(v, w) == 0:
                    raise VerificationFailed(
                        f"inner product vanished for {v}, {w}")
                ids.append(h.vertex_id(v, w))
        _verify_independent(h, ids, f"class {j}")
        for i in ids:
            if i in class_of:
                raise VerificationFailed(f"vertex {i} appears in two classes")
            class_of[i] = j - 1

    bound = l_colorable_size_bound(q, k, l)
    if len(class_of) < bound:
        raise VerificationFailed(
            f"union size {len(class_of)} below guaranteed bound {bound}")

    ordered = tuple(sorted(class_of))
    coloring = Coloring(tuple(class_of[i] for i in ordered), l)
    induced_complement = h.graph.complement().induced(ordered)
    if not coloring.is_proper(induced_complement):
        raise VerificationFailed("class coloring not proper on the complement")
    return ordered, coloring


# -- hardness-premise witnesses --------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    """Checks backing the hardness reduction premises on complement(h)."""

    q: int
    k: int
    min_in_degree: int
    min_out_degree: int
    no_low_degree: bool
    gadget_ids: tuple[int, ...] | None
    gadget_arcs_present: bool
    gadget_no_cycle_hom: bool
    checked_cycle_lengths: tuple[int, ...]

    @property
    def all_passed(self) -> bool:
        return self.no_low_degree and self.gadget_arcs_present and self.gadget_no_cycle_hom


def _gadget_labels(field: FiniteField, k: int):
    e1 = gf.unit_vector(field, k, 0)
    e2 = gf.unit_vector(field, k, 1)

    def combine(a, b, op):
        return FVector(field, tuple(op(x, y) for x, y in zip(a.coords, b.coords)))

    e1_minus_e2 = combine(e1, e2, field.sub)
    e1_plus_e2 = combine(e1, e2, field.add)
    return ((e2, e1_minus_e2), (e1_plus_e2, e2), (e1, e1), (e2, e2))


# gadget arcs by local index: a 3-cycle 0 -> 2 -> 1 -> 0 and a 2-cycle 2 <-> 3
_GADGET_ARCS = ((0, 2), (2, 1), (1, 0), (2, 3), (3, 2))


def np_witness_check(h: HkqGraph) -> WitnessReport:
    """Premise witnesses: complement degrees >= 2 everywhere, the embedded
    4-vertex gadget (3-cycle sharing a vertex with a 2-cycle), and the
    absence of any homomorphism from the gadget to a directed cycle.

    The last check runs over cycle lengths 2..4; the gadget contains closed
    walks of lengths 2 and 3, so longer cycles admit no homomorphism either.
    """
    if h.k < 2:
        raise ValueError("witness checks need k >= 2")
    g = h.graph
    n = g.n
    # complement degrees without materializing the complement
    min_in = min(n - 1 - g.in_degree(v) for v in range(n))
    min_out = min(n - 1 - g.out_degree(v) for v in range(n))
    no_low = min_in >= 2 and min_out >= 2

    def compl_arc(u: int, v: int) -> bool:
        return u != v and not g.has_arc(u, v)

    try:
        ids = tuple(h.vertex_id(v, w) for v, w in _gadget_labels(h.field, h.k))
    except InvalidVertex:
        ids = None
    arcs_ok = ids is not None and len(set(ids)) == 4 and all(
        compl_arc(ids[a], ids[b]) for a, b in _GADGET_ARCS)

    no_cycle_hom = False
    lengths: tuple[int, ...] = ()
    if arcs_ok:
        gadget_arcs = [(a, b) for a in range(4) for b in range(4)
                       if a != b and compl_arc(ids[a], ids[b])]
        gadget = Digraph(4, gadget_arcs)
        lengths = tuple(range(2, gadget.n + 1))
        no_cycle_hom = all(
            hom.hom_exists(gadget, directed_cycle(m)) is None for m in lengths)

    return WitnessReport(
        q=h.field.q,
        k=h.k,
        min_in_degree=min_in,
        min_out_degree=min_out,
        no_low_degree=no_low,
        gadget_ids=ids,
        gadget_arcs_present=arcs_ok,
        gadget_no_cycle_hom=no_cycle_hom,
        checked_cycle_lengths=lengths,
    )


# -- label sidecar format ---------------------------------------------------------


def format_vector(v: FVector) -> str:
    return "(" + ",".join(str(c) for c in v.coords) + ")"


def format_labels(h: HkqGraph) -> str:
    lines = []
    for i, (v, w) in enumerate(h.labels):
        lines.append(f"{i} : {format_vector(v)}|{format_vector(w)}")
    return "\n".join(lines) + "\n"
