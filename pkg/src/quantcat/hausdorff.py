"""Up/down closures, the Hausdorff functor and monad, powerset liftings,
and the no-embedding obstruction.

Subsets of a carrier are handled as bitmasks internally and exposed as
frozensets of state ids; the element order of every lifted object is the
ascending bitmask order, which keeps structural equality deterministic.
"""

from dataclasses import dataclass

from .errors import CapExceeded, ConsistencyError, DescriptorError, IterationGuard
from .quantale import AssumptionReport, LawEntry
from .vcat import VCategory, VFunctor, VRelation, as_vcategory, dual, vfunctors_between

DEFAULT_CARRIER_CAP = 12
DEFAULT_COUNT_CAP = 4096
_SWEEP_LIMIT = 14


def _mask(x, subset):
    m = 0
    for s in subset:
        m |= 1 << x.index(s)
    return m


def _ids(x, mask):
    return frozenset(s for i, s in enumerate(x.states) if mask >> i & 1)


def _up_mask(x, mask):
    q = x.quantale
    out = 0
    for j in range(len(x.states)):
        v = q.join_all(x.matrix[i][j] for i in range(len(x.states)) if mask >> i & 1)
        if q.leq(q.unit, v):
            out |= 1 << j
    return out


def up_closure(x, subset):
    """Points whose distance-join from the subset lies above the unit."""
    return _ids(x, _up_mask(x, _mask(x, subset)))


def down_closure(x, subset):
    """Up-closure taken in the dual category."""
    return up_closure(dual(x), subset)


def _guard_carrier(x, cap):
    if len(x.states) > cap:
        raise CapExceeded("subset enumeration carrier", len(x.states), cap)


def enumerate_increasing(x, cap=DEFAULT_CARRIER_CAP, count_cap=DEFAULT_COUNT_CAP):
    """All fixed points of the up-closure, in ascending bitmask order.

    Small carriers are swept exhaustively.  Larger ones (up to ``cap``)
    are enumerated through the up-sets of the underlying order, which
    contain every fixed point; the result count is bounded by
    ``count_cap``.
    """
    _guard_carrier(x, cap)
    n = len(x.states)
    if n <= _SWEEP_LIMIT:
        return [_ids(x, m) for m in range(1 << n) if _up_mask(x, m) == m]
    masks = sorted(_order_upset_masks(x, count_cap))
    return [_ids(x, m) for m in masks if _up_mask(x, m) == m]


def _order_upset_masks(x, count_cap):
    """Bitmasks of all up-sets of the underlying order, capped in number."""
    q = x.quantale
    n = len(x.states)
    up = [0] * n
    down = [0] * n
    for i in range(n):
        for j in range(n):
            if q.leq(q.unit, x.matrix[i][j]):
                up[i] |= 1 << j
                down[j] |= 1 << i
    out = []
    full = (1 << n) - 1

    def rec(in_mask, out_mask):
        undecided = full & ~in_mask & ~out_mask
        if not undecided:
            out.append(in_mask)
            if len(out) > count_cap:
                raise CapExceeded("increasing-subset count", len(out), count_cap)
            return
        i = (undecided & -undecided).bit_length() - 1
        if not (up[i] & out_mask):
            rec(in_mask | up[i], out_mask)
        if not (down[i] & in_mask):
            rec(in_mask, out_mask | down[i])

    rec(0, 0)
    return out


def hausdorff_distance(x, a_set, b_set):
    """The lifted structure value between two arbitrary subsets."""
    q = x.quantale
    ai = [x.index(s) for s in a_set]
    return q.meet_all(
        q.join_all(x.matrix[i][x.index(t)] for i in ai) for t in b_set
    )


def symmetric_hausdorff(x, a_set, b_set):
    """Meet of the two one-sided values; the symmetric distance over Lawvere."""
    return x.quantale.meet(
        hausdorff_distance(x, a_set, b_set), hausdorff_distance(x, b_set, a_set)
    )


@dataclass(frozen=True)
class HObject:
    """The lifted category on increasing subsets, together with its base."""

    base: VCategory
    elements: tuple
    category: VCategory

    def __len__(self):
        return len(self.elements)

    def index(self, subset):
        return self.category.index(frozenset(subset))


def hausdorff_object(x, cap=DEFAULT_CARRIER_CAP, count_cap=DEFAULT_COUNT_CAP):
    """Increasing subsets of x with the lifted structure matrix."""
    q = x.quantale
    elements = enumerate_increasing(x, cap=cap, count_cap=count_cap)
    index_sets = [[x.index(s) for s in a] for a in elements]
    n = len(x.states)
    mat = []
    for ai in index_sets:
        # join row first: one pass per source subset keeps the matrix cheap
        row_join = [q.join_all(x.matrix[i][j] for i in ai) for j in range(n)]
        mat.append([q.meet_all(row_join[j] for j in bi) for bi in index_sets])
    return HObject(x, tuple(elements), VCategory(q, elements, mat))


def hausdorff_map(f, hx=None, hy=None, cap=DEFAULT_CARRIER_CAP):
    """The lifted map: an increasing subset goes to the up-closed image."""
    hx = hx or hausdorff_object(f.source, cap=cap)
    hy = hy or hausdorff_object(f.target, cap=cap)
    mapping = [up_closure(f.target, {f(s) for s in a}) for a in hx.elements]
    return VFunctor(hx.category, hy.category, mapping)


def monad_unit(x, hx=None, cap=DEFAULT_CARRIER_CAP):
    """x -> Hx sending a point to its up-closure."""
    hx = hx or hausdorff_object(x, cap=cap)
    return VFunctor(x, hx.category, [up_closure(x, {s}) for s in x.states])


def monad_mult(x, hx=None, hhx=None, cap=DEFAULT_CARRIER_CAP):
    """HHx -> Hx by union; the union of an increasing family is increasing."""
    hx = hx or hausdorff_object(x, cap=cap)
    hhx = hhx or hausdorff_object(hx.category, cap=cap)
    mapping = []
    for fam in hhx.elements:
        u = frozenset().union(*fam) if fam else frozenset()
        if u not in hx.category._index:
            raise ConsistencyError("union of an increasing family was not increasing")
        mapping.append(u)
    return VFunctor(hhx.category, hx.category, mapping)


def powerset_lift(x, cap=DEFAULT_CARRIER_CAP):
    """The lifted structure on the full powerset, in ascending mask order."""
    _guard_carrier(x, cap)
    subsets = [_ids(x, m) for m in range(1 << len(x.states))]
    mat = [[hausdorff_distance(x, a, b) for b in subsets] for a in subsets]
    return VCategory(x.quantale, subsets, mat)


def generic_powerset_lift(x, cap=DEFAULT_CARRIER_CAP, map_cap=20000):
    """Powerset structure computed as the initial lift of the meet-composite
    cone over all V-functors into the quantale: the oracle route.

    Pa(A, B) = meet over psi of hom(meet psi(A), meet psi(B)).
    """
    q = x.quantale
    _guard_carrier(x, cap)
    psis = vfunctors_between(x, as_vcategory(q), cap=map_cap)
    subsets = [_ids(x, m) for m in range(1 << len(x.states))]
    meets = [
        [q.meet_all(psi(s) for s in a) for a in subsets]
        for psi in psis
    ]
    mat = [
        [
            q.meet_all(q.hom(meets[p][ia], meets[p][ib]) for p in range(len(psis)))
            for ib in range(len(subsets))
        ]
        for ia in range(len(subsets))
    ]
    return VCategory(q, subsets, mat)


# -- lax extension of the powerset functor ------------------------------


def lax_powerset_extension(r):
    """Extend a V-relation to all subsets by the meet-of-joins formula."""
    q = r.quantale
    src = [frozenset(c) for c in _subsets(r.source_states)]
    tgt = [frozenset(c) for c in _subsets(r.target_states)]
    ridx = {
        (s, t): r.matrix[i][j]
        for i, s in enumerate(r.source_states)
        for j, t in enumerate(r.target_states)
    }
    mat = [
        [q.meet_all(q.join_all(ridx[s, t] for s in a) for t in b) for b in tgt]
        for a in src
    ]
    return VRelation(q, src, tgt, mat)


def _subsets(states):
    states = tuple(states)
    for m in range(1 << len(states)):
        yield tuple(s for i, s in enumerate(states) if m >> i & 1)


def lax_extension_monotone(r, r2):
    """r <= r2 pointwise implies the extensions compare pointwise."""
    q = r.quantale
    er, er2 = lax_powerset_extension(r), lax_powerset_extension(r2)
    w = next(
        ((a, b) for i, a in enumerate(er.source_states)
         for j, b in enumerate(er.target_states)
         if not q.leq(er.matrix[i][j], er2.matrix[i][j])),
        None,
    )
    return LawEntry("lax-monotone", w is None, w)


def lax_extension_composition(r, s):
    """Extension of the composite bounds the composite of extensions."""
    q = r.quantale
    if r.target_states != s.source_states:
        raise ConsistencyError("relations do not compose")
    comp = VRelation(
        q, r.source_states, s.target_states,
        [
            [
                q.join_all(
                    q.tensor(r.matrix[i][l], s.matrix[l][j])
                    for l in range(len(r.target_states))
                )
                for j in range(len(s.target_states))
            ]
            for i in range(len(r.source_states))
        ],
    )
    er, es, ec = (lax_powerset_extension(t) for t in (r, s, comp))
    mids = es.source_states
    w = None
    for i, a in enumerate(er.source_states):
        for j, c in enumerate(es.target_states):
            via = q.join_all(
                q.tensor(er.matrix[i][l], es.matrix[l][j]) for l in range(len(mids))
            )
            if not q.leq(via, ec.matrix[i][j]):
                w = (a, c)
                break
        if w:
            break
    return LawEntry("lax-composition", w is None, w)


def lax_extension_graph(q, mapping, source_states, target_states):
    """The extension dominates the direct-image graph and its converse."""
    k, bot = q.unit, q.bottom
    graph = VRelation(
        q, source_states, target_states,
        [[k if mapping[s] == t else bot for t in target_states] for s in source_states],
    )
    op = VRelation(
        q, target_states, source_states,
        [[k if mapping[s] == t else bot for s in source_states] for t in target_states],
    )
    eg, eop = lax_powerset_extension(graph), lax_powerset_extension(op)
    w = None
    for a in eg.source_states:
        image = frozenset(mapping[s] for s in a)
        if not q.leq(k, eg.matrix[eg.source_states.index(a)][eg.target_states.index(image)]):
            w = ("graph", tuple(sorted(map(str, a))))
            break
        if not q.leq(k, eop.matrix[eop.source_states.index(image)][eop.target_states.index(a)]):
            w = ("converse", tuple(sorted(map(str, a))))
            break
    return LawEntry("lax-graph", w is None, w)


def check_lax_extension_laws(r, r2, s, q, mapping, source_states, target_states):
    """Bundle the three lax-extension axioms into one report."""
    return AssumptionReport((
        lax_extension_monotone(r, r2),
        lax_extension_composition(r, s),
        lax_extension_graph(q, mapping, source_states, target_states),
    ))


# -- strict order and the no-embedding argument --------------------------


def strict_less(x, s, t):
    """s strictly below t: unit below a(s, t) while a(t, s) is bottom."""
    q = x.quantale
    return q.leq(q.unit, x.a(s, t)) and x.a(t, s) == q.bottom


def strict_up(x, s):
    """The strictly-above set of a point; always increasing."""
    return frozenset(t for t in x.states if strict_less(x, s, t))


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Why a candidate map from the lifted object back to the base fails
    to be an embedding.

    ``contradiction-witness`` carries a point whose up-set equals its
    strictly-above set, which cannot happen over a non-trivial quantale;
    seeing it means the input data was inconsistent.
    """

    kind: str
    subsets: tuple = None
    point: object = None
    values: tuple = None


def cantor_check(x, phi, hx=None, cap=DEFAULT_CARRIER_CAP):
    """Produce a witness that phi: Hx -> x is not an embedding.

    ``phi`` maps increasing subsets (frozensets) to states, given as a dict
    or as a sequence aligned with the lifted element order.  Embedding is
    taken as injective plus initial (exact matrix equality).
    """
    if x.quantale.trivial:
        raise DescriptorError("no-embedding witnesses need a non-trivial quantale")
    hx = hx or hausdorff_object(x, cap=cap)
    if isinstance(phi, dict):
        images = [phi[a] for a in hx.elements]
    else:
        images = list(phi)
    if len(images) != len(hx.elements):
        raise ConsistencyError("phi does not cover the lifted carrier")
    for v in images:
        if v not in x._index:
            raise ConsistencyError(f"phi hits unknown state {v!r}")

    seen = {}
    for a, v in zip(hx.elements, images):
        if v in seen:
            return EmbeddingVerdict("not-injective", subsets=(seen[v], a), point=v)
        seen[v] = a

    n = len(hx.elements)
    for i in range(n):
        for j in range(n):
            lifted = hx.category.matrix[i][j]
            base = x.a(images[i], images[j])
            if lifted != base:
                return EmbeddingVerdict(
                    "not-initial",
                    subsets=(hx.elements[i], hx.elements[j]),
                    values=(lifted, base),
                )

    # Injective and initial: compute the greatest fixed point of
    # I |-> up-closure of phi(I) by descending iteration from the full
    # carrier, then report the impossible witness point.
    image_of = dict(zip(hx.elements, images))
    current = frozenset(x.states)
    for _ in range(n + 2):
        nxt = up_closure(x, {image_of[current]})
        if nxt == current:
            pt = image_of[current]
            return EmbeddingVerdict(
                "contradiction-witness", subsets=(current,), point=pt,
                values=(up_closure(x, {pt}), strict_up(x, pt)),
            )
        current = nxt
    raise IterationGuard("greatest-fixed-point iteration did not stabilize")
