"""Hausdorff polynomial functors, their coalgebras, final chains,
behavioural distances, equalizers, and initial lifts of coalgebra cones.

Functor expressions are ASTs over Id, Const, Prod, Sum and HComp (compose
with the Hausdorff lifting).  Elements of F(X) are plain structural terms:
carrier states for Id, constant points for Const, tuples for Prod, tagged
pairs (branch, term) for Sum, and frozensets of inner terms for HComp.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import CapExceeded, ConsistencyError, IterationGuard
from .quantale import AssumptionReport, LawEntry
from .vcat import (
    VCategory,
    VFunctor,
    compose,
    initial_structure,
    is_vfunctor,
    restrict,
    terminal,
)
from . import hausdorff as hd

DEFAULT_SIZE_CAP = 4096


# -- functor expressions -------------------------------------------------


@dataclass(frozen=True)
class Id:
    def __repr__(self):
        return "Id"


@dataclass(frozen=True)
class Const:
    category: VCategory

    def __repr__(self):
        return f"Const({len(self.category.states)})"


@dataclass(frozen=True)
class Prod:
    parts: tuple

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))

    def __repr__(self):
        return f"Prod{self.parts}"


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))

    def __repr__(self):
        return f"Sum{self.parts}"


@dataclass(frozen=True)
class HComp:
    inner: object

    def __repr__(self):
        return f"H({self.inner!r})"


def functor_quantale(expr):
    """The quantale fixed by the constant leaves, or None when free."""
    if isinstance(expr, Const):
        return expr.category.quantale
    if isinstance(expr, (Prod, Sum)):
        for p in expr.parts:
            q = functor_quantale(p)
            if q is not None:
                return q
        return None
    if isinstance(expr, HComp):
        return functor_quantale(expr.inner)
    return None


# -- evaluation on objects and morphisms ---------------------------------

_OBJ_CACHE = {}


def eval_obj(expr, x, cap=DEFAULT_SIZE_CAP):
    """The value of a polynomial functor on a V-category."""
    key = (expr, x, cap)
    hit = _OBJ_CACHE.get(key)
    if hit is not None:
        return hit
    out = _eval_obj(expr, x, cap)
    _OBJ_CACHE[key] = out
    return out


def _eval_obj(expr, x, cap):
    q = x.quantale
    if isinstance(expr, Id):
        return x
    if isinstance(expr, Const):
        if expr.category.quantale != q:
            raise ConsistencyError("constant category over a different quantale")
        return expr.category
    if isinstance(expr, Prod):
        parts = [eval_obj(p, x, cap) for p in expr.parts]
        size = 1
        for p in parts:
            size *= len(p.states)
        if size > cap:
            raise CapExceeded("product carrier", size, cap)
        states = list(iproduct(*(p.states for p in parts)))
        mat = [
            [
                q.meet_all(p.a(s[i], t[i]) for i, p in enumerate(parts))
                for t in states
            ]
            for s in states
        ]
        return VCategory(q, states, mat)
    if isinstance(expr, Sum):
        parts = [eval_obj(p, x, cap) for p in expr.parts]
        size = sum(len(p.states) for p in parts)
        if size > cap:
            raise CapExceeded("sum carrier", size, cap)
        states = [(b, s) for b, p in enumerate(parts) for s in p.states]
        bot = q.bottom
        mat = [
            [parts[b].a(s, t) if b == c else bot for (c, t) in states]
            for (b, s) in states
        ]
        return VCategory(q, states, mat)
    if isinstance(expr, HComp):
        inner = eval_obj(expr.inner, x, cap)
        if len(inner.states) > cap:
            raise CapExceeded("lifted carrier", len(inner.states), cap)
        return hd.hausdorff_object(inner, cap=cap, count_cap=cap).category
    raise ConsistencyError(f"unknown functor node {expr!r}")


def eval_mor(expr, f, cap=DEFAULT_SIZE_CAP):
    """The value of a polynomial functor on a V-functor."""
    src = eval_obj(expr, f.source, cap)
    tgt = eval_obj(expr, f.target, cap)
    if isinstance(expr, Id):
        return f
    if isinstance(expr, Const):
        return VFunctor(src, tgt, src.states)
    if isinstance(expr, Prod):
        part_maps = [eval_mor(p, f, cap) for p in expr.parts]
        mapping = [tuple(m(s[i]) for i, m in enumerate(part_maps)) for s in src.states]
        return VFunctor(src, tgt, mapping)
    if isinstance(expr, Sum):
        part_maps = [eval_mor(p, f, cap) for p in expr.parts]
        mapping = [(b, part_maps[b](s)) for (b, s) in src.states]
        return VFunctor(src, tgt, mapping)
    if isinstance(expr, HComp):
        inner = eval_mor(expr.inner, f, cap)
        mapping = [
            hd.up_closure(inner.target, {inner(s) for s in a}) for a in src.states
        ]
        return VFunctor(src, tgt, mapping)
    raise ConsistencyError(f"unknown functor node {expr!r}")


# -- coalgebras -----------------------------------------------------------


class Coalgebra:
    """A carrier V-category with a structure map into the functor value."""

    __slots__ = ("functor", "carrier", "structure", "_hash")

    def __init__(self, functor, carrier, structure):
        self.functor = functor
        self.carrier = carrier
        self.structure = dict(structure)
        if set(self.structure) != set(carrier.states):
            raise ConsistencyError("structure map does not cover the carrier")
        self._hash = hash(
            (functor, carrier, tuple(self.structure[s] for s in carrier.states))
        )

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.functor == other.functor
            and self.carrier == other.carrier
            and self.structure == other.structure
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Coalgebra({self.functor!r}, {len(self.carrier.states)} states)"

    def structure_functor(self, cap=DEFAULT_SIZE_CAP):
        """The structure map as a V-functor into eval_obj(F, carrier)."""
        fx = eval_obj(self.functor, self.carrier, cap)
        return VFunctor(
            self.carrier, fx, [self.structure[s] for s in self.carrier.states]
        )


def check_coalgebra(c, cap=DEFAULT_SIZE_CAP):
    """Report whether the structure map lands in F(X) and preserves structure."""
    try:
        sf = c.structure_functor(cap)
    except ConsistencyError as e:
        return AssumptionReport((LawEntry("structure-in-functor", False, (str(e),)),))
    entries = [LawEntry("structure-in-functor", True)]
    q = c.carrier.quantale
    w = next(
        ((x, y) for x in c.carrier.states for y in c.carrier.states
         if not q.leq(c.carrier.a(x, y), sf.target.a(sf(x), sf(y)))),
        None,
    )
    entries.append(LawEntry("structure-morphism", w is None, w))
    return AssumptionReport(tuple(entries))


def is_coalg_hom(h, cx, cy, cap=DEFAULT_SIZE_CAP):
    """h is a V-functor commuting with both structure maps."""
    if cx.functor != cy.functor:
        raise ConsistencyError("coalgebras over different functor expressions")
    if h.source != cx.carrier or h.target != cy.carrier:
        raise ConsistencyError("homomorphism endpoints do not match")
    if not is_vfunctor(h):
        return False
    fh = eval_mor(cx.functor, h, cap)
    return all(fh(cx.structure[s]) == cy.structure[h(s)] for s in cx.carrier.states)


# -- the final chain ------------------------------------------------------


@dataclass(frozen=True)
class ChainLevel:
    """Level n of the final chain: the object F^n(1) and the connecting
    map from level n+1 down to this one."""

    index: int
    obj: VCategory
    connecting: VFunctor


def final_chain(expr, depth, quantale=None, cap=DEFAULT_SIZE_CAP):
    """Levels 0..depth of the chain 1 <- F(1) <- F(F(1)) <- ..."""
    q = functor_quantale(expr) or quantale
    if q is None:
        raise ConsistencyError("functor fixes no quantale; pass one explicitly")
    one = terminal(q)
    objs = [one]
    for _ in range(depth + 1):
        objs.append(eval_obj(expr, objs[-1], cap))
    bang = VFunctor(objs[1], one, ["*"] * len(objs[1].states))
    maps = [bang]
    for n in range(1, depth + 1):
        maps.append(eval_mor(expr, maps[-1], cap))
    return [ChainLevel(n, objs[n], maps[n]) for n in range(depth + 1)]


def behavior_map(c, depth, cap=DEFAULT_SIZE_CAP):
    """Depth-indexed behaviour approximants beh_0 .. beh_depth.

    beh_0 is the unique map to the point; beh_{n+1} = F(beh_n) after the
    structure map.  Each approximant is a V-functor into its chain level.
    """
    q = c.carrier.quantale
    one = terminal(q)
    sf = c.structure_functor(cap)
    behs = [VFunctor(c.carrier, one, ["*"] * len(c.carrier.states))]
    for _ in range(depth):
        behs.append(compose(eval_mor(c.functor, behs[-1], cap), sf))
    return behs


def behavioral_distance(c, x, y, depth, symmetric=False, cap=DEFAULT_SIZE_CAP):
    """Chain-level distances between the behaviours of two states,
    one value per depth 0..depth; antitone along the chain."""
    q = c.carrier.quantale
    out = []
    for beh in behavior_map(c, depth, cap):
        d = beh.target.a(beh(x), beh(y))
        if symmetric:
            d = q.meet(d, beh.target.a(beh(y), beh(x)))
        out.append(d)
    return out


# -- equalizers ------------------------------------------------------------


def term_in_restriction(expr, term, allowed, ambient, cap=DEFAULT_SIZE_CAP):
    """Does a term of F(ambient) lie in F of the full subcategory on
    ``allowed``?  Set payloads must sit inside and stay increasing there."""
    if isinstance(expr, Id):
        return term in allowed
    if isinstance(expr, Const):
        return True
    if isinstance(expr, Prod):
        return all(
            term_in_restriction(p, term[i], allowed, ambient, cap)
            for i, p in enumerate(expr.parts)
        )
    if isinstance(expr, Sum):
        b, t = term
        return term_in_restriction(expr.parts[b], t, allowed, ambient, cap)
    if isinstance(expr, HComp):
        if not all(
            term_in_restriction(expr.inner, t, allowed, ambient, cap) for t in term
        ):
            return False
        sub = eval_obj(expr.inner, restrict(ambient, allowed), cap)
        return hd.up_closure(sub, term) == term
    raise ConsistencyError(f"unknown functor node {expr!r}")


def equalizer(cx, f, g, cap=DEFAULT_SIZE_CAP):
    """The largest sub-coalgebra on which two homomorphisms agree.

    Starts from the plain agreement set and strips states whose structure
    mentions a removed state, until a fixpoint.  Returns the sub-coalgebra
    and its inclusion.
    """
    x = cx.carrier
    current = [s for s in x.states if f(s) == g(s)]
    while True:
        kept = set(current)
        nxt = [
            s for s in current
            if term_in_restriction(cx.functor, cx.structure[s], kept, x, cap)
        ]
        if nxt == current:
            break
        current = nxt
    sub = restrict(x, current)
    ec = Coalgebra(cx.functor, sub, {s: cx.structure[s] for s in current})
    incl = VFunctor(sub, x, current)
    return ec, incl


# -- initial lifts of coalgebra cones ---------------------------------------


def _setlevel_distance(expr, cat, s, t):
    """F-structure distance between two set-level terms, with the full
    powerset reading of HComp so the carrier never depends on the
    structure being refined."""
    q = cat.quantale
    if isinstance(expr, Id):
        return cat.a(s, t)
    if isinstance(expr, Const):
        return expr.category.a(s, t)
    if isinstance(expr, Prod):
        return q.meet_all(
            _setlevel_distance(p, cat, s[i], t[i]) for i, p in enumerate(expr.parts)
        )
    if isinstance(expr, Sum):
        if s[0] != t[0]:
            return q.bottom
        return _setlevel_distance(expr.parts[s[0]], cat, s[1], t[1])
    if isinstance(expr, HComp):
        return q.meet_all(
            q.join_all(_setlevel_distance(expr.inner, cat, a, b) for a in s)
            for b in t
        )
    raise ConsistencyError(f"unknown functor node {expr!r}")


def map_term(expr, fn, term):
    """Apply a state map to the Id positions of a set-level term; set
    payloads take plain direct images."""
    if isinstance(expr, Id):
        return fn(term)
    if isinstance(expr, Const):
        return term
    if isinstance(expr, Prod):
        return tuple(map_term(p, fn, term[i]) for i, p in enumerate(expr.parts))
    if isinstance(expr, Sum):
        return (term[0], map_term(expr.parts[term[0]], fn, term[1]))
    if isinstance(expr, HComp):
        return frozenset(map_term(expr.inner, fn, t) for t in term)
    raise ConsistencyError(f"unknown functor node {expr!r}")


def normalize_term(expr, cat, term, cap=DEFAULT_SIZE_CAP):
    """Canonical form of a set-level term as an element of eval_obj:
    set payloads are up-closed in the inner object."""
    if isinstance(expr, (Id, Const)):
        return term
    if isinstance(expr, Prod):
        return tuple(
            normalize_term(p, cat, term[i], cap) for i, p in enumerate(expr.parts)
        )
    if isinstance(expr, Sum):
        return (term[0], normalize_term(expr.parts[term[0]], cat, term[1], cap))
    if isinstance(expr, HComp):
        inner = eval_obj(expr.inner, cat, cap)
        members = {normalize_term(expr.inner, cat, t, cap) for t in term}
        return hd.up_closure(inner, members)
    raise ConsistencyError(f"unknown functor node {expr!r}")


def initial_lift_coalgebra(expr, quantale, states, structure, cone=(),
                           cap=DEFAULT_SIZE_CAP, guard=None):
    """Greatest carrier structure making a set-level coalgebra a real one
    under a cone of coalgebra morphisms.

    ``structure`` maps each state to a set-level term of F(states); each
    cone entry is (mapping, target Coalgebra) with ``mapping`` listing
    target states in carrier order.  The result structure starts at the
    pointwise meet of the cone legs and descends by cutting with the
    functor image until it stabilizes.
    """
    states = tuple(states)
    for mapping, leg in cone:
        mapping = dict(zip(states, mapping))
        for s in states:
            expect = map_term(expr, lambda t: mapping[t], structure[s])
            actual = leg.structure[mapping[s]]
            if normalize_term(expr, leg.carrier, expect, cap) != actual:
                raise ConsistencyError(
                    f"cone leg is not a set-level coalgebra morphism at {s!r}"
                )
    if guard is None:
        guard = len(states) * len(states) * 64 + 8
    carrier = None
    for step, current in enumerate(lift_descent(expr, quantale, states, structure, cone)):
        if step > guard:
            raise IterationGuard("initial-lift descent did not stabilize within its bound")
        carrier = current
    terms = {s: normalize_term(expr, carrier, structure[s], cap) for s in states}
    return Coalgebra(expr, carrier, terms)


def lift_descent(expr, quantale, states, structure, cone=()):
    """The descending structure iterates of the initial lift, ending with
    the fixpoint; every iterate is itself a valid structure."""
    states = tuple(states)
    current = initial_structure(
        quantale, states, [(m, leg.carrier) for m, leg in cone]
    )
    yield current
    while True:
        nxt = VCategory(
            quantale, states,
            [
                [
                    quantale.meet(
                        current.a(s, t),
                        _setlevel_distance(expr, current, structure[s], structure[t]),
                    )
                    for t in states
                ]
                for s in states
            ],
        )
        if nxt == current:
            return
        yield nxt
        current = nxt
