"""Finite V-categories, V-functors, V-relations and their constructions.

A V-category is a finite carrier with a quantale-valued structure matrix
subject to reflexivity (unit below the diagonal) and the tensor triangle
inequality.  Everything here is immutable and safe to share.
"""

from itertools import product as iproduct

from .errors import CapExceeded, ConsistencyError, IterationGuard
from .quantale import AssumptionReport, LawEntry


class VCategory:
    """Carrier states plus a structure matrix into a fixed quantale.

    ``states`` may be any hashable ids; ``matrix[i][j]`` is the structure
    value from ``states[i]`` to ``states[j]``.  Instances compare and hash
    structurally, which makes memoization by object identity sound.
    """

    __slots__ = ("quantale", "states", "matrix", "_index", "_hash")

    def __init__(self, quantale, states, matrix):
        self.quantale = quantale
        self.states = tuple(states)
        self.matrix = tuple(tuple(row) for row in matrix)
        if len(self.matrix) != len(self.states) or any(
            len(row) != len(self.states) for row in self.matrix
        ):
            raise ConsistencyError("matrix shape does not match carrier")
        self._index = {s: i for i, s in enumerate(self.states)}
        if len(self._index) != len(self.states):
            raise ConsistencyError("duplicate state ids")
        self._hash = hash((self.quantale, self.states, self.matrix))

    def __eq__(self, other):
        return (
            isinstance(other, VCategory)
            and self.quantale == other.quantale
            and self.states == other.states
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VCategory({len(self.states)} states)"

    def __len__(self):
        return len(self.states)

    def index(self, x):
        return self._index[x]

    def a(self, x, y):
        return self.matrix[self._index[x]][self._index[y]]

    def a_i(self, i, j):
        return self.matrix[i][j]


class VFunctor:
    """A carrier map between V-categories over one quantale.

    The structure-preservation law is not enforced at construction; use
    :func:`check_vfunctor`.
    """

    __slots__ = ("source", "target", "mapping", "_hash")

    def __init__(self, source, target, mapping):
        if source.quantale != target.quantale:
            raise ConsistencyError("source and target over different quantales")
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        if len(self.mapping) != len(source.states):
            raise ConsistencyError("mapping length does not match source carrier")
        for y in self.mapping:
            if y not in target._index:
                raise ConsistencyError(f"mapping hits unknown target state {y!r}")
        self._hash = hash((self.source, self.target, self.mapping))

    @classmethod
    def from_dict(cls, source, target, d):
        return cls(source, target, [d[s] for s in source.states])

    def __call__(self, x):
        return self.mapping[self.source.index(x)]

    def __eq__(self, other):
        return (
            isinstance(other, VFunctor)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VFunctor({len(self.source.states)} -> {len(self.target.states)})"


class VRelation:
    """A quantale-valued matrix between two carriers; no laws imposed."""

    __slots__ = ("quantale", "source_states", "target_states", "matrix")

    def __init__(self, quantale, source_states, target_states, matrix):
        self.quantale = quantale
        self.source_states = tuple(source_states)
        self.target_states = tuple(target_states)
        self.matrix = tuple(tuple(row) for row in matrix)

    def r(self, x, y):
        return self.matrix[self.source_states.index(x)][self.target_states.index(y)]


# -- constructors ------------------------------------------------------


def discrete(quantale, states):
    """Unit on the diagonal, bottom elsewhere."""
    k, bot = quantale.unit, quantale.bottom
    n = len(states)
    return VCategory(quantale, states, [[k if i == j else bot for j in range(n)] for i in range(n)])


def indiscrete(quantale, states):
    """Top everywhere."""
    t = quantale.top
    n = len(states)
    return VCategory(quantale, states, [[t] * n for _ in range(n)])


def terminal(quantale):
    """The one-point V-category with top structure."""
    return indiscrete(quantale, ["*"])


def from_order(quantale, states, pairs):
    """Order embedding: unit on related pairs (and the diagonal), bottom off."""
    k, bot = quantale.unit, quantale.bottom
    rel = set(pairs) | {(s, s) for s in states}
    return VCategory(
        quantale, states,
        [[k if (x, y) in rel else bot for y in states] for x in states],
    )


def metric_line(points):
    """Symmetric Lawvere category on rational points with |x - y| distances."""
    from .quantale import Quantale
    from fractions import Fraction

    q = Quantale.lawvere()
    pts = [Fraction(p) for p in points]
    ids = [str(p) for p in pts]
    return VCategory(q, ids, [[abs(x - y) for y in pts] for x in pts])


def as_vcategory(quantale):
    """The quantale itself as a V-category with internal-hom structure."""
    els = quantale.elements
    return VCategory(quantale, els, [[quantale.hom(u, v) for v in els] for u in els])


def restrict(x, keep):
    """Full subcategory on the given states, preserving carrier order."""
    keep = set(keep)
    idx = [i for i, s in enumerate(x.states) if s in keep]
    return VCategory(
        x.quantale,
        [x.states[i] for i in idx],
        [[x.matrix[i][j] for j in idx] for i in idx],
    )


def identity_functor(x):
    return VFunctor(x, x, x.states)


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ConsistencyError("composition mismatch")
    return VFunctor(f.source, g.target, [g(f(s)) for s in f.source.states])


# -- law checks --------------------------------------------------------


def check_vcategory(x):
    """Report on the two enrichment laws; witnesses are state tuples."""
    q = x.quantale
    n = len(x.states)
    w = next(((x.states[i],) for i in range(n) if not q.leq(q.unit, x.matrix[i][i])), None)
    refl = LawEntry("reflexive", w is None, w)
    w = None
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if not q.leq(q.tensor(x.matrix[i][j], x.matrix[j][l]), x.matrix[i][l]):
                    w = (x.states[i], x.states[j], x.states[l])
                    break
            if w:
                break
        if w:
            break
    trans = LawEntry("transitive", w is None, w)
    return AssumptionReport((refl, trans))


def is_vcategory(x):
    return check_vcategory(x).ok


def check_vfunctor(f):
    """Report whether a(x, y) <= b(f x, f y) holds, with a witness pair."""
    a, b, q = f.source, f.target, f.source.quantale
    w = next(
        ((x, y) for x in a.states for y in a.states
         if not q.leq(a.a(x, y), b.a(f(x), f(y)))),
        None,
    )
    return AssumptionReport((LawEntry("structure-preserving", w is None, w),))


def is_vfunctor(f):
    return check_vfunctor(f).ok


# -- dualities and orders ----------------------------------------------


def dual(x):
    n = len(x.states)
    return VCategory(x.quantale, x.states,
                     [[x.matrix[j][i] for j in range(n)] for i in range(n)])


def symmetrize(x):
    q = x.quantale
    n = len(x.states)
    return VCategory(
        q, x.states,
        [[q.meet(x.matrix[i][j], x.matrix[j][i]) for j in range(n)] for i in range(n)],
    )


def underlying_order(x):
    """Pairs (s, t) with unit below a(s, t); a preorder for valid inputs."""
    q = x.quantale
    return {
        (s, t)
        for i, s in enumerate(x.states)
        for j, t in enumerate(x.states)
        if q.leq(q.unit, x.matrix[i][j])
    }


def is_separated(x):
    order = underlying_order(x)
    return not any((t, s) in order for (s, t) in order if s != t)


def separated_reflection(x):
    """Quotient by mutual order-equivalence; returns (quotient, projection).

    Representatives are least-index states; the quotient structure is read
    off representatives and verified to be well defined.
    """
    order = underlying_order(x)
    rep = {}
    for i, s in enumerate(x.states):
        for t in x.states[: i + 1]:
            if (s, t) in order and (t, s) in order:
                rep[s] = rep.get(t, t)
                break
        rep.setdefault(s, s)
    classes = []
    for s in x.states:
        if rep[s] == s:
            classes.append(s)
    members = {c: [s for s in x.states if rep[s] == c] for c in classes}
    for c in classes:
        for d in classes:
            v = x.a(c, d)
            for s in members[c]:
                for t in members[d]:
                    if x.a(s, t) != v:
                        raise ConsistencyError(
                            f"quotient structure not well defined at ({s!r}, {t!r})"
                        )
    quotient = VCategory(
        x.quantale, classes,
        [[x.a(c, d) for d in classes] for c in classes],
    )
    proj = VFunctor(x, quotient, [rep[s] for s in x.states])
    return quotient, proj


# -- monoidal structure -------------------------------------------------


def tensor(x, y):
    """Tensor product: pairs with tensored structure."""
    if x.quantale != y.quantale:
        raise ConsistencyError("tensor over different quantales")
    q = x.quantale
    states = [(s, t) for s in x.states for t in y.states]
    mat = [
        [q.tensor(x.a(s, t), y.a(u, v)) for (t, v) in states]
        for (s, u) in states
    ]
    return VCategory(q, states, mat)


def internal_hom(x, y, cap=20000):
    """All V-functors x -> y with structure [f, g] = meet of pointwise distances."""
    q = x.quantale
    fs = vfunctors_between(x, y, cap=cap)
    states = [f.mapping for f in fs]
    mat = [
        [q.meet_all(y.a(fm[i], gm[i]) for i in range(len(x.states))) for gm in states]
        for fm in states
    ]
    return VCategory(q, states, mat)


# -- initial lifts and fibres -------------------------------------------


def initial_structure(quantale, states, legs):
    """Pointwise-meet structure along a cone of (mapping, target) legs.

    ``mapping`` assigns a target state to each carrier state, in carrier
    order.  The empty cone yields the indiscrete top structure.
    """
    states = tuple(states)
    n = len(states)
    mat = [[quantale.top] * n for _ in range(n)]
    for mapping, target in legs:
        if target.quantale != quantale:
            raise ConsistencyError("cone leg over a different quantale")
        mapping = tuple(mapping)
        for i in range(n):
            for j in range(n):
                mat[i][j] = quantale.meet(mat[i][j], target.a(mapping[i], mapping[j]))
    return VCategory(quantale, states, mat)


def is_initial_cone(legs, source=None):
    """True iff the common source structure equals the pointwise meet formula."""
    if not legs:
        if source is None:
            raise ConsistencyError("empty cone needs an explicit source")
        return source == indiscrete(source.quantale, source.states)
    source = legs[0].source
    if any(f.source != source for f in legs):
        raise ConsistencyError("cone legs have different sources")
    lifted = initial_structure(
        source.quantale, source.states, [(f.mapping, f.target) for f in legs]
    )
    return lifted == source


def fibre_join(structures, guard=None):
    """Least V-category structure pointwise-above all the given ones.

    Iterates a <- a v (a . a) v diag(k) from the pointwise join; terminates
    on finite quantales and on Lawvere min-plus relaxation.
    """
    if not structures:
        raise ConsistencyError("fibre_join needs at least one structure")
    first = structures[0]
    q, states = first.quantale, first.states
    for s in structures[1:]:
        if s.quantale != q or s.states != states:
            raise ConsistencyError("fibre_join inputs on different carriers")
    n = len(states)
    mat = [
        [q.join_all(s.matrix[i][j] for s in structures) for j in range(n)]
        for i in range(n)
    ]
    if guard is None:
        guard = n * n * 64 + 8
    for _ in range(guard):
        nxt = [
            [
                q.join(
                    q.join(
                        mat[i][j],
                        q.join_all(q.tensor(mat[i][l], mat[l][j]) for l in range(n)),
                    ),
                    q.unit if i == j else q.bottom,
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        if nxt == mat:
            return VCategory(q, states, mat)
        mat = nxt
    raise IterationGuard("fibre_join did not stabilize within its bound")


# -- enumeration --------------------------------------------------------


def vfunctors_between(x, y, cap=20000):
    """Every structure-preserving map x -> y, in lexicographic mapping order."""
    size = len(y.states) ** len(x.states) if x.states else 1
    if size > cap:
        raise CapExceeded("vfunctors_between candidate maps", size, cap)
    out = []
    for mapping in iproduct(y.states, repeat=len(x.states)):
        f = VFunctor(x, y, mapping)
        if is_vfunctor(f):
            out.append(f)
    return out
