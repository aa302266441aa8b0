"""The extended naturals as the explicit terminal coalgebra of the
Hausdorff lifting at the ordered-discrete level, with finality checked
against finite truncations, the change of base from the Boolean quantale,
and the finite Priestley decision procedure.
"""

from dataclasses import dataclass
from functools import total_ordering

from .coalg import HComp, Id, final_chain
from .errors import ConsistencyError, DescriptorError
from .quantale import FINITE_TABLE, AssumptionReport, LawEntry, Quantale
from .vcat import as_vcategory, dual, vfunctors_between


@total_ordering
class ExtNat:
    """A natural number or infinity; totally ordered, with successor."""

    __slots__ = ("n",)

    def __init__(self, n=None):
        if n is not None and (not isinstance(n, int) or n < 0):
            raise DescriptorError(f"bad extended natural {n!r}")
        self.n = n

    @property
    def is_infinite(self):
        return self.n is None

    def successor(self):
        return ExtNat(None if self.n is None else self.n + 1)

    def truncate(self, k):
        """min(self, k) as a plain integer."""
        return k if self.n is None else min(self.n, k)

    def __eq__(self, other):
        return isinstance(other, ExtNat) and self.n == other.n

    def __lt__(self, other):
        if self.n is None:
            return False
        if other.n is None:
            return True
        return self.n < other.n

    def __hash__(self):
        return hash(("ExtNat", self.n))

    def __repr__(self):
        return "inf" if self.n is None else str(self.n)

    @classmethod
    def parse(cls, text):
        return INFINITY if text == "inf" else cls(int(text))


INFINITY = ExtNat(None)


# -- the symbolic closed-increasing family --------------------------------

EMPTY = "empty"
SEGMENT = "segment"
ALL = "all"


@dataclass(frozen=True)
class SymbolicUpset:
    """A member of the closed-increasing family over the extended naturals
    under >=: nothing, an initial segment {0..n-1}, or everything."""

    kind: str
    size: int = 0

    def __repr__(self):
        if self.kind == EMPTY:
            return "{}"
        if self.kind == ALL:
            return "N+inf"
        return f"{{0..{self.size - 1}}}"


def code(upset):
    """The canonical bijection from the symbolic family to extended naturals."""
    if upset.kind == EMPTY:
        return ExtNat(0)
    if upset.kind == ALL:
        return INFINITY
    return ExtNat(upset.size)


def decode(e):
    if e == ExtNat(0):
        return SymbolicUpset(EMPTY)
    if e.is_infinite:
        return SymbolicUpset(ALL)
    return SymbolicUpset(SEGMENT, e.n)


def omega_structure_set(x):
    """The terminal-coalgebra structure map, valued in the symbolic family:
    0 goes to the empty set, infinity to everything, and n to the up-set
    of n - 1 (an initial segment, since the order is >=)."""
    if x == ExtNat(0):
        return SymbolicUpset(EMPTY)
    if x.is_infinite:
        return SymbolicUpset(ALL)
    return SymbolicUpset(SEGMENT, x.n)


def omega_structure(x):
    """The structure map followed by the canonical coding; the identity on
    extended naturals, witnessing that the structure map is an isomorphism."""
    return code(omega_structure_set(x))


# -- truncations against the final chain ----------------------------------


def truncation(k):
    """The limit-cone leg onto the (k+1)-chain: x goes to min(x, k)."""

    def leg(x):
        return x.truncate(k)

    return leg


def canonical_chain_coding(obj):
    """Code a finite chain V-category by height: the greatest element gets
    0, the next 1, and so on.  Raises when the object is not a chain."""
    q = obj.quantale
    states = obj.states
    for s in states:
        for t in states:
            below = q.leq(q.unit, obj.a(s, t))
            above = q.leq(q.unit, obj.a(t, s))
            if not below and not above:
                raise ConsistencyError(f"not a chain: {s!r} and {t!r} incomparable")
            if s != t and below and above:
                raise ConsistencyError(f"not separated: {s!r} and {t!r} equivalent")
    coding = {}
    for s in states:
        coding[s] = sum(
            1 for t in states if t != s and q.leq(q.unit, obj.a(s, t))
        )
    return coding


def verify_chain_commutation(depth, cap=8192):
    """Check that the truncation legs form a commuting cone matching the
    final chain of the Hausdorff lifting over the Boolean quantale."""
    entries = []
    sample = [ExtNat(i) for i in range(depth + 3)] + [INFINITY]

    w = None
    for k in range(depth + 1):
        for x in sample:
            if min(x.truncate(k + 1), k) != x.truncate(k):
                w = (k, repr(x))
                break
        if w:
            break
    entries.append(LawEntry("truncation-squares-commute", w is None, w))

    w = None
    for k in range(depth + 1):
        leg = truncation(k)
        if {leg(x) for x in sample} != set(range(k + 1)):
            w = (k, "not-surjective")
            break
        bad = next(
            ((repr(x), repr(y)) for x in sample for y in sample
             if x >= y and not leg(x) >= leg(y)),
            None,
        )
        if bad:
            w = (k,) + bad
            break
    entries.append(LawEntry("truncation-legs-monotone-surjective", w is None, w))

    q2 = Quantale.boolean()
    chain = final_chain(HComp(Id()), depth, quantale=q2, cap=cap)
    w = None
    for level in chain:
        states = level.obj.states
        if len(states) != level.index + 1:
            w = (level.index, "size", len(states))
            break
        coding = canonical_chain_coding(level.obj)
        for s in states:
            for t in states:
                expect = "1" if coding[s] >= coding[t] else "0"
                if level.obj.a(s, t) != expect:
                    w = (level.index, "structure", coding[s], coding[t])
                    break
            if w:
                break
        if w:
            break
        if level.index + 1 <= depth:
            above = chain[level.index + 1].obj
            up_coding = canonical_chain_coding(above)
            for s in above.states:
                if coding[level.connecting(s)] != min(up_coding[s], level.index):
                    w = (level.index, "connecting", up_coding[s])
                    break
        if w:
            break
    entries.append(LawEntry("legs-match-chain-levels", w is None, w))

    return AssumptionReport(tuple(entries))


# -- finality over the Boolean quantale ------------------------------------


def _require_boolean_h_coalgebra(c):
    if c.functor != HComp(Id()):
        raise ConsistencyError("anamorphism needs a coalgebra of the plain lifting")
    if c.carrier.quantale != Quantale.boolean():
        raise ConsistencyError("anamorphism is defined over the Boolean quantale")


def anamorphism(c):
    """The unique map into the terminal coalgebra on extended naturals.

    Computes the coded behaviour thread by iterating the successor-of-max
    recurrence; threads either stabilize at a finite rank below the carrier
    size or grow without bound, so 2|X| + 2 rounds decide every state.
    """
    _require_boolean_h_coalgebra(c)
    states = c.carrier.states
    n = len(states)
    t = {s: 0 for s in states}
    for _ in range(2 * n + 2):
        t = {
            s: 0 if not c.structure[s] else 1 + max(t[y] for y in c.structure[s])
            for s in states
        }
    return {s: ExtNat(v) if v <= max(n - 1, 0) else INFINITY for s, v in t.items()}


def is_omega_hom(c, assignment):
    """Is the assignment a coalgebra homomorphism into the terminal
    coalgebra?  Checks monotonicity and the coded structure square."""
    _require_boolean_h_coalgebra(c)
    x = c.carrier
    for s in x.states:
        for u in x.states:
            if x.a(s, u) == "1" and not assignment[s] >= assignment[u]:
                return False
    for s in x.states:
        payload = c.structure[s]
        if not payload:
            expect = ExtNat(0)
        else:
            expect = max(assignment[y] for y in payload).successor()
        if omega_structure(assignment[s]) != expect:
            return False
    return True


# -- change of base ---------------------------------------------------------


def embed_I(x, quantale):
    """Transport a Boolean-quantale category along the lattice map sending
    0 to bottom and 1 to top; carrier and states are kept."""
    from .vcat import VCategory

    if x.quantale != Quantale.boolean():
        raise ConsistencyError("embed_I expects a category over the Boolean quantale")
    bot, top = quantale.bottom, quantale.top
    i = {"0": bot, "1": top}
    return VCategory(
        quantale, x.states, [[i[v] for v in row] for row in x.matrix]
    )


# -- the finite Priestley check ---------------------------------------------


def is_priestley_finite(x, map_cap=20000):
    """Decide whether the cone of all V-functors into the dual of the
    quantale separates points and is initial.  Finite carriers over
    finite-table quantales only; the discrete topology makes every such
    map continuous."""
    q = x.quantale
    if q.flavor != FINITE_TABLE:
        raise DescriptorError("the Priestley check needs a finite-table quantale")
    vop = dual(as_vcategory(q))
    cone = vfunctors_between(x, vop, cap=map_cap)
    certificate = {"maps": len(cone)}
    for s in x.states:
        for t in x.states:
            if s != t and all(psi(s) == psi(t) for psi in cone):
                certificate["separating"] = False
                certificate["witness"] = (s, t)
                return False, certificate
    certificate["separating"] = True
    for s in x.states:
        for t in x.states:
            meet = q.meet_all(vop.a(psi(s), psi(t)) for psi in cone)
            if meet != x.a(s, t):
                certificate["initial"] = False
                certificate["witness"] = (s, t, q.format(meet), q.format(x.a(s, t)))
                return False, certificate
    certificate["initial"] = True
    return True, certificate
