"""Quantales: complete lattices carrying a commutative unital tensor.

Two flavors are supported.  ``finite-table`` quantales are given by explicit
tables over symbolic element ids and every law can be checked exhaustively.
The ``lawvere-extended-rational`` flavor is the quantale of extended
non-negative rationals ordered by >=, with truncated addition as tensor; its
laws hold analytically and only finitary joins/meets are ever requested.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, DescriptorError

FINITE_TABLE = "finite-table"
LAWVERE = "lawvere-extended-rational"


class _Infinity:
    """Distinguished infinity for the Lawvere quantale (its bottom)."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


INF = _Infinity()


@dataclass(frozen=True)
class LawEntry:
    """One checked law: name, verdict, and a violating witness when false."""

    law: str
    passed: bool
    witness: tuple = None
    analytic: bool = False


@dataclass(frozen=True)
class AssumptionReport:
    entries: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return tuple(e for e in self.entries if not e.passed)

    def entry(self, law):
        for e in self.entries:
            if e.law == law:
                return e
        raise KeyError(law)


class Quantale:
    """A quantale with computed internal hom.

    Finite-table instances are built through :meth:`finite`; the Lawvere
    quantale through :meth:`lawvere`.  All public operations take and return
    element values: ids (strings) for finite tables, ``Fraction`` or ``INF``
    for the Lawvere flavor.
    """

    def __init__(self, flavor, elements=None, leq_pairs=None, tensor_table=None, unit=None):
        self.flavor = flavor
        if flavor == LAWVERE:
            self._key = (LAWVERE,)
            return
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise DescriptorError("duplicate element ids")
        self._leq = frozenset(leq_pairs)
        self._tensor = dict(tensor_table)
        self._unit = unit
        if unit not in self.elements:
            raise DescriptorError(f"unit {unit!r} not among elements")
        self._derive_lattice()
        self._derive_hom()
        self._key = (FINITE_TABLE, self.elements, self._leq,
                     tuple(sorted(self._tensor.items())), unit)

    # -- construction -------------------------------------------------

    @classmethod
    def finite(cls, elements, leq_pairs, tensor_table, unit):
        return cls(FINITE_TABLE, elements, leq_pairs, tensor_table, unit)

    @classmethod
    def boolean(cls):
        """The two-element Boolean quantale 2."""
        return cls.finite(
            ["0", "1"],
            [("0", "0"), ("0", "1"), ("1", "1")],
            {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "0", ("1", "1"): "1"},
            "1",
        )

    @classmethod
    def chain(cls, n, tensor):
        """A quantale on the chain 0 < 1/(n-1) < ... < 1 with the given tensor."""
        if n < 1:
            raise DescriptorError("chain needs at least one element")
        if n == 1:
            vals = [Fraction(0)]
        else:
            vals = [Fraction(i, n - 1) for i in range(n)]
        ids = [_frac_id(v) for v in vals]
        leq = [(ids[i], ids[j]) for i in range(n) for j in range(n) if vals[i] <= vals[j]]
        table = {
            (ids[i], ids[j]): _frac_id(tensor(vals[i], vals[j]))
            for i in range(n)
            for j in range(n)
        }
        return cls.finite(ids, leq, table, ids[-1])

    @classmethod
    def godel(cls, n):
        """Gödel chain: tensor is min, unit is the top."""
        return cls.chain(n, min)

    @classmethod
    def lukasiewicz(cls, n):
        """Łukasiewicz chain: tensor is max(0, u + v - 1), unit is the top."""
        return cls.chain(n, lambda u, v: max(Fraction(0), u + v - 1))

    @classmethod
    def lawvere(cls):
        """Extended non-negative rationals ([0, inf], >=, +, 0)."""
        return cls(LAWVERE)

    @classmethod
    def by_name(cls, name):
        """Resolve a built-in quantale name: bool, godel:n, lukasiewicz:n, lawvere."""
        if name == "bool":
            return cls.boolean()
        if name == "lawvere":
            return cls.lawvere()
        for prefix, ctor in (("godel:", cls.godel), ("lukasiewicz:", cls.lukasiewicz)):
            if name.startswith(prefix):
                try:
                    n = int(name[len(prefix):])
                except ValueError:
                    raise DescriptorError(f"bad chain length in {name!r}")
                return ctor(n)
        raise DescriptorError(f"unknown quantale name {name!r}")

    # -- lattice derivation (finite tables) ---------------------------

    def _derive_lattice(self):
        els = self.elements
        leq = self._leq
        for u in els:
            if (u, u) not in leq:
                raise DescriptorError(f"leq not reflexive at {u!r}")
        self._join = {}
        self._meet = {}
        for u in els:
            for v in els:
                ub = [w for w in els if (u, w) in leq and (v, w) in leq]
                lub = [w for w in ub if all((w, z) in leq for z in ub)]
                lb = [w for w in els if (w, u) in leq and (w, v) in leq]
                glb = [w for w in lb if all((z, w) in leq for z in lb)]
                if len(lub) != 1 or len(glb) != 1:
                    raise DescriptorError(f"leq is not a lattice order at ({u!r}, {v!r})")
                self._join[u, v] = lub[0]
                self._meet[u, v] = glb[0]
        bots = [u for u in els if all((u, v) in leq for v in els)]
        tops = [u for u in els if all((v, u) in leq for v in els)]
        if len(bots) != 1 or len(tops) != 1:
            raise DescriptorError("lattice lacks a unique bottom or top")
        self._bot, self._top = bots[0], tops[0]
        missing = [p for p in ((u, v) for u in els for v in els) if p not in self._tensor]
        if missing:
            raise DescriptorError(f"tensor table missing entries: {missing[:3]}")

    def _derive_hom(self):
        # hom(u, v) = join of { w | u (x) w <= v }; the adjunction itself is
        # exercised by check_quantale_laws and the test suite.
        self._hom = {}
        for u in self.elements:
            for v in self.elements:
                ws = [w for w in self.elements if (self._tensor[u, w], v) in self._leq]
                self._hom[u, v] = self.join_all(ws)

    # -- equality / hashing -------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Quantale) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.flavor == LAWVERE:
            return "Quantale(lawvere)"
        return f"Quantale({len(self.elements)} elements, unit={self._unit!r})"

    # -- element parsing / formatting ----------------------------------

    def parse(self, text):
        if self.flavor == FINITE_TABLE:
            if text not in self.elements:
                raise DescriptorError(f"unknown element id {text!r}")
            return text
        if text == "inf":
            return INF
        try:
            v = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise DescriptorError(f"bad rational {text!r}")
        if v < 0:
            raise DescriptorError(f"negative value {text!r} not in [0, inf]")
        return v

    def format(self, el):
        self._check(el)
        if self.flavor == FINITE_TABLE:
            return el
        return "inf" if el is INF else str(el)

    def _check(self, el):
        if self.flavor == FINITE_TABLE:
            if el not in self.elements:
                raise DescriptorError(f"unknown element id {el!r}")
        elif el is not INF and not isinstance(el, Fraction):
            raise DescriptorError(f"bad Lawvere element {el!r}")

    # -- order and lattice operations ----------------------------------

    @property
    def unit(self):
        return self._unit if self.flavor == FINITE_TABLE else Fraction(0)

    @property
    def bottom(self):
        return self._bot if self.flavor == FINITE_TABLE else INF

    @property
    def top(self):
        return self._top if self.flavor == FINITE_TABLE else Fraction(0)

    def leq(self, u, v):
        if self.flavor == FINITE_TABLE:
            return (u, v) in self._leq
        # Lawvere order is reversed numeric order; INF is the bottom.
        if u is INF:
            return True
        if v is INF:
            return False
        return u >= v

    def join(self, u, v):
        if self.flavor == FINITE_TABLE:
            return self._join[u, v]
        if u is INF:
            return v
        if v is INF:
            return u
        return min(u, v)

    def meet(self, u, v):
        if self.flavor == FINITE_TABLE:
            return self._meet[u, v]
        if u is INF or v is INF:
            return INF
        return max(u, v)

    def join_all(self, items):
        out = self.bottom
        top = self.top
        for x in items:
            out = self.join(out, x)
            if out == top:
                break
        return out

    def meet_all(self, items):
        out = self.top
        bot = self.bottom
        for x in items:
            out = self.meet(out, x)
            if out == bot:
                break
        return out

    def tensor(self, u, v):
        if self.flavor == FINITE_TABLE:
            return self._tensor[u, v]
        if u is INF or v is INF:
            return INF
        return u + v

    def hom(self, u, v):
        """Internal hom: the largest w with u (x) w <= v."""
        if self.flavor == FINITE_TABLE:
            self._check(u)
            self._check(v)
            return self._hom[u, v]
        if u is INF:
            return Fraction(0)
        if v is INF:
            return INF
        return max(v - u, Fraction(0))

    @property
    def trivial(self):
        """True when unit = bottom, i.e. the one-element quantale."""
        return self.unit == self.bottom if self.flavor == FINITE_TABLE else False


def _frac_id(v):
    return str(v)


# -- the totally-below relation ---------------------------------------


def totally_below(q, cap=16):
    """The full totally-below relation of a finite-table quantale.

    u is totally below v when every subset S with v <= join(S) contains
    some s with u <= s.  Computed by naive search over all subsets.
    """
    if q.flavor != FINITE_TABLE:
        raise DescriptorError("totally_below requires a finite-table quantale")
    els = q.elements
    n = len(els)
    if n > cap:
        raise CapExceeded("totally_below subset search", n, cap)
    joins = [q.bottom] * (1 << n)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        joins[m] = q.join(joins[m & (m - 1)], els[low])
    above = {u: sum(1 << i for i, s in enumerate(els) if q.leq(u, s)) for u in els}
    rel = set()
    for v in els:
        masks = [m for m in range(1 << n) if q.leq(v, joins[m])]
        for u in els:
            if all(m & above[u] for m in masks):
                rel.add((u, v))
    return rel


# -- law and assumption reports ---------------------------------------


def check_quantale_laws(q):
    """Exhaustively verify the lattice and tensor laws of a finite quantale.

    Distributivity of the (finite) lattice is included since on finite
    lattices it suffices for complete distributivity.  The Lawvere flavor
    returns an analytically asserted report.
    """
    if q.flavor == LAWVERE:
        laws = ("leq-partial-order", "join-meet-lattice", "tensor-monoid",
                "tensor-join-distributive", "lattice-distributive")
        return AssumptionReport(tuple(LawEntry(l, True, analytic=True) for l in laws))

    els = q.elements
    entries = []

    def add(law, witness):
        entries.append(LawEntry(law, witness is None, witness))

    w = None
    for u in els:
        if not q.leq(u, u):
            w = (u,)
            break
    add("leq-reflexive", w)

    w = next(((u, v) for u in els for v in els
              if u != v and q.leq(u, v) and q.leq(v, u)), None)
    add("leq-antisymmetric", w)

    w = next(((u, v, z) for u in els for v in els for z in els
              if q.leq(u, v) and q.leq(v, z) and not q.leq(u, z)), None)
    add("leq-transitive", w)

    def lub_bad(u, v):
        j = q.join(u, v)
        if not (q.leq(u, j) and q.leq(v, j)):
            return (u, v)
        for z in els:
            if q.leq(u, z) and q.leq(v, z) and not q.leq(j, z):
                return (u, v, z)
        return None

    def glb_bad(u, v):
        m = q.meet(u, v)
        if not (q.leq(m, u) and q.leq(m, v)):
            return (u, v)
        for z in els:
            if q.leq(z, u) and q.leq(z, v) and not q.leq(z, m):
                return (u, v, z)
        return None

    add("join-is-lub", next((w for u in els for v in els if (w := lub_bad(u, v))), None))
    add("meet-is-glb", next((w for u in els for v in els if (w := glb_bad(u, v))), None))
    add("bottom-least", next(((u,) for u in els if not q.leq(q.bottom, u)), None))
    add("top-greatest", next(((u,) for u in els if not q.leq(u, q.top)), None))

    add("tensor-commutative",
        next(((u, v) for u in els for v in els
              if q.tensor(u, v) != q.tensor(v, u)), None))
    add("tensor-associative",
        next(((u, v, z) for u in els for v in els for z in els
              if q.tensor(q.tensor(u, v), z) != q.tensor(u, q.tensor(v, z))), None))
    add("tensor-unit",
        next(((u,) for u in els if q.tensor(q.unit, u) != u), None))
    add("tensor-monotone",
        next(((u, v, z) for u in els for v in els for z in els
              if q.leq(u, v) and not q.leq(q.tensor(u, z), q.tensor(v, z))), None))
    add("tensor-join-distributive",
        next(((u, v, z) for u in els for v in els for z in els
              if q.tensor(u, q.join(v, z)) != q.join(q.tensor(u, v), q.tensor(u, z))), None))
    add("tensor-bottom",
        next(((u,) for u in els if q.tensor(u, q.bottom) != q.bottom), None))
    add("lattice-distributive",
        next(((u, v, z) for u in els for v in els for z in els
              if q.meet(u, q.join(v, z)) != q.join(q.meet(u, v), q.meet(u, z))), None))

    return AssumptionReport(tuple(entries))


def check_assumptions(q, cap=16):
    """Check the standing assumptions: directedness of the totally-below
    cone under the unit, non-triviality, and unit integrality."""
    if q.flavor == LAWVERE:
        laws = ("totally-below-unit-directed", "non-trivial", "unit-tensor-integral")
        return AssumptionReport(tuple(LawEntry(l, True, analytic=True) for l in laws))

    entries = []
    rel = totally_below(q, cap=cap)
    down_k = [u for u in q.elements if (u, q.unit) in rel]
    if not down_k:
        entries.append(LawEntry("totally-below-unit-directed", False, ("empty",)))
    else:
        w = None
        for u in down_k:
            for v in down_k:
                if not any(q.leq(u, z) and q.leq(v, z) for z in down_k):
                    w = (u, v)
                    break
            if w:
                break
        entries.append(LawEntry("totally-below-unit-directed", w is None, w))

    entries.append(LawEntry("non-trivial", not q.trivial,
                            None if not q.trivial else (q.unit,)))

    w = next(((u, v) for u in q.elements for v in q.elements
              if q.leq(q.unit, q.tensor(u, v))
              and not (q.leq(q.unit, u) and q.leq(q.unit, v))), None)
    entries.append(LawEntry("unit-tensor-integral", w is None, w))

    return AssumptionReport(tuple(entries))
