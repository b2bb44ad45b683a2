"""Uncertainty structures: one outcome, a list of outcomes, or a distribution.

The three kinds share one container type so transition functions, measures
and law checks can be written once. Stochastic weights may be exact
(int/Fraction) or binary64 floats; exact weights make every law check an
equality of rationals.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .enumeration import DEFAULT_BUDGET, Finite, Mapped, Product, Space, Union, sequences
from .reports import LawReport, run_law

WEIGHT_SUM_TOLERANCE = 1e-9


class StructureError(ValueError):
    """Malformed structure or kind mismatch between nested structures."""


class UncertaintyKind(enum.Enum):
    IDENTITY = "identity"
    NONDET = "nondet"
    STOCH = "stoch"

    @classmethod
    def from_name(cls, name: str) -> "UncertaintyKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise StructureError(f"unknown uncertainty kind {name!r}")

    def __str__(self) -> str:
        return self.value


def _weights_ok(weights: tuple) -> bool:
    total = sum(weights)
    if any(isinstance(w, float) for w in weights):
        return abs(total - 1) <= WEIGHT_SUM_TOLERANCE
    return total == 1


@dataclass(frozen=True)
class MStruct:
    kind: UncertaintyKind
    values: tuple
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind is UncertaintyKind.IDENTITY:
            if len(self.values) != 1 or self.weights is not None:
                raise StructureError("identity structure holds exactly one unweighted outcome")
        elif self.kind is UncertaintyKind.NONDET:
            if self.weights is not None:
                raise StructureError("nondet structure carries no weights")
        else:
            if self.weights is None or len(self.weights) != len(self.values):
                raise StructureError("stoch structure needs one weight per outcome")
            if not self.values:
                raise StructureError("stoch structure needs at least one outcome")
            if any(not w > 0 for w in self.weights):
                raise StructureError("stoch weights must be positive")
            if not _weights_ok(self.weights):
                raise StructureError(f"stoch weights sum to {sum(self.weights)}, not 1")

    def __repr__(self) -> str:
        return m_render(self)


def identity(a: Any) -> MStruct:
    return MStruct(UncertaintyKind.IDENTITY, (a,))


def nondet(values: Sequence[Any]) -> MStruct:
    return MStruct(UncertaintyKind.NONDET, tuple(values))


def stoch(pairs: Sequence[tuple]) -> MStruct:
    return MStruct(UncertaintyKind.STOCH,
                   tuple(v for v, _ in pairs),
                   tuple(w for _, w in pairs))


def m_pure(kind: UncertaintyKind, a: Any) -> MStruct:
    if kind is UncertaintyKind.STOCH:
        return MStruct(kind, (a,), (1,))
    return MStruct(kind, (a,))


def m_map(f: Callable[[Any], Any], ma: MStruct) -> MStruct:
    return MStruct(ma.kind, tuple(f(v) for v in ma.values), ma.weights)


def _check_inner_kind(outer: MStruct) -> None:
    for inner in outer.values:
        if not isinstance(inner, MStruct) or inner.kind is not outer.kind:
            raise StructureError(f"inner structure {inner!r} does not match kind {outer.kind}")


def m_join(mma: MStruct) -> MStruct:
    _check_inner_kind(mma)
    if mma.kind is UncertaintyKind.IDENTITY:
        return mma.values[0]
    if mma.kind is UncertaintyKind.NONDET:
        return MStruct(mma.kind, tuple(v for inner in mma.values for v in inner.values))
    pairs = [(v, w * ow)
             for inner, ow in zip(mma.values, mma.weights)
             for v, w in zip(inner.values, inner.weights)]
    return stoch(pairs)


def m_bind(ma: MStruct, f: Callable[[Any], MStruct]) -> MStruct:
    # Written out per kind, not as join(map f ma), so bindJoinSpec below is a
    # differential check between two independent routes.
    if ma.kind is UncertaintyKind.IDENTITY:
        mb = f(ma.values[0])
        if not isinstance(mb, MStruct) or mb.kind is not ma.kind:
            raise StructureError("bind function returned a structure of the wrong kind")
        return mb
    images = [f(a) for a in ma.values]
    for mb in images:
        if not isinstance(mb, MStruct) or mb.kind is not ma.kind:
            raise StructureError("bind function returned a structure of the wrong kind")
    if ma.kind is UncertaintyKind.NONDET:
        return MStruct(ma.kind, tuple(v for mb in images for v in mb.values))
    pairs = [(v, w * ow)
             for mb, ow in zip(images, ma.weights)
             for v, w in zip(mb.values, mb.weights)]
    return stoch(pairs)


def m_is_not_empty(ma: MStruct) -> bool:
    return len(ma.values) > 0


def weight_sum(ma: MStruct):
    """Total weight of a stoch structure (1 for the other kinds)."""
    if ma.kind is not UncertaintyKind.STOCH:
        return 1
    return sum(ma.weights)


def _nums_equal(a, b, tolerance: float) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= tolerance
    return a == b


def m_equal(ma: MStruct, mb: MStruct, tolerance: float = 0.0) -> bool:
    """Entry-sequence equality, recursing into nested structures.

    Float weights and float values compare within `tolerance`; exact kinds
    compare exactly.
    """
    if ma.kind is not mb.kind or len(ma.values) != len(mb.values):
        return False
    for va, vb in zip(ma.values, mb.values):
        if isinstance(va, MStruct) and isinstance(vb, MStruct):
            if not m_equal(va, vb, tolerance):
                return False
        elif isinstance(va, (int, float, Fraction)) and isinstance(vb, (int, float, Fraction)):
            if not _nums_equal(va, vb, tolerance):
                return False
        elif va != vb:
            return False
    if ma.weights is not None:
        for wa, wb in zip(ma.weights, mb.weights):
            if not _nums_equal(wa, wb, tolerance):
                return False
    return True


def _num_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def m_render(ma: MStruct) -> str:
    def show(v):
        return m_render(v) if isinstance(v, MStruct) else str(v)

    if ma.kind is UncertaintyKind.IDENTITY:
        return f"One({show(ma.values[0])})"
    if ma.kind is UncertaintyKind.NONDET:
        return "[" + ", ".join(show(v) for v in ma.values) + "]"
    return "[" + ", ".join(f"({show(v)}, {_num_str(w)})"
                           for v, w in zip(ma.values, ma.weights)) + "]"


# --------------------------------------------------------------------------
# Generators for law checks


def dyadic_weight_vectors(k: int) -> list[tuple[Fraction, ...]]:
    """All length-k vectors of positive multiples of 1/4 summing to 1."""
    out = []
    for cut in itertools.combinations(range(1, 4), k - 1):
        parts = [b - a for a, b in zip((0,) + cut, cut + (4,))]
        out.append(tuple(Fraction(p, 4) for p in parts))
    return out


def _stoch_space(value_space: Space, min_len: int, max_len: int) -> Space:
    def build(k: int) -> Space:
        vecs = Finite(dyadic_weight_vectors(k))
        prod = Product(Product(*([value_space] * k)), vecs)
        return Mapped(prod, lambda vw: MStruct(UncertaintyKind.STOCH, vw[0], vw[1]))
    return Union(*(build(k) for k in range(max(1, min_len), max_len + 1)))


@dataclass(frozen=True)
class StructureGenerator:
    """Bounded case spaces of structures of one kind for exhaustive checks."""

    kind: UncertaintyKind
    values: tuple = (0, 1, 2)
    max_len: int = 3
    nested_inner: int = 2
    seed: int = 0

    def value_space(self) -> Space:
        return Finite(self.values)

    def structures(self, min_len: int = 0, max_len: int | None = None,
                   value_space: Space | None = None) -> Space:
        base = value_space if value_space is not None else self.value_space()
        top = self.max_len if max_len is None else max_len
        if self.kind is UncertaintyKind.IDENTITY:
            return Mapped(base, identity)
        if self.kind is UncertaintyKind.NONDET:
            return Mapped(sequences(base, min_len, top),
                          lambda vs: MStruct(UncertaintyKind.NONDET, vs))
        return _stoch_space(base, min_len, top)

    def nested_structures(self, min_outer: int = 0, min_inner: int = 0) -> Space:
        inner = self.structures(min_len=min_inner, max_len=self.nested_inner)
        if self.kind is UncertaintyKind.IDENTITY:
            return Mapped(inner, identity)
        if self.kind is UncertaintyKind.NONDET:
            return Mapped(sequences(inner, min_outer, self.max_len),
                          lambda vs: MStruct(UncertaintyKind.NONDET, vs))
        return _stoch_space(inner, 1, 2)

    def depth3_structures(self) -> Space:
        if self.kind is UncertaintyKind.IDENTITY:
            return Mapped(self.value_space(), lambda a: identity(identity(identity(a))))
        if self.kind is UncertaintyKind.NONDET:
            level = Finite(self.values[:2])
            for _ in range(3):
                level = Mapped(sequences(level, 0, 2),
                               lambda vs: MStruct(UncertaintyKind.NONDET, vs))
            return level
        # Two complementary slices keep the space exhaustive under the default
        # budget: full dyadic weights over one value, and uniform weights over
        # two values.
        dyadic = Finite(self.values[:1])
        for _ in range(3):
            dyadic = _stoch_space(dyadic, 1, 2)
        half = Fraction(1, 2)

        def wrap(vs):
            return stoch([(v, half) for v in vs]) if len(vs) == 2 else stoch([(vs[0], 1)])

        uniform = Finite(self.values[:2])
        for _ in range(3):
            uniform = Mapped(sequences(uniform, 1, 2), wrap)
        return Union(dyadic, uniform)

    def funcs(self) -> Space:
        return Finite((("plus1", lambda a: a + 1),
                       ("double", lambda a: 2 * a),
                       ("square", lambda a: a * a)))

    def kleisli_funcs(self) -> Space:
        """Functions into non-empty structures of this kind."""
        if self.kind is UncertaintyKind.IDENTITY:
            pool = (("pure+1", lambda a: identity(a + 1)),
                    ("pure*2", lambda a: identity(2 * a)))
        elif self.kind is UncertaintyKind.NONDET:
            pool = (("single", lambda a: nondet([a + 1])),
                    ("pair", lambda a: nondet([a, a + 1])),
                    ("mixed", lambda a: nondet([a]) if a % 2 == 0 else nondet([a, a + 1])))
        else:
            q = Fraction(1, 4)
            pool = (("point", lambda a: stoch([(a + 1, 1)])),
                    ("split", lambda a: stoch([(a, q), (a + 1, 1 - q)])),
                    ("mixed", lambda a: stoch([(a, 1)]) if a % 2 == 0
                     else stoch([(a, Fraction(1, 2)), (a + 1, Fraction(1, 2))])))
        return Finite(pool)

    @classmethod
    def default(cls, kind: UncertaintyKind) -> "StructureGenerator":
        return cls(kind)


# --------------------------------------------------------------------------
# Law checks


def check_monad_laws(kind: UncertaintyKind, gen: StructureGenerator | None = None,
                     budget: int = DEFAULT_BUDGET, tolerance: float = 0.0) -> LawReport:
    """All eight structural laws on generated cases of one kind."""
    gen = gen if gen is not None else StructureGenerator.default(kind)
    structs = gen.structures()
    nested = gen.nested_structures()
    funcs = gen.funcs()
    eq = lambda a, b: m_equal(a, b, tolerance)

    def fail(**kw):
        return {k: repr(v) if isinstance(v, MStruct) else v for k, v in kw.items()}

    def map_pres_id(ma):
        got = m_map(lambda a: a, ma)
        return None if eq(got, ma) else fail(ma=ma, got=got)

    def map_pres_comp(case):
        ma, (fn, f), (gn, g) = case
        lhs = m_map(lambda a: g(f(a)), ma)
        rhs = m_map(g, m_map(f, ma))
        return None if eq(lhs, rhs) else fail(ma=ma, f=fn, g=gn, lhs=lhs, rhs=rhs)

    def pure_nat_trans(case):
        a, (fn, f) = case
        lhs = m_map(f, m_pure(kind, a))
        rhs = m_pure(kind, f(a))
        return None if eq(lhs, rhs) else fail(a=a, f=fn, lhs=lhs, rhs=rhs)

    def join_nat_trans(case):
        mma, (fn, f) = case
        lhs = m_map(f, m_join(mma))
        rhs = m_join(m_map(lambda ma: m_map(f, ma), mma))
        return None if eq(lhs, rhs) else fail(mma=mma, f=fn, lhs=lhs, rhs=rhs)

    def pure_neutral_left(ma):
        got = m_join(m_pure(kind, ma))
        return None if eq(got, ma) else fail(ma=ma, got=got)

    def pure_neutral_right(ma):
        got = m_join(m_map(lambda a: m_pure(kind, a), ma))
        return None if eq(got, ma) else fail(ma=ma, got=got)

    def join_assoc(mmma):
        lhs = m_join(m_join(mmma))
        rhs = m_join(m_map(m_join, mmma))
        return None if eq(lhs, rhs) else fail(mmma=mmma, lhs=lhs, rhs=rhs)

    def bind_join_spec(case):
        ma, (fn, f) = case
        lhs = m_bind(ma, f)
        rhs = m_join(m_map(f, ma))
        return None if eq(lhs, rhs) else fail(ma=ma, f=fn, lhs=lhs, rhs=rhs)

    checks = (
        run_law("mapPresId", structs, map_pres_id, budget, gen.seed),
        run_law("mapPresComp", Product(structs, funcs, funcs), map_pres_comp, budget, gen.seed),
        run_law("pureNatTrans", Product(gen.value_space(), funcs), pure_nat_trans,
                budget, gen.seed),
        run_law("joinNatTrans", Product(nested, funcs), join_nat_trans, budget, gen.seed),
        run_law("pureNeutralLeft", structs, pure_neutral_left, budget, gen.seed),
        run_law("pureNeutralRight", structs, pure_neutral_right, budget, gen.seed),
        run_law("joinAssoc", gen.depth3_structures(), join_assoc, budget, gen.seed),
        run_law("bindJoinSpec", Product(structs, gen.kleisli_funcs()), bind_join_spec,
                budget, gen.seed),
    )
    return LawReport(f"monad-laws[{kind}]", checks, budget, gen.seed)


def check_nonempty_preservation(kind: UncertaintyKind, gen: StructureGenerator | None = None,
                                budget: int = DEFAULT_BUDGET) -> LawReport:
    """pure/map/bind keep structures non-empty (bind over non-empty images)."""
    gen = gen if gen is not None else StructureGenerator.default(kind)
    structs = gen.structures()

    def pure_not_empty(a):
        return None if m_is_not_empty(m_pure(kind, a)) else {"a": a}

    def map_pres(case):
        ma, (fn, f) = case
        if not m_is_not_empty(ma):
            return None
        return None if m_is_not_empty(m_map(f, ma)) else {"ma": repr(ma), "f": fn}

    def bind_pres(case):
        ma, (fn, f) = case
        if not m_is_not_empty(ma):
            return None
        return None if m_is_not_empty(m_bind(ma, f)) else {"ma": repr(ma), "f": fn}

    checks = (
        run_law("pureNotEmpty", gen.value_space(), pure_not_empty, budget, gen.seed),
        run_law("mapPresNotEmpty", Product(structs, gen.funcs()), map_pres, budget, gen.seed),
        run_law("bindPresNotEmpty", Product(structs, gen.kleisli_funcs()), bind_pres,
                budget, gen.seed),
    )
    return LawReport(f"nonempty-preservation[{kind}]", checks, budget, gen.seed)
