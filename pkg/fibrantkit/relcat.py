"""
Relative categories and zigzags.

A relative category is a finite category with a wide subcategory of weak
equivalences. Zigzags of a given type between two objects form a category
whose morphisms are width-one hammocks: levelwise weak equivalences fixing
the end objects and commuting with every arrow. Insertion functors between
such categories decide whether a relative category admits a homotopical
calculus of right fractions.
"""

import logging
from typing import (
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from pydantic import BaseModel, field_validator

from fibrantkit.config import get_settings
from fibrantkit.exceptions import FibrantKitError, NotAFunctor, NotARelativeCategory
from fibrantkit.fincat import (
    FinCategory,
    Functor,
    Mor,
    Obj,
    product_category,
    structured_category,
)
from fibrantkit.homotopy import weak_equivalence_evidence
from fibrantkit.models import CheckResult, Report, Verdict, aggregate_verdicts

logger = logging.getLogger(__name__)

RIGHT_FRACTIONS_ANCHOR = "insertion functors are weak homotopy equivalences (homotopical calculus of right fractions)"


class RelCategory:
    """
    A finite category with a wide subcategory of weak equivalences.

    Args:
        base: Underlying category
        weq: Morphism ids that are weak equivalences (identities are added)
        two_out_of_three: Enforce the two-out-of-three property
        contains_all_isos: Enforce that every isomorphism is a weak equivalence
        name: Label for logs and reports

    Raises:
        NotARelativeCategory: If weq is not a wide subcategory or a flag fails
    """

    def __init__(
        self,
        base: FinCategory,
        weq: Iterable[Mor],
        two_out_of_three: bool = False,
        contains_all_isos: bool = False,
        name: str = "",
    ):
        self.base = base
        self.weq = frozenset(weq) | frozenset(base.identity(x) for x in base.objects)
        self.two_out_of_three = two_out_of_three
        self.contains_all_isos = contains_all_isos
        self.name = name or base.name
        problems = self.violations()
        if problems:
            first = problems[0]
            first.violations = problems
            raise first

    @classmethod
    def minimal(cls, base: FinCategory) -> "RelCategory":
        """Weak equivalences are the identities only."""
        return cls(base, [], name=f"min({base.name})")

    @classmethod
    def maximal(cls, base: FinCategory) -> "RelCategory":
        """Every morphism is a weak equivalence."""
        return cls(base, base.morphisms, two_out_of_three=True, contains_all_isos=True,
                   name=f"max({base.name})")

    def __repr__(self) -> str:
        return f"RelCategory({self.name}: {len(self.weq)} weak equivalences)"

    def is_weq(self, f: Mor) -> bool:
        return f in self.weq

    def violations(self) -> List[NotARelativeCategory]:
        C = self.base
        problems: List[NotARelativeCategory] = []
        unknown = [m for m in self.weq if not C.has_morphism(m)]
        if unknown:
            return [NotARelativeCategory(f"weak equivalences name unknown morphisms {unknown}", unknown)]
        for g, f in C.composable_pairs():
            if f in self.weq and g in self.weq and C.compose(g, f) not in self.weq:
                problems.append(NotARelativeCategory(
                    f"weak equivalences are not closed under composition: {g!r}∘{f!r}", [g, f]
                ))
                break
        if self.two_out_of_three and not self.satisfies_two_out_of_three():
            problems.append(NotARelativeCategory("two-out-of-three fails", self._two_of_three_counterexample()))
        if self.contains_all_isos:
            missing = [m for m in C.isomorphisms() if m not in self.weq]
            if missing:
                problems.append(NotARelativeCategory(f"isomorphism {missing[0]!r} is not a weak equivalence", missing[:1]))
        return problems

    def _two_of_three_counterexample(self) -> List[Mor]:
        C = self.base
        for g, f in C.composable_pairs():
            flags = (f in self.weq, g in self.weq, C.compose(g, f) in self.weq)
            if sum(flags) == 2:
                return [g, f]
        return []

    def satisfies_two_out_of_three(self) -> bool:
        return not self._two_of_three_counterexample()

    def weq_category(self) -> FinCategory:
        """The wide subcategory W of weak equivalences."""
        C = self.base
        return C.subcategory(C.objects, [m for m in C.morphisms if m in self.weq], name=f"W({self.name})")

    def auxiliary(self) -> "RelCategory":
        """The relative category W in which every morphism is a weak equivalence."""
        W = self.weq_category()
        return RelCategory(W, W.morphisms, two_out_of_three=True, name=f"aux({self.name})")


class RelFunctor:
    """A functor between relative categories preserving weak equivalences."""

    def __init__(self, functor: Functor, source: RelCategory, target: RelCategory):
        self.functor = functor
        self.source = source
        self.target = target

    def check(self) -> "RelFunctor":
        """
        Verify functoriality and weak-equivalence preservation exhaustively.

        Raises:
            NotAFunctor: On the first failure found
        """
        self.functor.check()
        for m in self.source.weq:
            if not self.target.is_weq(self.functor.mor(m)):
                raise NotAFunctor(f"{self.functor!r} sends weak equivalence {m!r} outside weq")
        return self


# -- zigzag types -------------------------------------------------------------


class ZigzagType(BaseModel):
    """
    A zigzag type [k_1; ...; k_r].

    A positive entry k stands for k rightward arrows, a negative one for |k|
    leftward arrows (weak equivalences). Unnormalized entries are allowed.
    """

    model_config = {"frozen": True}

    entries: Tuple[int, ...] = ()

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Tuple[int, ...]:
        return tuple(value)

    @classmethod
    def of(cls, *entries: int) -> "ZigzagType":
        return cls(entries=entries)

    @property
    def length(self) -> int:
        """Number of arrows m; the index category has m + 1 objects."""
        return sum(abs(k) for k in self.entries)

    def directions(self) -> Tuple[int, ...]:
        """One sign per arrow: +1 rightward, -1 leftward."""
        out: List[int] = []
        for k in self.entries:
            out.extend([1 if k > 0 else -1] * abs(k))
        return tuple(out)

    def __str__(self) -> str:
        return "[" + ";".join(str(k) for k in self.entries) + "]"


def normalize_zigzag_type(t: ZigzagType) -> ZigzagType:
    """Drop zero entries and merge adjacent entries of the same sign."""
    merged: List[int] = []
    for k in t.entries:
        if k == 0:
            continue
        if merged and (merged[-1] > 0) == (k > 0):
            merged[-1] += k
        else:
            merged.append(k)
    return ZigzagType(entries=merged)


def _arrow_allowed(directions: Sequence[int], i: int, j: int) -> bool:
    if i < j:
        return all(directions[p] == 1 for p in range(i, j))
    if i > j:
        return all(directions[p] == -1 for p in range(j, i))
    return True


def zigzag_index_category(t: ZigzagType) -> RelCategory:
    """
    The free category on the linear graph of t.

    Objects are 0..m; there is a (unique) morphism (i, j) whenever the arrows
    between i and j all point from i towards j. Leftward morphisms are the
    weak equivalences.
    """
    directions = t.directions()
    points = list(range(len(directions) + 1))
    ends = {(i, j): (i, j) for i in points for j in points if _arrow_allowed(directions, i, j)}
    base = FinCategory(
        points,
        ends,
        {i: (i, i) for i in points},
        lambda g, f: (f[0], g[1]),
        name=f"I{t}",
    )
    return RelCategory(base, [m for m in ends if m[0] > m[1]], name=f"I{t}")


def index_isomorphism(t: ZigzagType) -> Functor:
    """Explicit isomorphism I(t) -> I(normalize(t)) of relative categories."""
    source = zigzag_index_category(t)
    target = zigzag_index_category(normalize_zigzag_type(t))
    return RelFunctor(
        Functor(
            source.base,
            target.base,
            {x: x for x in source.base.objects},
            {m: m for m in source.base.morphisms},
            name="normalize",
        ),
        source,
        target,
    ).check().functor


# -- zigzags ----------------------------------------------------------------


class Zigzag(NamedTuple):
    """A zigzag: objects o_0..o_m and arrows, arrow p pointing as directions[p] says."""

    directions: Tuple[int, ...]
    objects: Tuple[Obj, ...]
    arrows: Tuple[Mor, ...]

    @property
    def domain(self) -> Obj:
        return self.objects[0]

    @property
    def codomain(self) -> Obj:
        return self.objects[-1]


def is_zigzag(C: RelCategory, z: Zigzag) -> bool:
    B = C.base
    if len(z.objects) != len(z.arrows) + 1 or len(z.arrows) != len(z.directions):
        return False
    for p, (d, a) in enumerate(zip(z.directions, z.arrows)):
        expected = (z.objects[p], z.objects[p + 1]) if d == 1 else (z.objects[p + 1], z.objects[p])
        if B.ends(a) != expected:
            return False
        if d == -1 and not C.is_weq(a):
            return False
    return True


def enumerate_zigzags(
    C: RelCategory,
    directions: Sequence[int],
    X: Optional[Obj] = None,
    Y: Optional[Obj] = None,
) -> List[Zigzag]:
    """
    Every zigzag of the given shape, optionally with fixed ends.

    Enumeration walks position by position, pruned by reachability of Y.
    """
    B = C.base
    directions = tuple(directions)
    m = len(directions)
    reach: List[Optional[set]] = [None] * (m + 1)
    if Y is not None:
        reach[m] = {Y}
        for p in range(m - 1, -1, -1):
            level = set()
            for y in reach[p + 1]:
                if directions[p] == 1:
                    level.update(B.dom(a) for a in B.into(y))
                else:
                    level.update(B.cod(a) for a in B.out_of(y) if C.is_weq(a))
            reach[p] = level

    results: List[Zigzag] = []
    starts = [X] if X is not None else list(B.objects)

    def walk(p: int, objs: List[Obj], arrows: List[Mor]) -> None:
        if p == m:
            results.append(Zigzag(directions, tuple(objs), tuple(arrows)))
            return
        here = objs[-1]
        if directions[p] == 1:
            steps = [(a, B.cod(a)) for a in B.out_of(here)]
        else:
            steps = [(a, B.dom(a)) for a in B.into(here) if C.is_weq(a)]
        for a, nxt in steps:
            if reach[p + 1] is not None and nxt not in reach[p + 1]:
                continue
            objs.append(nxt)
            arrows.append(a)
            walk(p + 1, objs, arrows)
            objs.pop()
            arrows.pop()

    for start in starts:
        if reach[0] is None or start in reach[0]:
            walk(0, [start], [])
    return results


def is_ladder(C: RelCategory, z: Zigzag, z2: Zigzag, components: Sequence[Mor]) -> bool:
    """Check that components form a levelwise-weq map of zigzags z -> z2."""
    B = C.base
    if len(components) != len(z.objects) or z.directions != z2.directions:
        return False
    for i, c in enumerate(components):
        if B.ends(c) != (z.objects[i], z2.objects[i]) or not C.is_weq(c):
            return False
    for p, d in enumerate(z.directions):
        a, a2 = z.arrows[p], z2.arrows[p]
        if d == 1:
            if B.compose(components[p + 1], a) != B.compose(a2, components[p]):
                return False
        elif B.compose(components[p], a) != B.compose(a2, components[p + 1]):
            return False
    return True


def _ladders_from(
    C: RelCategory,
    z: Zigzag,
    candidates: Sequence[Zigzag],
    fixed_ends: bool,
) -> Iterator[Tuple[Tuple[Mor, ...], Zigzag]]:
    B = C.base
    m = len(z.arrows)

    def walk(i: int, comps: List[Mor], pool: List[Zigzag]) -> Iterator[Tuple[Tuple[Mor, ...], Zigzag]]:
        if i > m:
            for z2 in pool:
                yield tuple(comps), z2
            return
        here = z.objects[i]
        if fixed_ends and (i == 0 or i == m):
            options = [B.identity(here)]
        else:
            options = [c for c in B.out_of(here) if C.is_weq(c)]
        for c in options:
            there = B.cod(c)
            if i == 0:
                kept = [z2 for z2 in pool if z2.objects[0] == there]
            else:
                p = i - 1
                prev = comps[-1]
                if z.directions[p] == 1:
                    lhs = B.compose(c, z.arrows[p])
                    kept = [
                        z2 for z2 in pool
                        if z2.objects[i] == there and B.compose(z2.arrows[p], prev) == lhs
                    ]
                else:
                    kept = [
                        z2 for z2 in pool
                        if z2.objects[i] == there
                        and B.compose(prev, z.arrows[p]) == B.compose(z2.arrows[p], c)
                    ]
            if kept:
                comps.append(c)
                yield from walk(i + 1, comps, kept)
                comps.pop()

    yield from walk(0, [], list(candidates))


def _ladder_category(
    C: RelCategory,
    zigzags: List[Zigzag],
    fixed_ends: bool,
    name: str,
    cap: Optional[int],
) -> FinCategory:
    B = C.base
    by_ends: Dict[Tuple[Obj, Obj], List[Zigzag]] = {}
    for z in zigzags:
        by_ends.setdefault((z.domain, z.codomain), []).append(z)

    def arrows_from(z: Zigzag) -> Iterator[Tuple[Any, Obj]]:
        pool = by_ends[(z.domain, z.codomain)] if fixed_ends else zigzags
        yield from _ladders_from(C, z, pool, fixed_ends)

    def compose(second: Tuple[Mor, ...], first: Tuple[Mor, ...]) -> Tuple[Mor, ...]:
        return tuple(B.compose(g, f) for g, f in zip(second, first))

    return structured_category(
        zigzags,
        arrows_from,
        lambda z: tuple(B.identity(o) for o in z.objects),
        compose,
        name=name,
        cap=cap,
    )


def zigzag_category(
    C: RelCategory,
    t: ZigzagType,
    X: Obj,
    Y: Obj,
    cap: Optional[int] = None,
) -> FinCategory:
    """
    The category C^t(X, Y) of zigzags of type t from X to Y.

    Objects are Zigzag tuples; morphisms are (z, components, z2) hammocks of
    width one, identity at both ends.

    Raises:
        UnknownObject: If X or Y is not an object of C
        SizeCapExceeded: If the category exceeds the morphism cap
    """
    C.base.require_object(X)
    C.base.require_object(Y)
    zigzags = enumerate_zigzags(C, t.directions(), X, Y)
    logger.debug(f"{len(zigzags)} zigzags of type {t} from {X!r} to {Y!r}")
    return _ladder_category(C, zigzags, True, f"{C.name}^{t}({X},{Y})", cap)


def total_zigzag_category(
    C: RelCategory,
    t: ZigzagType,
    cap: Optional[int] = None,
) -> Tuple[FinCategory, Functor]:
    """
    Zigzags of type t with arbitrary ends, with the endpoint projection to W×W.

    Morphisms are levelwise weak equivalences commuting with the arrows; the
    end components need not be identities.
    """
    zigzags = enumerate_zigzags(C, t.directions())
    K = _ladder_category(C, zigzags, False, f"{C.name}^{t}", cap)
    W = C.weq_category()
    WW, _, _ = product_category(W, W, cap=cap)
    projection = Functor(
        K,
        WW,
        {z: (z.domain, z.codomain) for z in K.objects},
        {
            m: ((m[0].domain, m[0].codomain), (m[1][0], m[1][-1]), (m[2].domain, m[2].codomain))
            for m in K.morphisms
        },
        name="ends",
    )
    return K, projection


def insert_identity(B: FinCategory, z: Zigzag, join: int) -> Zigzag:
    """Duplicate object `join` of z, joined by an identity pointing left."""
    directions = z.directions[:join] + (-1,) + z.directions[join:]
    objs = z.objects[:join + 1] + z.objects[join:]
    arrows = z.arrows[:join] + (B.identity(z.objects[join]),) + z.arrows[join:]
    return Zigzag(directions, objs, arrows)


def insertion_functor(
    C: RelCategory,
    k: int,
    l: int,
    X: Obj,
    Y: Obj,
    cap: Optional[int] = None,
) -> Functor:
    """
    The functor C^[-1;k;l](X,Y) -> C^[-1;k;-1;l](X,Y) inserting an identity.

    The identity is inserted as a leftward arrow at the object joining the k
    block and the l block; components of hammocks are duplicated there.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    B = C.base
    source = zigzag_category(C, ZigzagType.of(-1, k, l), X, Y, cap=cap)
    target_type = ZigzagType.of(-1, k, -1, l)
    target = zigzag_category(C, target_type, X, Y, cap=cap)
    join = k + 1
    omap = {z: insert_identity(B, z, join) for z in source.objects}
    mmap = {
        m: (omap[m[0]], m[1][:join + 1] + m[1][join:], omap[m[2]])
        for m in source.morphisms
    }
    return Functor(source, target, omap, mmap, name=f"ins[k={k},l={l}]")


def induced_functor(
    C: RelCategory,
    a: Mor,
    b: Mor,
    cap: Optional[int] = None,
) -> Functor:
    """
    The functor C^[-1;1](X,Y) -> C^[-1;1](X',Y') induced by weak equivalences.

    Args:
        C: Relative category
        a: Weak equivalence X -> X'
        b: Weak equivalence Y -> Y'

    Raises:
        ValueError: If a or b is not a weak equivalence
    """
    if not (C.is_weq(a) and C.is_weq(b)):
        raise ValueError("induced_functor needs weak equivalences")
    B = C.base
    (X, X2), (Y, Y2) = B.ends(a), B.ends(b)
    t = ZigzagType.of(-1, 1)
    source = zigzag_category(C, t, X, Y, cap=cap)
    target = zigzag_category(C, t, X2, Y2, cap=cap)

    def push(z: Zigzag) -> Zigzag:
        v, f = z.arrows
        return Zigzag(z.directions, (X2, z.objects[1], Y2), (B.compose(a, v), B.compose(b, f)))

    omap = {z: push(z) for z in source.objects}
    mmap = {
        m: (omap[m[0]], (B.identity(X2), m[1][1], B.identity(Y2)), omap[m[2]])
        for m in source.morphisms
    }
    return Functor(source, target, omap, mmap, name=f"induced({a!r},{b!r})")


def _fraction_rows(
    C: RelCategory,
    kmax: int,
    lmax: int,
    dim: int,
    prefix: str,
    cap: Optional[int],
) -> Tuple[List[CheckResult], List[Verdict]]:
    rows: List[CheckResult] = []
    verdicts: List[Verdict] = []
    objects = C.base.objects
    for k in range(kmax + 1):
        for l in range(lmax + 1):
            for i, X in enumerate(objects):
                for j, Y in enumerate(objects):
                    check_id = f"{prefix}/k{k}/l{l}/{i:03d}-{j:03d}"
                    try:
                        F = insertion_functor(C, k, l, X, Y, cap=cap)
                        verdict = weak_equivalence_evidence(F, dim, cap=cap)
                    except FibrantKitError as e:
                        logger.warning(f"{check_id}: {e}")
                        rows.append(CheckResult.error(check_id, RIGHT_FRACTIONS_ANCHOR, e))
                        continue
                    witness = {"X": str(X), "Y": str(Y), "k": k, "l": l, **verdict.witness}
                    if verdict.is_refuted:
                        logger.warning(f"{check_id}: insertion functor refuted for ({X!r}, {Y!r})")
                    verdict = verdict.model_copy(update={"witness": witness})
                    verdicts.append(verdict)
                    rows.append(CheckResult.of_verdict(check_id, RIGHT_FRACTIONS_ANCHOR, verdict))
    return rows, verdicts


def check_right_fractions(
    C: RelCategory,
    kmax: Optional[int] = None,
    lmax: Optional[int] = None,
    dim: Optional[int] = None,
    auxiliary: Optional[bool] = None,
    cap: Optional[int] = None,
) -> Report:
    """
    Run weak-equivalence evidence on every insertion functor up to (kmax, lmax).

    One row per instance (k, l, X, Y), plus an aggregate row: Refuted if any
    instance is Refuted, Certified only if all are Certified, else Consistent.
    Instances that exceed a size cap become error rows. When auxiliary is on
    (default: settings, else on iff two-out-of-three holds), the same sweep
    also runs on the auxiliary relative category W.

    Returns:
        A Report sorted by check id
    """
    settings = get_settings()
    kmax = settings.kmax if kmax is None else kmax
    lmax = settings.lmax if lmax is None else lmax
    dim = settings.dim if dim is None else dim
    if auxiliary is None:
        auxiliary = settings.check_auxiliary
    if auxiliary is None:
        auxiliary = C.satisfies_two_out_of_three()

    rows, verdicts = _fraction_rows(C, kmax, lmax, dim, "right-fractions", cap)
    if auxiliary:
        aux_rows, aux_verdicts = _fraction_rows(C.auxiliary(), kmax, lmax, dim, "right-fractions-aux", cap)
        rows.extend(aux_rows)
        verdicts.extend(aux_verdicts)
    overall = aggregate_verdicts(verdicts)
    rows.append(CheckResult.of_verdict("right-fractions", RIGHT_FRACTIONS_ANCHOR, overall))
    logger.debug(f"Right fractions on {C.name}: {overall.status.value}")
    return Report(suite="right-fractions", fixture=C.name, checks=rows).sorted()
