"""
Finite categories.

Explicit finite categories, functors, comma categories, Grothendieck
fibrations and cartesian lifts, adjoint search, strict pullbacks of categories
and the oplax colimit (Grothendieck construction) of a category-valued diagram.

Object and morphism ids are arbitrary hashable values. Categories built from
fixtures use strings; derived categories use "structured" morphisms, i.e.
(source, data, target) triples, so dom and cod can be read off the id.
"""

import itertools
import logging
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from fibrantkit.config import resolve_cap
from fibrantkit.exceptions import (
    DanglingComposite,
    MissingIdentity,
    NonAssociative,
    NotAFunctor,
    SizeCapExceeded,
    UnknownId,
    UnknownObject,
    ValidationError,
)

logger = logging.getLogger(__name__)

Obj = Hashable
Mor = Hashable


def _guard(count: int, cap: int, construction: str) -> None:
    if count > cap:
        logger.warning(f"{construction}: refused at {count} cells (cap {cap})")
        raise SizeCapExceeded(construction, cap)


def order_key(value: Any) -> str:
    """Deterministic total order used for every "least witness" choice."""
    return repr(value)


class FinCategory:
    """
    An explicit finite category.

    Composition is either a total table {(g, f): g∘f} or a callable computing
    g∘f for composable pairs. Instances are immutable after construction.
    """

    def __init__(
        self,
        objects: Iterable[Obj],
        morphisms: Mapping[Mor, Tuple[Obj, Obj]],
        identities: Mapping[Obj, Mor],
        composition: Union[Mapping[Tuple[Mor, Mor], Mor], Callable[[Mor, Mor], Mor]],
        name: str = "",
    ):
        """
        Initialize a finite category.

        Args:
            objects: Object ids, in presentation order
            morphisms: Map morphism id -> (dom, cod), in presentation order
            identities: Map object id -> identity morphism id
            composition: Table or callable for g∘f
            name: Human-readable label used in logs and reports
        """
        self.name = name
        self._objects: Tuple[Obj, ...] = tuple(objects)
        self._object_set = frozenset(self._objects)
        self._ends: Dict[Mor, Tuple[Obj, Obj]] = dict(morphisms)
        self._morphisms: Tuple[Mor, ...] = tuple(self._ends)
        self._identities: Dict[Obj, Mor] = dict(identities)
        self._identity_set = frozenset(self._identities.values())
        if callable(composition):
            self._table: Optional[Dict[Tuple[Mor, Mor], Mor]] = None
            self._compose_fn = composition
        else:
            self._table = dict(composition)
            self._compose_fn = lambda g, f: self._table[(g, f)]

        self._hom: Dict[Tuple[Obj, Obj], List[Mor]] = {}
        self._out: Dict[Obj, List[Mor]] = {x: [] for x in self._objects}
        self._in: Dict[Obj, List[Mor]] = {x: [] for x in self._objects}
        for m, (a, b) in self._ends.items():
            self._hom.setdefault((a, b), []).append(m)
            if a in self._out:
                self._out[a].append(m)
            if b in self._in:
                self._in[b].append(m)

    # -- basic structure -------------------------------------------------

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self._objects

    @property
    def morphisms(self) -> Tuple[Mor, ...]:
        return self._morphisms

    def __len__(self) -> int:
        return len(self._morphisms)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"FinCategory({label}{len(self._objects)} objects, {len(self._morphisms)} morphisms)"

    def has_object(self, x: Obj) -> bool:
        return x in self._object_set

    def has_morphism(self, m: Mor) -> bool:
        return m in self._ends

    def require_object(self, x: Obj) -> None:
        if x not in self._object_set:
            raise UnknownObject(f"{x!r} is not an object of {self.name or 'the category'}")

    def dom(self, m: Mor) -> Obj:
        return self._ends[m][0]

    def cod(self, m: Mor) -> Obj:
        return self._ends[m][1]

    def ends(self, m: Mor) -> Tuple[Obj, Obj]:
        return self._ends[m]

    def identity(self, x: Obj) -> Mor:
        return self._identities[x]

    @property
    def identities(self) -> Dict[Obj, Mor]:
        return dict(self._identities)

    def is_identity(self, m: Mor) -> bool:
        return m in self._identity_set

    def hom(self, a: Obj, b: Obj) -> List[Mor]:
        return self._hom.get((a, b), [])

    def out_of(self, a: Obj) -> List[Mor]:
        return self._out.get(a, [])

    def into(self, b: Obj) -> List[Mor]:
        return self._in.get(b, [])

    def compose(self, g: Mor, f: Mor) -> Mor:
        """Return g∘f (f first)."""
        if self._ends[f][1] != self._ends[g][0]:
            raise ValueError(f"cannot compose {g!r} after {f!r}: cod/dom mismatch")
        return self._compose_fn(g, f)

    def compose_path(self, *arrows: Mor) -> Mor:
        """Compose arrows given in diagrammatic order (first applied first)."""
        if not arrows:
            raise ValueError("compose_path needs at least one morphism")
        result = arrows[0]
        for arrow in arrows[1:]:
            result = self.compose(arrow, result)
        return result

    def composable_pairs(self) -> Iterator[Tuple[Mor, Mor]]:
        """Yield every (g, f) with cod(f) = dom(g)."""
        for f in self._morphisms:
            for g in self._out[self._ends[f][1]]:
                yield g, f

    def composition_table(self) -> Dict[Tuple[Mor, Mor], Mor]:
        if self._table is not None:
            return dict(self._table)
        return {(g, f): self._compose_fn(g, f) for g, f in self.composable_pairs()}

    # -- derived categories ----------------------------------------------

    def opposite(self) -> "FinCategory":
        base = self
        return FinCategory(
            self._objects,
            {m: (b, a) for m, (a, b) in self._ends.items()},
            self._identities,
            lambda g, f: base._compose_fn(f, g),
            name=f"{self.name}^op",
        )

    def subcategory(
        self,
        objects: Iterable[Obj],
        morphisms: Iterable[Mor],
        name: str = "",
    ) -> "FinCategory":
        """Subcategory on the given cells; closure is the caller's contract."""
        objects = list(objects)
        keep = {m: self._ends[m] for m in morphisms}
        return FinCategory(
            objects,
            keep,
            {x: self._identities[x] for x in objects},
            self._compose_fn,
            name=name or f"sub({self.name})",
        )

    def full_subcategory(self, objects: Iterable[Obj], name: str = "") -> "FinCategory":
        wanted = set(objects)
        chosen = [x for x in self._objects if x in wanted]
        members = set(chosen)
        morphisms = [m for m in self._morphisms if self._ends[m][0] in members and self._ends[m][1] in members]
        return self.subcategory(chosen, morphisms, name=name or f"full({self.name})")

    def relabel(
        self,
        objects: Mapping[Obj, Obj],
        morphisms: Mapping[Mor, Mor],
        name: str = "",
    ) -> "FinCategory":
        """Return an isomorphic copy with ids renamed through the given bijections."""
        back = {new: old for old, new in morphisms.items()}
        base = self
        return FinCategory(
            [objects[x] for x in self._objects],
            {morphisms[m]: (objects[a], objects[b]) for m, (a, b) in self._ends.items()},
            {objects[x]: morphisms[i] for x, i in self._identities.items()},
            lambda g, f: morphisms[base._compose_fn(back[g], back[f])],
            name=name or self.name,
        )

    # -- special objects and morphisms -----------------------------------

    def terminal_objects(self) -> List[Obj]:
        return [t for t in self._objects if all(len(self.hom(x, t)) == 1 for x in self._objects)]

    def initial_objects(self) -> List[Obj]:
        return [i for i in self._objects if all(len(self.hom(i, x)) == 1 for x in self._objects)]

    def inverse(self, m: Mor) -> Optional[Mor]:
        a, b = self._ends[m]
        for n in self.hom(b, a):
            if self.compose(n, m) == self._identities[a] and self.compose(m, n) == self._identities[b]:
                return n
        return None

    def is_isomorphism(self, m: Mor) -> bool:
        return self.inverse(m) is not None

    def isomorphisms(self) -> List[Mor]:
        return [m for m in self._morphisms if self.is_isomorphism(m)]

    def is_groupoid(self) -> bool:
        return all(self.is_isomorphism(m) for m in self._morphisms)

    def components(self) -> List[List[Obj]]:
        """Connected components (of the underlying undirected graph), in object order."""
        parent = {x: x for x in self._objects}

        def find(x: Obj) -> Obj:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self._ends.values():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups: Dict[Obj, List[Obj]] = {}
        for x in self._objects:
            groups.setdefault(find(x), []).append(x)
        return list(groups.values())

    def to_raw(self) -> Dict[str, Any]:
        """Describe the category in the fixture format (string ids only)."""
        return {
            "objects": list(self._objects),
            "morphisms": [{"id": m, "dom": a, "cod": b} for m, (a, b) in self._ends.items()],
            "identities": dict(self._identities),
            "composition": [[g, f, gf] for (g, f), gf in self.composition_table().items()],
        }


def structured_category(
    objects: Iterable[Obj],
    arrows_from: Callable[[Obj], Iterable[Tuple[Any, Obj]]],
    identity: Callable[[Obj], Any],
    compose: Callable[[Any, Any], Any],
    name: str = "",
    cap: Optional[int] = None,
) -> FinCategory:
    """
    Build a category whose morphisms are (source, data, target) triples.

    Args:
        objects: Object ids
        arrows_from: For an object x, yields (data, y) for every morphism x -> y;
            must include the identity data for y = x
        identity: Identity data for an object
        compose: Composite data, compose(data_g, data_f) for g∘f
        name: Label for logs
        cap: Morphism cap (default: active settings)

    Returns:
        The category

    Raises:
        SizeCapExceeded: If more than cap morphisms are produced
    """
    cap = resolve_cap(cap)
    objects = list(objects)
    _guard(len(objects), cap, name or "structured category")
    morphisms: Dict[Mor, Tuple[Obj, Obj]] = {}
    for x in objects:
        for data, y in arrows_from(x):
            morphisms[(x, data, y)] = (x, y)
        _guard(len(morphisms), cap, name or "structured category")
    identities = {x: (x, identity(x), x) for x in objects}

    def composition(g: Mor, f: Mor) -> Mor:
        return (f[0], compose(g[1], f[1]), g[2])

    logger.debug(f"Built {name or 'category'}: {len(objects)} objects, {len(morphisms)} morphisms")
    return FinCategory(objects, morphisms, identities, composition, name=name)


def validate_category(raw: Mapping[str, Any], name: str = "") -> FinCategory:
    """
    Validate a category description and build the category.

    Args:
        raw: Mapping with keys objects, morphisms ({id, dom, cod}), identities
            and composition ([g, f, gf] triples)
        name: Label for the result

    Returns:
        A FinCategory satisfying every category law

    Raises:
        ValueError: If raw is None
        ValidationError: UnknownId, MissingIdentity, DanglingComposite or
            NonAssociative; every violation found is listed in .violations
    """
    if raw is None:
        raise ValueError("raw category description cannot be None")
    try:
        objects = list(raw["objects"])
        records = list(raw["morphisms"])
        identities = dict(raw["identities"])
        triples = list(raw["composition"])
    except KeyError as e:
        raise ValidationError(f"category description is missing key {e}") from e

    violations: List[ValidationError] = []
    object_set = set(objects)
    ends: Dict[Mor, Tuple[Obj, Obj]] = {}
    for record in records:
        mid, a, b = record["id"], record["dom"], record["cod"]
        if mid in ends:
            violations.append(UnknownId(f"morphism {mid!r} declared twice", [mid]))
        missing = [x for x in (a, b) if x not in object_set]
        if missing:
            violations.append(UnknownId(f"morphism {mid!r} references unknown object(s) {missing}", [mid] + missing))
        ends[mid] = (a, b)
    for x, i in identities.items():
        if x not in object_set:
            violations.append(UnknownId(f"identity declared for unknown object {x!r}", [x]))
        if i not in ends:
            violations.append(UnknownId(f"identity of {x!r} is unknown morphism {i!r}", [x, i]))
    table: Dict[Tuple[Mor, Mor], Mor] = {}
    for entry in triples:
        g, f, gf = entry
        unknown = [m for m in (g, f, gf) if m not in ends]
        if unknown:
            violations.append(UnknownId(f"composition entry {entry} uses unknown morphism(s) {unknown}", unknown))
            continue
        if (g, f) in table and table[(g, f)] != gf:
            violations.append(DanglingComposite(f"composite of ({g!r}, {f!r}) given twice", [g, f]))
        table[(g, f)] = gf
    if violations:
        _raise_violations(violations)

    for x in objects:
        i = identities.get(x)
        if i is None:
            violations.append(MissingIdentity(f"object {x!r} has no identity", [x]))
        elif ends[i] != (x, x):
            violations.append(MissingIdentity(f"identity {i!r} of {x!r} is not an endomorphism of {x!r}", [x, i]))

    for (g, f), gf in table.items():
        if ends[f][1] != ends[g][0]:
            violations.append(DanglingComposite(
                f"composition entry ({g!r}, {f!r}) pairs non-composable morphisms", [g, f]
            ))
        elif ends[gf] != (ends[f][0], ends[g][1]):
            violations.append(DanglingComposite(
                f"composite {gf!r} of ({g!r}, {f!r}) has the wrong dom/cod", [g, f, gf]
            ))
    outgoing: Dict[Obj, List[Mor]] = {x: [] for x in objects}
    for m, (a, _) in ends.items():
        outgoing[a].append(m)
    for f, (_, b) in ends.items():
        for g in outgoing[b]:
            if (g, f) not in table:
                violations.append(DanglingComposite(f"composite of ({g!r}, {f!r}) is missing", [g, f]))
    if violations:
        _raise_violations(violations)

    for f, (a, b) in ends.items():
        if table[(identities[b], f)] != f or table[(f, identities[a])] != f:
            violations.append(MissingIdentity(f"identities are not neutral for {f!r}", [f]))
    for f, (_, b) in ends.items():
        for g in outgoing[b]:
            gf = table[(g, f)]
            for h in outgoing[ends[g][1]]:
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    violations.append(NonAssociative(f"(h∘g)∘f != h∘(g∘f) for h={h!r}, g={g!r}, f={f!r}", [h, g, f]))
    if violations:
        _raise_violations(violations)

    logger.debug(f"Validated category {name!r}: {len(objects)} objects, {len(ends)} morphisms")
    return FinCategory(objects, ends, identities, table, name=name)


def _raise_violations(violations: List[ValidationError]) -> None:
    first = violations[0]
    first.violations = list(violations)
    raise first


# -- small constructors ----------------------------------------------------


def terminal_category(name: str = "1") -> FinCategory:
    return FinCategory(["*"], {"id_*": ("*", "*")}, {"*": "id_*"}, {("id_*", "id_*"): "id_*"}, name=name)


def empty_category(name: str = "0") -> FinCategory:
    return FinCategory([], {}, {}, {}, name=name)


def arrow_category(name: str = "[1]") -> FinCategory:
    """The walking arrow 0 -> 1 (morphism "f")."""
    ends = {"id_0": ("0", "0"), "id_1": ("1", "1"), "f": ("0", "1")}
    table = {
        ("id_0", "id_0"): "id_0",
        ("id_1", "id_1"): "id_1",
        ("f", "id_0"): "f",
        ("id_1", "f"): "f",
    }
    return FinCategory(["0", "1"], ends, {"0": "id_0", "1": "id_1"}, table, name=name)


def poset_category(
    elements: Sequence[str],
    leq: Callable[[str, str], bool],
    name: str = "poset",
) -> FinCategory:
    """Poset as a category; the unique morphism x -> y is named "x<=y"."""
    ends = {f"{x}<={y}": (x, y) for x in elements for y in elements if leq(x, y)}
    return FinCategory(
        list(elements),
        ends,
        {x: f"{x}<={x}" for x in elements},
        lambda g, f: f"{ends[f][0]}<={ends[g][1]}",
        name=name,
    )


def group_category(
    elements: Sequence[str],
    multiply: Callable[[str, str], str],
    unit: str,
    name: str = "BG",
) -> FinCategory:
    """One-object groupoid B(G); g∘f is multiply(g, f)."""
    return FinCategory(
        ["*"],
        {g: ("*", "*") for g in elements},
        {"*": unit},
        lambda g, f: multiply(g, f),
        name=name,
    )


def cyclic_group_category(n: int, name: str = "") -> FinCategory:
    elements = [f"g{i}" for i in range(n)]
    return group_category(
        elements,
        lambda g, f: f"g{(int(g[1:]) + int(f[1:])) % n}",
        "g0",
        name=name or f"B(Z/{n})",
    )


def discrete_category(labels: Iterable[Obj], name: str = "discrete") -> FinCategory:
    return structured_category(
        labels, lambda x: [(None, x)], lambda x: None, lambda g, f: None, name=name
    )


def codiscrete_category(labels: Iterable[Obj], name: str = "codiscrete") -> FinCategory:
    labels = list(labels)
    return structured_category(
        labels, lambda x: [(None, y) for y in labels], lambda x: None, lambda g, f: None, name=name
    )


# -- functors ----------------------------------------------------------------


class Functor:
    """A functor between finite categories, given by explicit maps."""

    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        object_map: Mapping[Obj, Obj],
        morphism_map: Mapping[Mor, Mor],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.object_map: Dict[Obj, Obj] = dict(object_map)
        self.morphism_map: Dict[Mor, Mor] = dict(morphism_map)
        self.name = name

    def __repr__(self) -> str:
        return f"Functor({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return self.object_map == other.object_map and self.morphism_map == other.morphism_map

    __hash__ = None  # type: ignore[assignment]

    def obj(self, x: Obj) -> Obj:
        return self.object_map[x]

    def mor(self, m: Mor) -> Mor:
        return self.morphism_map[m]

    def violations(self) -> List[str]:
        """Every way in which the maps fail to form a functor."""
        problems = []
        S, T = self.source, self.target
        for x in S.objects:
            if x not in self.object_map or not T.has_object(self.object_map[x]):
                problems.append(f"object {x!r} has no valid image")
        if problems:
            return problems
        for m in S.morphisms:
            image = self.morphism_map.get(m)
            if image is None or not T.has_morphism(image):
                problems.append(f"morphism {m!r} has no valid image")
                continue
            a, b = S.ends(m)
            if T.ends(image) != (self.object_map[a], self.object_map[b]):
                problems.append(f"image of {m!r} has the wrong dom/cod")
        if problems:
            return problems
        for x in S.objects:
            if self.morphism_map[S.identity(x)] != T.identity(self.object_map[x]):
                problems.append(f"identity of {x!r} is not preserved")
        for g, f in S.composable_pairs():
            if self.morphism_map[S.compose(g, f)] != T.compose(self.morphism_map[g], self.morphism_map[f]):
                problems.append(f"composite of ({g!r}, {f!r}) is not preserved")
                break
        return problems

    def is_functor(self) -> bool:
        return not self.violations()

    def check(self) -> "Functor":
        """
        Verify functoriality exhaustively.

        Returns:
            self

        Raises:
            NotAFunctor: On the first class of failure found
        """
        problems = self.violations()
        if problems:
            raise NotAFunctor(f"{self!r}: {problems[0]}")
        return self

    def opposite(self) -> "Functor":
        return Functor(self.source.opposite(), self.target.opposite(), self.object_map, self.morphism_map,
                       name=f"{self.name}^op")

    def is_isomorphism(self) -> bool:
        return (
            len(set(self.object_map.values())) == len(self.source.objects) == len(self.target.objects)
            and len(set(self.morphism_map.values())) == len(self.source.morphisms) == len(self.target.morphisms)
        )

    def inverse(self) -> "Functor":
        if not self.is_isomorphism():
            raise ValueError(f"{self!r} is not an isomorphism")
        return Functor(
            self.target,
            self.source,
            {v: k for k, v in self.object_map.items()},
            {v: k for k, v in self.morphism_map.items()},
            name=f"{self.name}^-1",
        )

    def is_fully_faithful(self) -> bool:
        S = self.source
        for a in S.objects:
            for b in S.objects:
                images = [self.morphism_map[m] for m in S.hom(a, b)]
                target_hom = self.target.hom(self.object_map[a], self.object_map[b])
                if len(set(images)) != len(images) or len(images) != len(target_hom):
                    return False
        return True


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, name=f"id({C.name})")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """Return G∘F."""
    return Functor(
        F.source,
        G.target,
        {x: G.object_map[F.object_map[x]] for x in F.source.objects},
        {m: G.morphism_map[F.morphism_map[m]] for m in F.source.morphisms},
        name=f"{G.name}∘{F.name}",
    )


def constant_functor(A: FinCategory, B: FinCategory, b: Obj) -> Functor:
    B.require_object(b)
    i = B.identity(b)
    return Functor(A, B, {x: b for x in A.objects}, {m: i for m in A.morphisms}, name=f"const({b!r})")


def inclusion_functor(sub: FinCategory, ambient: FinCategory) -> Functor:
    return Functor(sub, ambient, {x: x for x in sub.objects}, {m: m for m in sub.morphisms},
                   name=f"incl({sub.name})")


def object_functor(C: FinCategory, x: Obj) -> Functor:
    """The functor from the terminal category picking out x."""
    C.require_object(x)
    return Functor(terminal_category(), C, {"*": x}, {"id_*": C.identity(x)}, name=f"pick({x!r})")


def product_category(A: FinCategory, B: FinCategory, cap: Optional[int] = None) -> Tuple[FinCategory, Functor, Functor]:
    """A×B with its two projections."""
    objects = [(a, b) for a in A.objects for b in B.objects]

    def arrows_from(x: Tuple[Obj, Obj]) -> Iterator[Tuple[Any, Obj]]:
        for f in A.out_of(x[0]):
            for g in B.out_of(x[1]):
                yield (f, g), (A.cod(f), B.cod(g))

    P = structured_category(
        objects,
        arrows_from,
        lambda x: (A.identity(x[0]), B.identity(x[1])),
        lambda g, f: (A.compose(g[0], f[0]), B.compose(g[1], f[1])),
        name=f"{A.name}x{B.name}",
        cap=cap,
    )
    p1 = Functor(P, A, {x: x[0] for x in P.objects}, {m: m[1][0] for m in P.morphisms}, name="pr1")
    p2 = Functor(P, B, {x: x[1] for x in P.objects}, {m: m[1][1] for m in P.morphisms}, name="pr2")
    return P, p1, p2


def enumerate_functors(
    A: FinCategory,
    B: FinCategory,
    object_maps: Optional[Iterable[Mapping[Obj, Obj]]] = None,
) -> Iterator[Functor]:
    """
    Enumerate every functor A -> B, deterministically.

    Object maps are tried in product order; morphism images are assigned by
    backtracking, checking each composition constraint as soon as all three
    of its morphisms have images.

    Args:
        A: Source category
        B: Target category
        object_maps: Restrict to these object maps (default: all)

    Yields:
        Functors A -> B
    """
    free = [m for m in A.morphisms if not A.is_identity(m)]
    position = {m: i for i, m in enumerate(free)}
    constraints: List[List[Tuple[Mor, Mor, Mor]]] = [[] for _ in free]
    for g, f in A.composable_pairs():
        gf = A.compose(g, f)
        members = [position[m] for m in (g, f, gf) if m in position]
        if members:
            constraints[max(members)].append((g, f, gf))

    if object_maps is None:
        object_maps = (
            dict(zip(A.objects, images))
            for images in itertools.product(B.objects, repeat=len(A.objects))
        )
    for omap in object_maps:
        assignment: Dict[Mor, Mor] = {A.identity(x): B.identity(omap[x]) for x in A.objects}

        def extend(i: int) -> Iterator[Dict[Mor, Mor]]:
            if i == len(free):
                yield assignment
                return
            m = free[i]
            a, b = A.ends(m)
            for image in B.hom(omap[a], omap[b]):
                assignment[m] = image
                if all(
                    assignment[gf] == B.compose(assignment[g], assignment[f])
                    for g, f, gf in constraints[i]
                ):
                    yield from extend(i + 1)
            assignment.pop(m, None)

        for mmap in extend(0):
            yield Functor(A, B, omap, mmap)


def find_isomorphism(A: FinCategory, B: FinCategory) -> Optional[Functor]:
    """Search for an explicit isomorphism A -> B."""
    if len(A.objects) != len(B.objects) or len(A.morphisms) != len(B.morphisms):
        return None
    bijections = (dict(zip(A.objects, p)) for p in itertools.permutations(B.objects))
    for F in enumerate_functors(A, B, object_maps=bijections):
        if F.is_isomorphism():
            return F
    return None


# -- comma categories --------------------------------------------------------


def comma(F: Functor, G: Functor, cap: Optional[int] = None, name: str = "") -> Tuple[FinCategory, Functor, Functor]:
    """
    The comma category F↓G for F: A -> C and G: B -> C.

    Objects are (a, h, b) with h: F(a) -> G(b); a morphism is a pair
    (alpha, beta) with G(beta)∘h = h'∘F(alpha).
    """
    A, B, C = F.source, G.source, F.target
    objects = [
        (a, h, b)
        for a in A.objects
        for b in B.objects
        for h in C.hom(F.obj(a), G.obj(b))
    ]
    by_ends: Dict[Tuple[Obj, Obj], Dict[Mor, Tuple[Obj, Mor, Obj]]] = {}
    for o in objects:
        by_ends.setdefault((o[0], o[2]), {})[o[1]] = o

    def arrows_from(x: Tuple[Obj, Mor, Obj]) -> Iterator[Tuple[Any, Obj]]:
        a, h, b = x
        for alpha in A.out_of(a):
            for beta in B.out_of(b):
                lhs = C.compose(G.mor(beta), h)
                targets = by_ends.get((A.cod(alpha), B.cod(beta)), {})
                for h2, y in targets.items():
                    if C.compose(h2, F.mor(alpha)) == lhs:
                        yield (alpha, beta), y

    K = structured_category(
        objects,
        arrows_from,
        lambda x: (A.identity(x[0]), B.identity(x[2])),
        lambda g, f: (A.compose(g[0], f[0]), B.compose(g[1], f[1])),
        name=name or f"{F.name}↓{G.name}",
        cap=cap,
    )
    pa = Functor(K, A, {x: x[0] for x in K.objects}, {m: m[1][0] for m in K.morphisms}, name="dom")
    pb = Functor(K, B, {x: x[2] for x in K.objects}, {m: m[1][1] for m in K.morphisms}, name="cod")
    return K, pa, pb


def comma_category(F: Functor, d: Obj, cap: Optional[int] = None) -> Tuple[FinCategory, Functor]:
    """
    The comma category d↓F with its projection to the source of F.

    Objects are (c, u) with u: d -> F(c); morphisms (c, u) -> (c', u') are
    g: c -> c' with F(g)∘u = u'.

    Raises:
        UnknownObject: If d is not an object of F's target
        SizeCapExceeded: If the result exceeds the morphism cap
    """
    A, C = F.source, F.target
    C.require_object(d)
    objects = [(c, u) for c in A.objects for u in C.hom(d, F.obj(c))]

    def arrows_from(x: Tuple[Obj, Mor]) -> Iterator[Tuple[Any, Obj]]:
        c, u = x
        for g in A.out_of(c):
            yield g, (A.cod(g), C.compose(F.mor(g), u))

    K = structured_category(
        objects, arrows_from, lambda x: A.identity(x[0]), A.compose, name=f"{d!r}↓{F.name}", cap=cap
    )
    projection = Functor(K, A, {x: x[0] for x in K.objects}, {m: m[1] for m in K.morphisms}, name="proj")
    return K, projection


def over_category(F: Functor, d: Obj, cap: Optional[int] = None) -> Tuple[FinCategory, Functor]:
    """
    The comma category F↓d with its projection.

    Objects are (c, u) with u: F(c) -> d; morphisms (c, u) -> (c', u') are
    g: c -> c' with u'∘F(g) = u.
    """
    A, C = F.source, F.target
    C.require_object(d)
    objects = [(c, u) for c in A.objects for u in C.hom(F.obj(c), d)]
    index = set(objects)

    def arrows_from(x: Tuple[Obj, Mor]) -> Iterator[Tuple[Any, Obj]]:
        c, u = x
        for g in A.out_of(c):
            c2 = A.cod(g)
            for u2 in C.hom(F.obj(c2), d):
                if (c2, u2) in index and C.compose(u2, F.mor(g)) == u:
                    yield g, (c2, u2)

    K = structured_category(
        objects, arrows_from, lambda x: A.identity(x[0]), A.compose, name=f"{F.name}↓{d!r}", cap=cap
    )
    projection = Functor(K, A, {x: x[0] for x in K.objects}, {m: m[1] for m in K.morphisms}, name="proj")
    return K, projection


# -- Grothendieck fibrations -------------------------------------------------


class CartesianWitness:
    """A cartesian morphism with the unique filler found for every test cone."""

    def __init__(self, morphism: Mor, fillers: Dict[Tuple[Mor, Mor], Mor]):
        self.morphism = morphism
        self.fillers = fillers

    def __repr__(self) -> str:
        return f"CartesianWitness({self.morphism!r}, {len(self.fillers)} cones)"


def is_cartesian(P: Functor, phi: Mor) -> Optional[CartesianWitness]:
    """
    Decide whether phi: e' -> e is cartesian for P, by exhaustive search.

    For every psi: e'' -> e and every h: P(e'') -> P(e') with P(phi)∘h = P(psi)
    there must be exactly one chi: e'' -> e' with P(chi) = h and phi∘chi = psi.

    Returns:
        The witness with all fillers, or None when phi is not cartesian
    """
    E, B = P.source, P.target
    e1, e = E.ends(phi)
    g = P.mor(phi)
    b1 = B.dom(g)
    fillers: Dict[Tuple[Mor, Mor], Mor] = {}
    for psi in E.into(e):
        e2 = E.dom(psi)
        p_psi = P.mor(psi)
        for h in B.hom(P.obj(e2), b1):
            if B.compose(g, h) != p_psi:
                continue
            found = [
                chi for chi in E.hom(e2, e1)
                if P.mor(chi) == h and E.compose(phi, chi) == psi
            ]
            if len(found) != 1:
                return None
            fillers[(psi, h)] = found[0]
    return CartesianWitness(phi, fillers)


class FibrationResult:
    """
    Outcome of is_grothendieck_fibration.

    Truthy iff P is a fibration. lifts maps (g, e) to the chosen cartesian
    lift of g with codomain e; counterexample names the first (g, e) with no
    cartesian lift.
    """

    def __init__(
        self,
        lifts: Dict[Tuple[Mor, Obj], Mor],
        counterexample: Optional[Tuple[Mor, Obj]] = None,
    ):
        self.lifts = lifts
        self.counterexample = counterexample

    @property
    def is_fibration(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.is_fibration

    def __repr__(self) -> str:
        if self.is_fibration:
            return f"FibrationResult(fibration, {len(self.lifts)} lifts)"
        return f"FibrationResult(not a fibration, counterexample={self.counterexample!r})"


def is_grothendieck_fibration(P: Functor) -> FibrationResult:
    """
    Decide whether P is a Grothendieck fibration.

    For every e and every g: b' -> P(e) a cartesian lift with codomain e is
    searched for; the lexicographically least one is recorded.
    """
    E, B = P.source, P.target
    lifts: Dict[Tuple[Mor, Obj], Mor] = {}
    cartesian: Dict[Mor, bool] = {}
    for e in E.objects:
        candidates_by_image: Dict[Mor, List[Mor]] = {}
        for phi in E.into(e):
            candidates_by_image.setdefault(P.mor(phi), []).append(phi)
        for g in B.into(P.obj(e)):
            chosen = None
            for phi in sorted(candidates_by_image.get(g, []), key=order_key):
                if phi not in cartesian:
                    cartesian[phi] = is_cartesian(P, phi) is not None
                if cartesian[phi]:
                    chosen = phi
                    break
            if chosen is None:
                logger.debug(f"No cartesian lift of {g!r} at {e!r}")
                return FibrationResult(lifts, counterexample=(g, e))
            lifts[(g, e)] = chosen
    return FibrationResult(lifts)


def strict_fibre(P: Functor, b: Obj) -> FinCategory:
    """The subcategory of cells over b and id_b."""
    E, B = P.source, P.target
    B.require_object(b)
    idb = B.identity(b)
    objects = [e for e in E.objects if P.obj(e) == b]
    morphisms = [m for m in E.morphisms if P.mor(m) == idb]
    return E.subcategory(objects, morphisms, name=f"{P.name}^-1({b!r})")


# -- adjoints -----------------------------------------------------------------


class Adjunction:
    """An adjunction left ⊣ right with explicit unit and counit components."""

    def __init__(
        self,
        left: Functor,
        right: Functor,
        unit: Dict[Obj, Mor],
        counit: Dict[Obj, Mor],
    ):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit

    def __repr__(self) -> str:
        return f"Adjunction({self.left.name} ⊣ {self.right.name})"

    def triangle_identities_hold(self) -> bool:
        L, R = self.left, self.right
        A, B = L.source, L.target
        for c in A.objects:
            if B.compose(self.counit[L.obj(c)], L.mor(self.unit[c])) != B.identity(L.obj(c)):
                return False
        for d in B.objects:
            if A.compose(R.mor(self.counit[d]), self.unit[R.obj(d)]) != A.identity(R.obj(d)):
                return False
        return True


def find_right_adjoint(F: Functor, cap: Optional[int] = None) -> Optional[Adjunction]:
    """
    Search for a right adjoint of F via terminal objects of F↓d.

    Returns:
        The adjunction F ⊣ G with verified triangle identities, or None
    """
    A, B = F.source, F.target
    object_map: Dict[Obj, Obj] = {}
    counit: Dict[Obj, Mor] = {}
    for d in B.objects:
        K, _ = over_category(F, d, cap=cap)
        terminals = K.terminal_objects()
        if not terminals:
            logger.debug(f"{F!r}: comma over {d!r} has no terminal object")
            return None
        c, u = min(terminals, key=order_key)
        object_map[d] = c
        counit[d] = u

    morphism_map: Dict[Mor, Mor] = {}
    for k in B.morphisms:
        d, d2 = B.ends(k)
        target = B.compose(k, counit[d])
        matches = [
            g for g in A.hom(object_map[d], object_map[d2])
            if B.compose(counit[d2], F.mor(g)) == target
        ]
        if len(matches) != 1:
            return None
        morphism_map[k] = matches[0]
    G = Functor(B, A, object_map, morphism_map, name=f"R({F.name})")
    if not G.is_functor():
        return None

    unit: Dict[Obj, Mor] = {}
    for c in A.objects:
        Fc = F.obj(c)
        matches = [
            g for g in A.hom(c, object_map[Fc])
            if B.compose(counit[Fc], F.mor(g)) == B.identity(Fc)
        ]
        if len(matches) != 1:
            return None
        unit[c] = matches[0]
    adjunction = Adjunction(F, G, unit, counit)
    if not adjunction.triangle_identities_hold():
        return None
    logger.debug(f"Found right adjoint for {F!r}")
    return adjunction


def find_left_adjoint(F: Functor, cap: Optional[int] = None) -> Optional[Adjunction]:
    """Search for a left adjoint of F (dual of find_right_adjoint)."""
    dual = find_right_adjoint(F.opposite(), cap=cap)
    if dual is None:
        return None
    G = dual.right
    L = Functor(F.target, F.source, G.object_map, G.morphism_map, name=f"L({F.name})")
    return Adjunction(L, F, unit=dual.counit, counit=dual.unit)


# -- pullbacks of categories ---------------------------------------------------


def pullback_category(
    F: Functor,
    P: Functor,
    cap: Optional[int] = None,
) -> Tuple[FinCategory, Functor, Functor]:
    """
    Strict pullback of F: B' -> B along P: E -> B.

    Returns:
        (B' ×_B E, projection to B', projection to E)

    Raises:
        ValueError: If F and P do not share a codomain
    """
    if F.target is not P.target:
        raise ValueError("pullback_category needs functors with a common codomain")
    Bp, E = F.source, P.source
    objects = [(b, e) for b in Bp.objects for e in E.objects if F.obj(b) == P.obj(e)]

    def arrows_from(x: Tuple[Obj, Obj]) -> Iterator[Tuple[Any, Obj]]:
        for beta in Bp.out_of(x[0]):
            image = F.mor(beta)
            for eps in E.out_of(x[1]):
                if P.mor(eps) == image:
                    yield (beta, eps), (Bp.cod(beta), E.cod(eps))

    Q = structured_category(
        objects,
        arrows_from,
        lambda x: (Bp.identity(x[0]), E.identity(x[1])),
        lambda g, f: (Bp.compose(g[0], f[0]), E.compose(g[1], f[1])),
        name=f"{Bp.name}x_{F.target.name}{E.name}",
        cap=cap,
    )
    p1 = Functor(Q, Bp, {x: x[0] for x in Q.objects}, {m: m[1][0] for m in Q.morphisms}, name="pb1")
    p2 = Functor(Q, E, {x: x[1] for x in Q.objects}, {m: m[1][1] for m in Q.morphisms}, name="pb2")
    return Q, p1, p2


# -- category-valued diagrams ------------------------------------------------


class CatDiagram:
    """
    A contravariant category-valued diagram X on a finite category C.

    X assigns a category X(c) to each object and a functor
    X(f): X(c) -> X(c') to each f: c' -> c.
    """

    def __init__(
        self,
        base: FinCategory,
        values: Mapping[Obj, FinCategory],
        functors: Mapping[Mor, Functor],
        name: str = "",
    ):
        self.base = base
        self.values = dict(values)
        self.functors = dict(functors)
        self.name = name

    def __repr__(self) -> str:
        return f"CatDiagram({self.name or '?'} on {self.base.name})"

    def value(self, c: Obj) -> FinCategory:
        return self.values[c]

    def functor(self, f: Mor) -> Functor:
        return self.functors[f]

    def is_discrete(self) -> bool:
        return all(
            all(X.is_identity(m) for m in X.morphisms) for X in self.values.values()
        )

    def check(self) -> "CatDiagram":
        """
        Verify contravariant functoriality on the nose.

        Raises:
            NotAFunctor: If an identity or composite is not preserved
        """
        C = self.base
        for f in C.morphisms:
            a, b = C.ends(f)
            Xf = self.functors.get(f)
            if Xf is None or Xf.source is not self.values[b] or Xf.target is not self.values[a]:
                raise NotAFunctor(f"{self!r}: X({f!r}) is missing or has the wrong ends")
        for c in C.objects:
            if self.functors[C.identity(c)] != identity_functor(self.values[c]):
                raise NotAFunctor(f"{self!r}: X(id_{c!r}) is not the identity")
        for g, f in C.composable_pairs():
            expected = compose_functors(self.functors[f], self.functors[g])
            if self.functors[C.compose(g, f)] != expected:
                raise NotAFunctor(f"{self!r}: X({g!r}∘{f!r}) != X({f!r})∘X({g!r})")
        return self


def constant_diagram(C: FinCategory, value: FinCategory) -> CatDiagram:
    ident = identity_functor(value)
    return CatDiagram(C, {c: value for c in C.objects}, {f: ident for f in C.morphisms},
                      name=f"const({value.name})")


def representable_diagram(C: FinCategory, d: Obj) -> CatDiagram:
    """The Set-valued presheaf Hom(-, d), as discrete categories."""
    C.require_object(d)
    values = {c: discrete_category(C.hom(c, d), name=f"Hom({c!r},{d!r})") for c in C.objects}
    functors = {}
    for f in C.morphisms:
        a, b = C.ends(f)
        source, target = values[b], values[a]
        omap = {h: C.compose(h, f) for h in source.objects}
        mmap = {m: target.identity(omap[m[0]]) for m in source.morphisms}
        functors[f] = Functor(source, target, omap, mmap, name=f"-∘{f!r}")
    return CatDiagram(C, values, functors, name=f"y({d!r})")


def coslice_diagram(C: FinCategory, cap: Optional[int] = None) -> CatDiagram:
    """The Cat-valued diagram c ↦ c↓C, acting by precomposition."""
    ident = identity_functor(C)
    values = {c: comma_category(ident, c, cap=cap)[0] for c in C.objects}
    functors = {}
    for f in C.morphisms:
        a, b = C.ends(f)
        source, target = values[b], values[a]
        omap = {x: (x[0], C.compose(x[1], f)) for x in source.objects}
        mmap = {m: (omap[m[0]], m[1], omap[m[2]]) for m in source.morphisms}
        functors[f] = Functor(source, target, omap, mmap, name=f"{f!r}^*")
    return CatDiagram(C, values, functors, name=f"coslice({C.name})")


def oplax_colimit(X: CatDiagram, cap: Optional[int] = None) -> Tuple[FinCategory, Functor]:
    """
    The oplax colimit (Grothendieck construction) of X with its projection.

    Objects are <c, x>; a morphism <c', x'> -> <c, x> is a pair (f, g) with
    f: c' -> c and g: x' -> X(f)(x). Composition:
    (f2, g2)∘(f1, g1) = (f2∘f1, X(f1)(g2)∘g1).

    Raises:
        NotAFunctor: If X is not functorial
        SizeCapExceeded: If the result exceeds the morphism cap
    """
    X.check()
    C = X.base
    objects = [(c, x) for c in C.objects for x in X.value(c).objects]

    def arrows_from(src: Tuple[Obj, Obj]) -> Iterator[Tuple[Any, Obj]]:
        c1, x1 = src
        here = X.value(c1)
        for f in C.out_of(c1):
            c = C.cod(f)
            Xf = X.functor(f)
            for x in X.value(c).objects:
                for g in here.hom(x1, Xf.obj(x)):
                    yield (f, g), (c, x)

    def compose(second: Tuple[Mor, Mor], first: Tuple[Mor, Mor]) -> Tuple[Mor, Mor]:
        f2, g2 = second
        f1, g1 = first
        lower = X.value(C.dom(f1))
        return C.compose(f2, f1), lower.compose(X.functor(f1).mor(g2), g1)

    K = structured_category(
        objects,
        arrows_from,
        lambda src: (C.identity(src[0]), X.value(src[0]).identity(src[1])),
        compose,
        name=f"oplax({X.name})",
        cap=cap,
    )
    projection = Functor(K, C, {o: o[0] for o in K.objects}, {m: m[1][0] for m in K.morphisms}, name="proj")
    return K, projection


def category_of_elements(X: CatDiagram, cap: Optional[int] = None) -> Tuple[FinCategory, Functor]:
    """
    The category of elements of a Set-valued (discrete) diagram.

    Objects (c, x) with x in X(c); morphisms (c', x') -> (c, x) are f: c' -> c
    with X(f)(x) = x'.

    Raises:
        ValueError: If some X(c) is not discrete
    """
    if not X.is_discrete():
        raise ValueError("category_of_elements needs a Set-valued (discrete) diagram")
    X.check()
    C = X.base
    objects = [(c, x) for c in C.objects for x in X.value(c).objects]

    def arrows_from(src: Tuple[Obj, Obj]) -> Iterator[Tuple[Any, Obj]]:
        c1, x1 = src
        for f in C.out_of(c1):
            c = C.cod(f)
            Xf = X.functor(f)
            for x in X.value(c).objects:
                if Xf.obj(x) == x1:
                    yield f, (c, x)

    K = structured_category(objects, arrows_from, lambda o: C.identity(o[0]), C.compose,
                            name=f"el({X.name})", cap=cap)
    projection = Functor(K, C, {o: o[0] for o in K.objects}, {m: m[1] for m in K.morphisms}, name="proj")
    return K, projection


def oplax_to_elements(X: CatDiagram, cap: Optional[int] = None) -> Functor:
    """Canonical comparison oplax(X) -> el(X) for Set-valued X (an isomorphism)."""
    K, _ = oplax_colimit(X, cap=cap)
    E, _ = category_of_elements(X, cap=cap)
    return Functor(
        K,
        E,
        {o: o for o in K.objects},
        {m: (m[0], m[1][0], m[2]) for m in K.morphisms},
        name="oplax->el",
    )
