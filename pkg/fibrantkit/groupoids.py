"""
Finite groupoids and the bounded-groupoid fixture family.

Groupoids are FinCategories whose morphisms are all invertible. The family
used for fixtures starts from the point and B(Z/2) and closes once under
binary products and path groupoids Fun(I, G), up to isomorphism, keeping only
members within the object and morphism bounds. The category of the family has
all functors between members as morphisms; equivalences are the weak
equivalences and isofibrations the fibrations.
"""

import logging
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from fibrantkit.exceptions import ClosureError
from fibrantkit.fincat import (
    FinCategory,
    Functor,
    Mor,
    Obj,
    codiscrete_category,
    compose_functors,
    cyclic_group_category,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    product_category,
    pullback_category,
    structured_category,
    terminal_category,
)

logger = logging.getLogger(__name__)

FunctorKey = Tuple[Tuple[Obj, ...], Tuple[Mor, ...]]


def functor_key(F: Functor) -> FunctorKey:
    """Hashable identity of a functor: its images in source order."""
    return (
        tuple(F.object_map[x] for x in F.source.objects),
        tuple(F.morphism_map[m] for m in F.source.morphisms),
    )


def interval_groupoid() -> FinCategory:
    """The free-standing isomorphism I: objects "0", "1", one morphism each way."""
    return codiscrete_category(["0", "1"], name="I")


def functor_groupoid(A: FinCategory, G: FinCategory, cap: Optional[int] = None) -> FinCategory:
    """
    The category Fun(A, G) of functors and natural transformations.

    Objects are functor keys; a natural transformation is the tuple of its
    components in A's object order.
    """
    functors = {functor_key(F): F for F in enumerate_functors(A, G)}

    def arrows_from(key: FunctorKey) -> Iterator[Tuple[Tuple[Mor, ...], FunctorKey]]:
        F = functors[key]
        for key2, F2 in functors.items():
            choices: List[Tuple[Mor, ...]] = [()]
            for x in A.objects:
                choices = [c + (a,) for c in choices for a in G.hom(F.obj(x), F2.obj(x))]
            for alpha in choices:
                component = dict(zip(A.objects, alpha))
                if all(
                    G.compose(F2.mor(m), component[A.dom(m)]) == G.compose(component[A.cod(m)], F.mor(m))
                    for m in A.morphisms
                ):
                    yield alpha, key2

    return structured_category(
        list(functors),
        arrows_from,
        lambda key: tuple(G.identity(x) for x in key[0]),
        lambda g, f: tuple(G.compose(b, a) for b, a in zip(g, f)),
        name=f"Fun({A.name},{G.name})",
        cap=cap,
    )


class PathGroupoid(NamedTuple):
    """Path(G) = Fun(I, G) with the constant-path section and the two endpoint evaluations."""

    groupoid: FinCategory
    i: Functor
    p0: Functor
    p1: Functor


def path_groupoid(G: FinCategory, cap: Optional[int] = None) -> PathGroupoid:
    """
    Build Fun(I, G) with i: G -> Path(G) and p0, p1: Path(G) -> G.

    Raises:
        ValueError: If G is not a groupoid
    """
    if not G.is_groupoid():
        raise ValueError(f"{G.name} is not a groupoid")
    I = interval_groupoid()
    P = functor_groupoid(I, G, cap=cap)
    P.name = f"Path({G.name})"

    def constant_key(x: Obj) -> FunctorKey:
        ix = G.identity(x)
        return (tuple(x for _ in I.objects), tuple(ix for _ in I.morphisms))

    i_objects = {x: constant_key(x) for x in G.objects}
    i_morphisms = {
        g: (i_objects[G.dom(g)], tuple(g for _ in I.objects), i_objects[G.cod(g)])
        for g in G.morphisms
    }
    i = Functor(G, P, i_objects, i_morphisms, name="i")

    def evaluation(index: int, label: str) -> Functor:
        return Functor(
            P, G,
            {key: key[0][index] for key in P.objects},
            {m: m[1][index] for m in P.morphisms},
            name=label,
        )

    logger.debug(f"{P.name}: {len(P.objects)} objects, {len(P.morphisms)} morphisms")
    return PathGroupoid(P, i, evaluation(0, "p0"), evaluation(1, "p1"))


def is_essentially_surjective(F: Functor) -> bool:
    T = F.target
    image = {F.obj(x) for x in F.source.objects}
    return all(
        any(T.is_isomorphism(m) for y in image for m in T.hom(y, t))
        for t in T.objects
    )


def is_equivalence(F: Functor) -> bool:
    """Fully faithful and essentially surjective."""
    return F.is_fully_faithful() and is_essentially_surjective(F)


def is_isofibration(F: Functor) -> bool:
    """Every isomorphism into F(e) lifts to an isomorphism into e."""
    E, B = F.source, F.target
    for e in E.objects:
        lifted = {F.mor(phi) for phi in E.into(e) if E.is_isomorphism(phi)}
        for g in B.into(F.obj(e)):
            if B.is_isomorphism(g) and g not in lifted:
                return False
    return True


# -- the bounded family -------------------------------------------------------


class GroupoidFamily:
    """
    Iso-deduplicated groupoids with their tabled products and path objects.

    Attributes:
        members: name -> groupoid, in insertion order
        products: (X, Y) -> (name of X×Y, projection to X, projection to Y)
        paths: X -> (name of Path(X), i, p0, p1)
    """

    def __init__(self, objects: int, morphisms: int):
        self.objects = objects
        self.morphisms = morphisms
        self.members: Dict[str, FinCategory] = {}
        self.products: Dict[Tuple[str, str], Tuple[str, Functor, Functor]] = {}
        self.paths: Dict[str, Tuple[str, Functor, Functor, Functor]] = {}

    def fits(self, G: FinCategory) -> bool:
        return len(G.objects) <= self.objects and len(G.morphisms) <= self.morphisms

    def locate(self, G: FinCategory) -> Optional[Tuple[str, Functor]]:
        """Return (name, iso member -> G) for the member isomorphic to G."""
        for name, M in self.members.items():
            iso = find_isomorphism(M, G)
            if iso is not None:
                return name, iso
        return None

    def add(self, name: str, G: FinCategory) -> Tuple[str, Functor]:
        """Add G unless an isomorphic member exists; return (name, iso member -> G)."""
        found = self.locate(G)
        if found is not None:
            return found
        G.name = name
        self.members[name] = G
        logger.debug(f"Family member {name}: {len(G.objects)} objects, {len(G.morphisms)} morphisms")
        return name, identity_functor(G)


def bounded_groupoid_family(objects: int, morphisms: int) -> GroupoidFamily:
    """
    Close {pt, B(Z/2)} once under products and path groupoids within the bounds.

    Args:
        objects: Largest number of objects of a member
        morphisms: Largest number of morphisms of a member

    Raises:
        ClosureError: If B(Z/2)×B(Z/2) or Path(B(Z/2)) does not fit the bounds
    """
    family = GroupoidFamily(objects, morphisms)
    family.add("pt", terminal_category("pt"))
    family.add("BZ2", cyclic_group_category(2, name="BZ2"))
    seeds = list(family.members)

    for x in seeds:
        for y in seeds:
            P, pr1, pr2 = product_category(family.members[x], family.members[y])
            if family.locate(P) is None and not family.fits(P):
                if x == y == "BZ2":
                    raise ClosureError(f"BZ2xBZ2 needs {len(P.morphisms)} morphisms, bound is {morphisms}")
                continue
            name, iso = family.add(f"{x}x{y}", P)
            family.products[(x, y)] = (name, compose_functors(pr1, iso), compose_functors(pr2, iso))
    for x in seeds:
        path = path_groupoid(family.members[x])
        if family.locate(path.groupoid) is None and not family.fits(path.groupoid):
            if x == "BZ2":
                raise ClosureError(
                    f"Path(BZ2) needs {len(path.groupoid.objects)} objects and "
                    f"{len(path.groupoid.morphisms)} morphisms, bounds are {objects} and {morphisms}"
                )
            continue
        name, iso = family.add(f"Path({x})", path.groupoid)
        back = iso.inverse()
        family.paths[x] = (
            name,
            compose_functors(back, path.i),
            compose_functors(path.p0, iso),
            compose_functors(path.p1, iso),
        )

    # Products of later members are tabled only when they land back in the family.
    for x in family.members:
        for y in family.members:
            if (x, y) in family.products:
                continue
            P, pr1, pr2 = product_category(family.members[x], family.members[y])
            found = family.locate(P)
            if found is not None:
                name, iso = found
                family.products[(x, y)] = (name, compose_functors(pr1, iso), compose_functors(pr2, iso))
    logger.info(f"Bounded groupoid family: {list(family.members)}")
    return family


class FamilyCategory(NamedTuple):
    """The category of a groupoid family with string morphism ids."""

    category: FinCategory
    functors: Dict[str, Functor]
    weq: List[str]
    fib: List[str]


def family_category(family: GroupoidFamily) -> FamilyCategory:
    """
    All functors between members, named "X->Y:n" ("id_X" for identities).

    Equivalences become weak equivalences and isofibrations fibrations.
    """
    names = list(family.members)
    functors: Dict[str, Functor] = {}
    ids: Dict[Tuple[str, str, FunctorKey], str] = {}
    ends: Dict[str, Tuple[str, str]] = {}
    identities: Dict[str, str] = {}
    for x in names:
        for y in names:
            A, B = family.members[x], family.members[y]
            counter = 0
            for F in enumerate_functors(A, B):
                key = functor_key(F)
                if x == y and F == identity_functor(A):
                    label = f"id_{x}"
                    identities[x] = label
                else:
                    label = f"{x}->{y}:{counter}"
                    counter += 1
                F.name = label
                functors[label] = F
                ids[(x, y, key)] = label
                ends[label] = (x, y)

    member_of = {id(G): name for name, G in family.members.items()}

    def compose(g: str, f: str) -> str:
        G, F = functors[g], functors[f]
        gf = compose_functors(G, F)
        return ids[(member_of[id(F.source)], member_of[id(G.target)], functor_key(gf))]

    C = FinCategory(names, ends, identities, compose, name="groupoids")
    weq = [m for m, F in functors.items() if is_equivalence(F)]
    fib = [m for m, F in functors.items() if is_isofibration(F)]
    logger.info(f"Groupoid category: {len(names)} objects, {len(ends)} functors, "
                f"{len(weq)} equivalences, {len(fib)} isofibrations")
    return FamilyCategory(C, functors, weq, fib)


def functor_id(fc: FamilyCategory, F: Functor) -> str:
    """The morphism id of a functor between family members."""
    key = functor_key(F)
    for label, G in fc.functors.items():
        if G.source is F.source and G.target is F.target and functor_key(G) == key:
            return label
    raise KeyError(f"{F!r} is not a morphism of the family category")


def groupoid_pullback(F: Functor, G: Functor) -> Tuple[int, int]:
    """Object and morphism counts of the strict pullback of two groupoid functors."""
    Q, _, _ = pullback_category(F, G)
    return len(Q.objects), len(Q.morphisms)
