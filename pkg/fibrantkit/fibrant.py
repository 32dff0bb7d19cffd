"""
Categories of fibrant objects and Cisinski fibration categories.

A CfoStructure is a finite relative category with fibrations, a terminal
object, chosen products and path objects. This module checks the axioms of
both structures, builds cocycle and functional-correspondence categories,
pulls correspondences back, factorizes through mapping path objects, builds
the auxiliary category R of special factorizations, reduces extended zigzags
by iterated pullback, certifies the calculus of cocycles and computes
homotopy-category hom-sets as components of V-cocycle categories.

Every "least" choice (pullback, product, path object) is the least
candidate in order_key order, so every construction is reproducible.
"""

import logging
from typing import Any, Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from fibrantkit.config import get_settings
from fibrantkit.exceptions import (
    FibrantKitError,
    MissingPathObject,
    MissingProduct,
    MissingPullback,
    UnknownId,
)
from fibrantkit.fincat import (
    FinCategory,
    Functor,
    Mor,
    Obj,
    comma_category,
    identity_functor,
    inclusion_functor,
    is_cartesian,
    is_grothendieck_fibration,
    order_key,
    over_category,
    strict_fibre,
    structured_category,
)
from fibrantkit.homotopy import is_homotopy_cofinal
from fibrantkit.models import CheckResult, Report, Verdict, aggregate_verdicts
from fibrantkit.relcat import (
    RelCategory,
    Zigzag,
    ZigzagType,
    insert_identity,
    is_ladder,
    is_zigzag,
    total_zigzag_category,
    zigzag_category,
)

logger = logging.getLogger(__name__)

COCYCLE = ZigzagType.of(-1, 1)
WEAK_ARROW = ZigzagType.of(-1)

CFO_ANCHORS = {
    "A": "weak equivalences contain the isomorphisms and satisfy two-out-of-three",
    "B": "every isomorphism is a fibration and fibrations are closed under composition",
    "C": "pullbacks along fibrations exist and preserve fibrations and trivial fibrations",
    "D": "every object has a path object factoring its diagonal",
    "E": "the unique morphism to the terminal object is a fibration",
    "products": "chosen products satisfy the universal property",
}

CISINSKI_ANCHORS = {
    "D0": "a terminal object exists and fibrant objects are closed under isomorphism",
    "D1": "weak equivalences contain the isomorphisms and satisfy two-out-of-three",
    "D2": "fibrations compose, contain the isomorphisms of fibrant objects and pull back between fibrant objects",
    "D3": "trivial fibrations pull back to trivial fibrations between fibrant objects",
    "D4": "a morphism into a fibrant object factors as a weak equivalence followed by a fibration",
    "fibrant-replacement": "weak equivalences of fibrant objects are homotopy cofinal in all weak equivalences",
}

COCYCLE_ANCHORS = {
    "condition-1": "V is closed under pullback along arbitrary morphisms",
    "condition-2": "every isomorphism is in V",
    "condition-3": "functional correspondences fibre over W×W and the inclusion preserves cartesian morphisms",
    "condition-4": "every functional correspondence is a V-cocycle",
    "condition-5": "functional correspondences are homotopy cofinal in cocycles",
}


def _label(value: Any) -> str:
    return str(value)


# -- limits in a finite category ----------------------------------------------


class Pullback(NamedTuple):
    """A pullback P of f: A -> Z and p: B -> Z; pr1: P -> A, pr2: P -> B."""

    object: Obj
    pr1: Mor
    pr2: Mor


class ChosenProduct(NamedTuple):
    object: Obj
    proj1: Mor
    proj2: Mor


class PathObject(NamedTuple):
    """Path(X) with i: X -> Path(X) and the endpoint maps p0, p1: Path(X) -> X."""

    object: Obj
    i: Mor
    p0: Mor
    p1: Mor


def _universal_cone(
    C: FinCategory,
    cones_at: Callable[[Obj], List[Tuple[Mor, ...]]],
) -> Optional[Tuple[Obj, Tuple[Mor, ...]]]:
    """Least (object, cone) through which every cone factors uniquely."""
    cones = {Q: cones_at(Q) for Q in C.objects}
    for P in sorted(C.objects, key=order_key):
        if any(len(C.hom(Q, P)) != len(cones[Q]) for Q in C.objects):
            continue
        for cone in sorted(cones[P], key=order_key):
            if all(
                len({tuple(C.compose(leg, h) for leg in cone) for h in C.hom(Q, P)}) == len(cones[Q])
                for Q in C.objects
            ):
                return P, cone
    return None


def _factor(C: FinCategory, apex: Obj, legs: Sequence[Mor], targets: Sequence[Mor]) -> Mor:
    """The unique h into apex with legs[i]∘h = targets[i]."""
    Q = C.dom(targets[0])
    for h in C.hom(Q, apex):
        if all(C.compose(leg, h) == t for leg, t in zip(legs, targets)):
            return h
    raise ValueError(f"{[_label(t) for t in targets]} does not factor through {apex!r}")


def find_pullback(C: FinCategory, f: Mor, p: Mor) -> Optional[Pullback]:
    """
    Least pullback of the cospan f: A -> Z <- B: p, by exhaustive search.

    Candidates are prefiltered by |Hom(Q, P)| = number of commuting cones
    from Q, then checked for unique factorization.

    Raises:
        ValueError: If f and p do not share a codomain
    """
    if C.cod(f) != C.cod(p):
        raise ValueError(f"{f!r} and {p!r} do not form a cospan")
    A, B = C.dom(f), C.dom(p)

    def cones_at(Q: Obj) -> List[Tuple[Mor, ...]]:
        return [
            (a, b)
            for a in C.hom(Q, A)
            for b in C.hom(Q, B)
            if C.compose(f, a) == C.compose(p, b)
        ]

    found = _universal_cone(C, cones_at)
    if found is None:
        return None
    P, (a, b) = found
    return Pullback(P, a, b)


def find_product(C: FinCategory, X: Obj, Y: Obj) -> Optional[ChosenProduct]:
    """Least product of X and Y, by exhaustive search."""
    found = _universal_cone(C, lambda Q: [(a, b) for a in C.hom(Q, X) for b in C.hom(Q, Y)])
    if found is None:
        return None
    P, (a, b) = found
    return ChosenProduct(P, a, b)


def is_product(C: FinCategory, X: Obj, Y: Obj, product: ChosenProduct) -> bool:
    """Check the universal property of a chosen product exhaustively."""
    P = product.object
    if C.ends(product.proj1) != (P, X) or C.ends(product.proj2) != (P, Y):
        return False
    for Q in C.objects:
        images = {(C.compose(product.proj1, h), C.compose(product.proj2, h)) for h in C.hom(Q, P)}
        if len(images) != len(C.hom(Q, P)) or len(images) != len(C.hom(Q, X)) * len(C.hom(Q, Y)):
            return False
    return True


# -- structures ---------------------------------------------------------------


class FibrationStructure:
    """Weak equivalences and fibrations on a finite category, with cached pullbacks."""

    def __init__(
        self,
        rel: RelCategory,
        fib: Iterable[Mor],
        terminal: Optional[Obj] = None,
        name: str = "",
    ):
        if rel is None:
            raise ValueError("rel cannot be None")
        self.rel = rel
        self.base = rel.base
        identities = frozenset(self.base.identity(x) for x in self.base.objects)
        self.fib = frozenset(fib) | identities
        unknown = sorted((m for m in self.fib if not self.base.has_morphism(m)), key=order_key)
        if unknown:
            raise UnknownId(f"fibrations name unknown morphisms {unknown}", unknown)
        if terminal is not None:
            self.base.require_object(terminal)
        self.terminal = terminal
        self.name = name or rel.name
        self._pullbacks: Dict[Tuple[Mor, Mor], Optional[Pullback]] = {}

    def is_weq(self, m: Mor) -> bool:
        return self.rel.is_weq(m)

    def is_fib(self, m: Mor) -> bool:
        return m in self.fib

    def is_trivial_fibration(self, m: Mor) -> bool:
        return self.rel.is_weq(m) and m in self.fib

    def terminal_object(self) -> Optional[Obj]:
        """The designated terminal object if it is terminal, else the least one found."""
        C = self.base
        terminals = C.terminal_objects()
        if self.terminal is not None:
            return self.terminal if self.terminal in terminals else None
        return min(terminals, key=order_key) if terminals else None

    def to_terminal(self, X: Obj) -> Optional[Mor]:
        one = self.terminal_object()
        if one is None:
            return None
        return self.base.hom(X, one)[0]

    def find_pullback(self, f: Mor, p: Mor) -> Optional[Pullback]:
        key = (f, p)
        if key not in self._pullbacks:
            self._pullbacks[key] = find_pullback(self.base, f, p)
        return self._pullbacks[key]

    def pullback(self, f: Mor, p: Mor) -> Pullback:
        """
        The chosen pullback of p along f.

        Raises:
            MissingPullback: If the base has no pullback of the cospan
        """
        found = self.find_pullback(f, p)
        if found is None:
            raise MissingPullback(f"no pullback of {p!r} along {f!r} in {self.name}")
        return found

    def pullback_lift(self, f: Mor, p: Mor, a: Mor, b: Mor) -> Mor:
        """The unique map into the chosen pullback of (f, p) with components a and b."""
        pb = self.pullback(f, p)
        if self.base.compose(f, a) != self.base.compose(p, b):
            raise ValueError(f"({a!r}, {b!r}) is not a cone over ({f!r}, {p!r})")
        return _factor(self.base, pb.object, (pb.pr1, pb.pr2), (a, b))


class CfoStructure(FibrationStructure):
    """
    A finite category of fibrant objects.

    Args:
        rel: Relative category of weak equivalences
        fib: Fibrations (identities are added)
        terminal: Designated terminal object
        products: Chosen products {(X, Y): ChosenProduct}; missing pairs are searched
        path_objects: Chosen path objects {X: PathObject}; missing ones are searched
        v_exclude: Trivial fibrations withheld from V (negative controls)
        name: Label for logs and reports
    """

    def __init__(
        self,
        rel: RelCategory,
        fib: Iterable[Mor],
        terminal: Optional[Obj] = None,
        products: Optional[Mapping[Tuple[Obj, Obj], ChosenProduct]] = None,
        path_objects: Optional[Mapping[Obj, PathObject]] = None,
        v_exclude: Iterable[Mor] = (),
        name: str = "",
    ):
        super().__init__(rel, fib, terminal, name)
        self.products: Dict[Tuple[Obj, Obj], ChosenProduct] = {
            k: ChosenProduct(*v) for k, v in (products or {}).items()
        }
        self.path_objects: Dict[Obj, PathObject] = {k: PathObject(*v) for k, v in (path_objects or {}).items()}
        self.v_exclude = frozenset(v_exclude)
        self.V = frozenset(m for m in self.base.morphisms if self.is_trivial_fibration(m) and m not in self.v_exclude)
        self._searched_products: Dict[Tuple[Obj, Obj], Optional[ChosenProduct]] = {}
        self._searched_paths: Dict[Obj, Optional[PathObject]] = {}
        self._cache: Dict[Any, Any] = {}
        logger.debug(f"CfoStructure {self.name}: {len(self.fib)} fibrations, |V| = {len(self.V)}")

    def __repr__(self) -> str:
        return f"CfoStructure({self.name})"

    def product(self, X: Obj, Y: Obj) -> ChosenProduct:
        """
        The chosen product X×Y (table first, then the least one found).

        Raises:
            MissingProduct: If X×Y is neither tabled nor found
        """
        if (X, Y) in self.products:
            return self.products[(X, Y)]
        if (X, Y) not in self._searched_products:
            self._searched_products[(X, Y)] = find_product(self.base, X, Y)
        found = self._searched_products[(X, Y)]
        if found is None:
            raise MissingProduct(f"no product of {X!r} and {Y!r} in {self.name}")
        return found

    def pairing(self, X: Obj, Y: Obj, a: Mor, b: Mor) -> Mor:
        """The map <a, b> into the chosen product X×Y."""
        product = self.product(X, Y)
        return _factor(self.base, product.object, (product.proj1, product.proj2), (a, b))

    def diagonal(self, X: Obj) -> Mor:
        identity = self.base.identity(X)
        return self.pairing(X, X, identity, identity)

    def path_object(self, X: Obj) -> PathObject:
        """
        The chosen path object of X (table first, then the least one found).

        Raises:
            MissingPathObject: If X has none
        """
        if X in self.path_objects:
            return self.path_objects[X]
        if X not in self._searched_paths:
            self._searched_paths[X] = find_path_object(self, X)
        found = self._searched_paths[X]
        if found is None:
            raise MissingPathObject(f"no path object for {X!r} in {self.name}")
        return found

    def cocycle_pairing(self, z: Zigzag) -> Mor:
        """<f, v>: Z -> Y×X for a cocycle X <-v- Z -f-> Y."""
        v, f = z.arrows
        X, _, Y = z.objects
        return self.pairing(Y, X, f, v)

    def is_functional(self, z: Zigzag) -> bool:
        return self.is_fib(self.cocycle_pairing(z))

    def restrict(self, objects: Iterable[Obj]) -> "CfoStructure":
        """The structure induced on the full subcategory spanned by objects."""
        D = self.base.full_subcategory(objects, name=f"{self.name}|D")
        members = set(D.objects)
        keep = set(D.morphisms)
        rel = RelCategory(D, [m for m in self.rel.weq if m in keep], name=D.name)
        products = {
            k: v for k, v in self.products.items()
            if k[0] in members and k[1] in members and v.object in members
        }
        paths = {k: v for k, v in self.path_objects.items() if k in members and v.object in members}
        return CfoStructure(
            rel,
            [m for m in self.fib if m in keep],
            self.terminal if self.terminal in members else None,
            products,
            paths,
            [m for m in self.v_exclude if m in keep],
            name=D.name,
        )


class CisinskiStructure(FibrationStructure):
    """A Cisinski fibration category: only fibrant objects need pullbacks and factorizations."""

    def __repr__(self) -> str:
        return f"CisinskiStructure({self.name})"

    def fibrant_objects(self) -> List[Obj]:
        return fibrant_objects(self)

    def is_fibrant(self, X: Obj) -> bool:
        m = self.to_terminal(X)
        return m is not None and self.is_fib(m)


def fibrant_objects(s: FibrationStructure) -> List[Obj]:
    """Objects whose morphism to the terminal object is a fibration."""
    out = []
    for X in s.base.objects:
        m = s.to_terminal(X)
        if m is not None and s.is_fib(m):
            out.append(X)
    return out


def find_path_object(s: CfoStructure, X: Obj) -> Optional[PathObject]:
    """Least (P, i, p0, p1) with i a weak equivalence, <p0, p1> a fibration and p0∘i = p1∘i = id."""
    C = s.base
    identity = C.identity(X)
    try:
        s.product(X, X)
    except MissingProduct:
        return None
    for P in sorted(C.objects, key=order_key):
        sections = [i for i in C.hom(X, P) if s.is_weq(i)]
        ends = C.hom(P, X)
        for i in sorted(sections, key=order_key):
            for p0 in ends:
                if C.compose(p0, i) != identity:
                    continue
                for p1 in ends:
                    if C.compose(p1, i) == identity and s.is_fib(s.pairing(X, X, p0, p1)):
                        return PathObject(P, i, p0, p1)
    return None


# -- axiom checks -------------------------------------------------------------


def _guarded(check_id: str, anchor: str, check: Callable[[], Optional[Dict[str, Any]]]) -> CheckResult:
    try:
        return CheckResult.exact(check_id, anchor, check())
    except FibrantKitError as e:
        logger.warning(f"{check_id}: {e}")
        return CheckResult.error(check_id, anchor, e)


def _weak_equivalence_problem(s: FibrationStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    for m in C.isomorphisms():
        if not s.is_weq(m):
            return {"isomorphism": _label(m)}
    for g, f in C.composable_pairs():
        flags = (s.is_weq(f), s.is_weq(g), s.is_weq(C.compose(g, f)))
        if sum(flags) == 2:
            return {"two_out_of_three": [_label(g), _label(f)]}
    return None


def _axiom_b(s: CfoStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    for m in C.isomorphisms():
        if not s.is_fib(m):
            return {"isomorphism": _label(m)}
    for g, f in C.composable_pairs():
        if s.is_fib(f) and s.is_fib(g) and not s.is_fib(C.compose(g, f)):
            return {"composite": [_label(g), _label(f)]}
    return None


def _axiom_c(s: CfoStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    for p in C.morphisms:
        if not s.is_fib(p):
            continue
        for f in C.into(C.cod(p)):
            pb = s.find_pullback(f, p)
            if pb is None:
                return {"missing_pullback": [_label(p), _label(f)]}
            if not s.is_fib(pb.pr1):
                return {"not_a_fibration": _label(pb.pr1), "fibration": _label(p), "along": _label(f)}
            if s.is_weq(p) and not s.is_weq(pb.pr1):
                return {"not_a_trivial_fibration": _label(pb.pr1), "fibration": _label(p), "along": _label(f)}
    return None


def _path_object_problem(s: CfoStructure, X: Obj, path: PathObject) -> Optional[Dict[str, Any]]:
    C = s.base
    identity = C.identity(X)
    if C.ends(path.i) != (X, path.object) or C.ends(path.p0) != (path.object, X) or C.ends(path.p1) != (path.object, X):
        return {"object": _label(X), "problem": "path object maps have the wrong ends"}
    if not s.is_weq(path.i):
        return {"object": _label(X), "problem": "i is not a weak equivalence"}
    if C.compose(path.p0, path.i) != identity or C.compose(path.p1, path.i) != identity:
        return {"object": _label(X), "problem": "(p0, p1)∘i is not the diagonal"}
    if not s.is_fib(s.pairing(X, X, path.p0, path.p1)):
        return {"object": _label(X), "problem": "(p0, p1) is not a fibration"}
    return None


def _axiom_d(s: CfoStructure) -> Optional[Dict[str, Any]]:
    for X in s.base.objects:
        try:
            path = s.path_object(X)
        except (MissingPathObject, MissingProduct) as e:
            return {"object": _label(X), "problem": str(e)}
        problem = _path_object_problem(s, X, path)
        if problem is not None:
            return problem
    return None


def _axiom_e(s: FibrationStructure) -> Optional[Dict[str, Any]]:
    one = s.terminal_object()
    if one is None:
        return {"terminal": None}
    for X in s.base.objects:
        m = s.to_terminal(X)
        if not s.is_fib(m):
            return {"object": _label(X), "morphism": _label(m)}
    return None


def _chosen_products(s: CfoStructure) -> Optional[Dict[str, Any]]:
    for (X, Y), product in s.products.items():
        if not is_product(s.base, X, Y, product):
            return {"product": [_label(X), _label(Y)], "object": _label(product.object)}
    return None


def check_cfo_axioms(s: CfoStructure) -> Report:
    """
    Check axioms A-E and the chosen products, each independently.

    Existence clauses (pullbacks, path objects) are verified by exhaustive
    search over the finite base; failures are report content, never raised.
    """
    if s is None:
        raise ValueError("s cannot be None")
    checks = {
        "A": lambda: _weak_equivalence_problem(s),
        "B": lambda: _axiom_b(s),
        "C": lambda: _axiom_c(s),
        "D": lambda: _axiom_d(s),
        "E": lambda: _axiom_e(s),
        "products": lambda: _chosen_products(s),
    }
    rows = [_guarded(f"axiom/{key}", CFO_ANCHORS[key], check) for key, check in checks.items()]
    for row in rows:
        if row.status.is_failure:
            logger.warning(f"{s.name}: {row.id} fails: {row.witness}")
    return Report(suite="cfo-axioms", fixture=s.name, checks=rows).sorted()


def _cisinski_d0(s: CisinskiStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    if s.terminal_object() is None:
        return {"terminal": None}
    fibrant = set(fibrant_objects(s))
    for m in C.isomorphisms():
        X, Y = C.ends(m)
        if X in fibrant and Y not in fibrant:
            return {"isomorphism": _label(m), "fibrant": _label(X), "not_fibrant": _label(Y)}
    return None


def _cisinski_pullbacks(s: CisinskiStructure, trivial: bool) -> Optional[Dict[str, Any]]:
    C = s.base
    fibrant = set(fibrant_objects(s))
    if not trivial:
        for g, f in C.composable_pairs():
            if s.is_fib(f) and s.is_fib(g) and not s.is_fib(C.compose(g, f)):
                return {"composite": [_label(g), _label(f)]}
        for m in C.isomorphisms():
            if C.dom(m) in fibrant and C.cod(m) in fibrant and not s.is_fib(m):
                return {"isomorphism": _label(m)}
    for p in C.morphisms:
        if not s.is_fib(p) or (trivial and not s.is_weq(p)):
            continue
        if C.dom(p) not in fibrant or C.cod(p) not in fibrant:
            continue
        for g in C.into(C.cod(p)):
            if C.dom(g) not in fibrant:
                continue
            pb = s.find_pullback(g, p)
            if pb is None:
                return {"missing_pullback": [_label(p), _label(g)]}
            if not s.is_fib(pb.pr1) or (trivial and not s.is_weq(pb.pr1)):
                return {"pulled_back": _label(pb.pr1), "fibration": _label(p), "along": _label(g)}
    return None


def _cisinski_d4(s: CisinskiStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    fibrant = set(fibrant_objects(s))
    for f in C.morphisms:
        X, Y = C.ends(f)
        if Y not in fibrant:
            continue
        if not any(
            C.compose(p, i) == f
            for i in C.out_of(X) if s.is_weq(i)
            for p in C.hom(C.cod(i), Y) if s.is_fib(p)
        ):
            return {"morphism": _label(f)}
    return None


def fibrant_replacement_verdict(
    s: CisinskiStructure,
    T: Optional[int] = None,
    cap: Optional[int] = None,
) -> Verdict:
    """Homotopy cofinality of W restricted to fibrant objects inside W."""
    W = s.rel.weq_category()
    sub = W.full_subcategory(fibrant_objects(s), name=f"W_f({s.name})")
    return is_homotopy_cofinal(inclusion_functor(sub, W), T=T, cap=cap)


def check_cisinski_axioms(
    s: CisinskiStructure,
    T: Optional[int] = None,
    cap: Optional[int] = None,
    replacement: bool = True,
) -> Report:
    """
    Check D0-D4 individually, plus cofinality of fibrant replacement.

    D4 is searched exhaustively over all factorizations. The replacement
    verdict is skipped when replacement is False.
    """
    if s is None:
        raise ValueError("s cannot be None")
    checks = {
        "D0": lambda: _cisinski_d0(s),
        "D1": lambda: _weak_equivalence_problem(s),
        "D2": lambda: _cisinski_pullbacks(s, trivial=False),
        "D3": lambda: _cisinski_pullbacks(s, trivial=True),
        "D4": lambda: _cisinski_d4(s),
    }
    rows = [_guarded(f"cisinski/{key}", CISINSKI_ANCHORS[key], check) for key, check in checks.items()]
    if not replacement:
        return Report(suite="cisinski-axioms", fixture=s.name, checks=rows).sorted()
    anchor = CISINSKI_ANCHORS["fibrant-replacement"]
    try:
        rows.append(CheckResult.of_verdict("cisinski/fibrant-replacement", anchor,
                                           fibrant_replacement_verdict(s, T=T, cap=cap)))
    except FibrantKitError as e:
        logger.warning(f"cisinski/fibrant-replacement: {e}")
        rows.append(CheckResult.error("cisinski/fibrant-replacement", anchor, e))
    return Report(suite="cisinski-axioms", fixture=s.name, checks=rows).sorted()


def cisinski_from_cfo(s: CfoStructure) -> CisinskiStructure:
    """Reinterpret a category of fibrant objects as a Cisinski fibration category."""
    return CisinskiStructure(s.rel, s.fib, s.terminal_object(), name=s.name)


def slice_structure(s: FibrationStructure, Y: Obj, cap: Optional[int] = None) -> CisinskiStructure:
    """
    The slice C/Y: weak equivalences and fibrations are created by the base.

    The terminal object is id_Y, so the fibrant objects are the fibrations into Y.
    """
    C = s.base
    C.require_object(Y)
    K, _ = over_category(identity_functor(C), Y, cap=cap)
    K.name = f"{s.name}/{Y}"
    rel = RelCategory(K, [m for m in K.morphisms if s.is_weq(m[1])], name=K.name)
    fib = [m for m in K.morphisms if s.is_fib(m[1])]
    return CisinskiStructure(rel, fib, (Y, C.identity(Y)), name=K.name)


# -- cocycles and functional correspondences ----------------------------------


class Cocycle(NamedTuple):
    """X <-v- Z -f-> Y with v a weak equivalence."""

    X: Obj
    Z: Obj
    Y: Obj
    v: Mor
    f: Mor

    @property
    def zigzag(self) -> Zigzag:
        return Zigzag(COCYCLE.directions(), (self.X, self.Z, self.Y), (self.v, self.f))

    @classmethod
    def from_zigzag(cls, z: Zigzag) -> "Cocycle":
        if z.directions != COCYCLE.directions():
            raise ValueError(f"{z!r} is not a cocycle")
        X, Z, Y = z.objects
        v, f = z.arrows
        return cls(X, Z, Y, v, f)


class FunctionalCorrespondence(NamedTuple):
    """A cocycle whose pairing <f, v>: Z -> Y×X is a fibration."""

    cocycle: Cocycle
    pairing: Mor


def _as_cocycle(E: Union[Cocycle, FunctionalCorrespondence, Zigzag]) -> Cocycle:
    if isinstance(E, FunctionalCorrespondence):
        return E.cocycle
    if isinstance(E, Cocycle):
        return E
    return Cocycle.from_zigzag(E)


def cocycle_category(
    s: CfoStructure,
    V: Optional[Iterable[Mor]],
    X: Obj,
    Y: Obj,
    cap: Optional[int] = None,
) -> FinCategory:
    """
    Cocyc_V(X, Y): the full subcategory of C^[-1;1](X, Y) on cocycles with left leg in V.

    Args:
        s: Structure
        V: Left-leg class (None: the structure's V)
        X, Y: End objects

    Raises:
        ValueError: If V contains a morphism that is not a weak equivalence
        SizeCapExceeded: If the cocycle category exceeds the cap
    """
    V = s.V if V is None else frozenset(V)
    if not V <= s.rel.weq:
        raise ValueError("V must consist of weak equivalences")
    K = zigzag_category(s.rel, COCYCLE, X, Y, cap=cap)
    if V >= s.rel.weq:
        return K
    return K.full_subcategory([z for z in K.objects if z.arrows[0] in V], name=f"Cocyc_V({X},{Y})")


def functional_correspondences(
    s: CfoStructure,
    X: Obj,
    Y: Obj,
    cap: Optional[int] = None,
) -> Tuple[FinCategory, Functor]:
    """
    FCorr(X, Y) with its inclusion U into Cocyc(X, Y).

    Raises:
        MissingProduct: If the product Y×X is unavailable
    """
    s.product(Y, X)
    cocycles = cocycle_category(s, s.rel.weq, X, Y, cap=cap)
    F = cocycles.full_subcategory([z for z in cocycles.objects if s.is_functional(z)], name=f"FCorr({X},{Y})")
    logger.debug(f"FCorr({X!r},{Y!r}): {len(F.objects)} of {len(cocycles.objects)} cocycles")
    return F, inclusion_functor(F, cocycles)


class TotalCorrespondences(NamedTuple):
    """FCorr with varying ends, its projection to W×W, and the same for all cocycles."""

    category: FinCategory
    projection: Functor
    zigzags: FinCategory
    zigzag_projection: Functor
    inclusion: Functor


def total_correspondences(s: CfoStructure, cap: Optional[int] = None) -> TotalCorrespondences:
    """Build (once per structure) the total FCorr inside the total cocycle category."""
    key = ("total", cap)
    if key not in s._cache:
        Kz, Pz = total_zigzag_category(s.rel, COCYCLE, cap=cap)
        K = Kz.full_subcategory([z for z in Kz.objects if s.is_functional(z)], name="FCorr")
        P = Functor(K, Pz.target, {z: Pz.obj(z) for z in K.objects}, {m: Pz.mor(m) for m in K.morphisms}, name="ends")
        s._cache[key] = TotalCorrespondences(K, P, Kz, Pz, inclusion_functor(K, Kz))
    return s._cache[key]


class CorrespondencePullback(NamedTuple):
    correspondence: FunctionalCorrespondence
    morphism: Mor
    cartesian_in_correspondences: Optional[bool]
    cartesian_in_cocycles: Optional[bool]


def pullback_correspondence(
    s: CfoStructure,
    E: Union[FunctionalCorrespondence, Cocycle, Zigzag],
    f: Mor,
    g: Mor,
    verify: bool = True,
    cap: Optional[int] = None,
) -> CorrespondencePullback:
    """
    Pull a functional correspondence X ⇸ Y back along weak equivalences f: X' -> X, g: Y' -> Y.

    The new apex is the pullback of <p, v> along g×f. The returned morphism
    (z', (f, h, g), z) is checked cartesian in the total FCorr and the total
    cocycle category when verify is set.

    Raises:
        ValueError: If f or g is not a weak equivalence into the right end,
            or E is not functional
        MissingPullback: If the base lacks the pullback (a corrupt fixture)
    """
    C = s.base
    c = _as_cocycle(E)
    if not (s.is_weq(f) and s.is_weq(g)) or C.cod(f) != c.X or C.cod(g) != c.Y:
        raise ValueError("pullback_correspondence needs weak equivalences into the ends of E")
    pairing = s.pairing(c.Y, c.X, c.f, c.v)
    if not s.is_fib(pairing):
        raise ValueError(f"{c!r} is not a functional correspondence")
    X1, Y1 = C.dom(f), C.dom(g)
    source = s.product(Y1, X1)
    g_times_f = s.pairing(c.Y, c.X, C.compose(g, source.proj1), C.compose(f, source.proj2))
    pb = s.pullback(g_times_f, pairing)
    pulled = Cocycle(X1, pb.object, Y1, C.compose(source.proj2, pb.pr1), C.compose(source.proj1, pb.pr1))
    morphism = (pulled.zigzag, (f, pb.pr2, g), c.zigzag)
    in_fcorr = in_zigzags = None
    if verify:
        total = total_correspondences(s, cap=cap)
        in_fcorr = total.category.has_morphism(morphism) and is_cartesian(total.projection, morphism) is not None
        in_zigzags = total.zigzags.has_morphism(morphism) and is_cartesian(total.zigzag_projection, morphism) is not None
    return CorrespondencePullback(FunctionalCorrespondence(pulled, pb.pr1), morphism, in_fcorr, in_zigzags)


class MappingPathFactorization(NamedTuple):
    """u: X -> E_f and the correspondence X <-v- E_f -p-> Y, with the ladder from (id_X, f)."""

    u: Mor
    correspondence: FunctionalCorrespondence
    source: Cocycle
    ladder: Tuple[Mor, Mor, Mor]


def mapping_path_factorization(s: CfoStructure, f: Mor) -> MappingPathFactorization:
    """
    Factor f: X -> Y through E_f = X ×_Y Path(Y), taken along p0.

    v is the projection to X, p = p1∘(projection to Path(Y)), and u is
    induced by (id_X, i_Y∘f); so v∘u = id_X and p∘u = f.

    Raises:
        MissingPathObject: If Y has no path object
    """
    C = s.base
    X, Y = C.ends(f)
    path = s.path_object(Y)
    pb = s.pullback(f, path.p0)
    v = pb.pr1
    p = C.compose(path.p1, pb.pr2)
    identity = C.identity(X)
    u = s.pullback_lift(f, path.p0, identity, C.compose(path.i, f))
    correspondence = FunctionalCorrespondence(Cocycle(X, pb.object, Y, v, p), s.pairing(Y, X, p, v))
    return MappingPathFactorization(u, correspondence, Cocycle(X, X, Y, identity, f), (identity, u, C.identity(Y)))


# -- the category R ------------------------------------------------------------


class RObject(NamedTuple):
    """A weak equivalence w: X -> Y, a correspondence Y <-v- Z -q-> X, and u with v∘u = w, q∘u = id_X."""

    w: Mor
    correspondence: Zigzag
    u: Mor


def special_factorization(s: CfoStructure, w: Mor) -> RObject:
    """The R object over w from the mapping path factorization of w."""
    if not s.is_weq(w):
        raise ValueError(f"{w!r} is not a weak equivalence")
    mpf = mapping_path_factorization(s, w)
    c = mpf.correspondence.cocycle
    return RObject(w, Zigzag(COCYCLE.directions(), (c.Y, c.Z, c.X), (c.f, c.v)), mpf.u)


def weak_arrow(C: FinCategory, w: Mor) -> Zigzag:
    X, Y = C.ends(w)
    return Zigzag(WEAK_ARROW.directions(), (Y, X), (w,))


def build_R(s: CfoStructure, cap: Optional[int] = None) -> Tuple[FinCategory, Functor]:
    """
    The category R of special factorizations with its projection to weak arrows.

    Objects are RObjects; a morphism is an FCorr morphism (g, h, f) with
    g∘w0 = w1∘f and h∘u0 = u1∘f. The projection sends (w, E, u) to w.

    Raises:
        SizeCapExceeded: If R or the categories it is built from exceed the cap
    """
    key = ("R", cap)
    if key in s._cache:
        return s._cache[key]
    C = s.base
    total = total_correspondences(s, cap=cap)
    K = total.category
    by_ends: Dict[Tuple[Obj, Obj], List[Zigzag]] = {}
    for z in K.objects:
        by_ends.setdefault((z.domain, z.codomain), []).append(z)

    objects: List[RObject] = []
    for w in C.morphisms:
        if not s.is_weq(w):
            continue
        X, Y = C.ends(w)
        identity = C.identity(X)
        for z in by_ends.get((Y, X), []):
            v, q = z.arrows
            for u in C.hom(X, z.objects[1]):
                if s.is_weq(u) and C.compose(v, u) == w and C.compose(q, u) == identity:
                    objects.append(RObject(w, z, u))
    by_zigzag: Dict[Zigzag, List[RObject]] = {}
    for r in objects:
        by_zigzag.setdefault(r.correspondence, []).append(r)

    def arrows_from(r: RObject) -> Iterable[Tuple[Tuple[Mor, ...], RObject]]:
        for m in K.out_of(r.correspondence):
            g, h, f = m[1]
            for r1 in by_zigzag.get(m[2], []):
                if C.compose(g, r.w) == C.compose(r1.w, f) and C.compose(h, r.u) == C.compose(r1.u, f):
                    yield m[1], r1

    R = structured_category(
        objects,
        arrows_from,
        lambda r: tuple(C.identity(o) for o in r.correspondence.objects),
        lambda g, f: tuple(C.compose(b, a) for b, a in zip(g, f)),
        name=f"R({s.name})",
        cap=cap,
    )
    arrows, _ = total_zigzag_category(s.rel, WEAK_ARROW, cap=cap)
    projection = Functor(
        R,
        arrows,
        {r: weak_arrow(C, r.w) for r in R.objects},
        {m: (weak_arrow(C, m[0].w), (m[1][0], m[1][2]), weak_arrow(C, m[2].w)) for m in R.morphisms},
        name="R->W[1]",
    )
    logger.debug(f"R({s.name}): {len(R.objects)} objects, {len(R.morphisms)} morphisms")
    s._cache[key] = (R, projection)
    return R, projection


def R_fibre_comma_isomorphism(s: CfoStructure, w: Mor, cap: Optional[int] = None) -> Functor:
    """
    The explicit isomorphism from the strict fibre of R over w to (w, id_X) ↓ U_{Y,X}.

    (w, E, u) goes to (E, the cocycle map (id_Y, u, id_X) from Y <-w- X -id-> X to E).

    Raises:
        FibrantKitError: If the constructed functor is not an isomorphism
    """
    C = s.base
    R, P = build_R(s, cap=cap)
    X, Y = C.ends(w)
    fibre = strict_fibre(P, weak_arrow(C, w))
    _, U = functional_correspondences(s, Y, X, cap=cap)
    d = Zigzag(COCYCLE.directions(), (Y, X, X), (w, C.identity(X)))
    comma, _ = comma_category(U, d, cap=cap)
    idY, idX = C.identity(Y), C.identity(X)

    def image(r: RObject) -> Tuple[Zigzag, Mor]:
        return r.correspondence, (d, (idY, r.u, idX), r.correspondence)

    omap = {r: image(r) for r in fibre.objects}
    mmap = {
        m: (omap[m[0]], (m[0].correspondence, m[1], m[2].correspondence), omap[m[2]])
        for m in fibre.morphisms
    }
    F = Functor(fibre, comma, omap, mmap, name=f"fibre->comma({w!r})").check()
    if not F.is_isomorphism():
        raise FibrantKitError(f"fibre of R over {w!r} is not isomorphic to the comma category")
    return F


# -- reduction of extended zigzags ---------------------------------------------


class Reduction(NamedTuple):
    """
    Output of reduce_zigzag.

    Ladders are component tuples. For k >= 1, middle_to_inserted and
    middle_to_input connect the middle zigzag to the insertion of the reduced
    zigzag and to the input; for k = 0, inserted_to_input does it directly.
    original and original_to_reduced are set when the inner weak equivalence
    is an identity.
    """

    reduced: Zigzag
    middle: Optional[Zigzag]
    middle_to_inserted: Optional[Tuple[Mor, ...]]
    middle_to_input: Optional[Tuple[Mor, ...]]
    inserted_to_input: Optional[Tuple[Mor, ...]]
    original: Optional[Zigzag]
    original_to_reduced: Optional[Tuple[Mor, ...]]


def _split_type(z: Zigzag) -> int:
    """Index of the inner leftward arrow of a [-1;k;-1;l] zigzag."""
    leftward = [p for p, d in enumerate(z.directions) if d == -1]
    if len(leftward) != 2 or leftward[0] != 0:
        raise ValueError("z must have type [-1;k;-1;l]")
    return leftward[1]


def reduce_zigzag(
    s: CfoStructure,
    z: Zigzag,
    replacement: Optional[RObject] = None,
) -> Reduction:
    """
    Remove the inner weak equivalence of z: C^[-1;k;-1;l](X, Y) -> C^[-1;k;l](X, Y).

    The left leg v_k of the replacement over the inner weak equivalence w is
    pulled back along f_k, ..., f_1; the reduced zigzag runs
    X <- X'_0 -> ... -> X'_{k-1} -> Y_0 -> ... -> Y. For k = 0 the two
    leftward arrows compose and no pullback is taken.

    Args:
        s: Structure
        z: Zigzag of type [-1;k;-1;l]
        replacement: R object over w (default: special_factorization(s, w))

    Raises:
        ValueError: If z has the wrong type, or the replacement is not over w
            or its left leg is not in V
        MissingPullback: If a pullback is missing
    """
    C = s.base
    j = _split_type(z)
    k = j - 1
    o, a, d = z.objects, z.arrows, z.directions
    w, x0 = a[j], a[0]
    original = None
    if C.is_identity(w):
        original = Zigzag(d[:j] + d[j + 1:], o[:j + 1] + o[j + 2:], a[:j] + a[j + 1:])

    if k == 0:
        reduced = Zigzag(d[:1] + d[2:], o[:1] + o[2:], (C.compose(x0, w),) + a[2:])
        ladder = (C.identity(o[0]), w) + tuple(C.identity(x) for x in o[2:])
        back = tuple(C.identity(x) for x in reduced.objects) if original is not None else None
        return Reduction(reduced, None, None, None, ladder, original, back)

    rep = replacement if replacement is not None else special_factorization(s, w)
    if rep.w != w:
        raise ValueError(f"replacement lies over {rep.w!r}, not {w!r}")
    vk, q = rep.correspondence.arrows
    if vk not in s.V:
        raise ValueError(f"replacement left leg {vk!r} is not in V")

    v: List[Mor] = [None] * (k + 1)
    fp: List[Mor] = [None] * (k + 1)
    apex: List[Obj] = [None] * (k + 1)
    v[k], apex[k] = vk, rep.correspondence.objects[1]
    for i in range(k - 1, -1, -1):
        pb = s.pullback(a[i + 1], v[i + 1])
        apex[i], v[i], fp[i + 1] = pb.object, pb.pr1, pb.pr2

    tail_objects, tail_arrows = o[j + 1:], a[j + 1:]
    first = C.compose(x0, v[0])
    reduced = Zigzag(
        d[:j] + d[j + 1:],
        (o[0],) + tuple(apex[:k]) + tail_objects,
        (first,) + tuple(fp[1:k]) + (C.compose(q, fp[k]),) + tail_arrows,
    )
    middle = Zigzag(d, (o[0],) + tuple(apex) + tail_objects, (first,) + tuple(fp[1:]) + (rep.u,) + tail_arrows)
    ids = lambda objs: tuple(C.identity(x) for x in objs)  # noqa: E731
    to_inserted = ids(middle.objects[:k + 1]) + (q,) + ids(tail_objects)
    to_input = (C.identity(o[0]),) + tuple(v) + ids(tail_objects)

    back = None
    if original is not None:
        u: List[Mor] = [None] * (k + 1)
        u[k] = rep.u
        for i in range(k - 1, -1, -1):
            u[i] = s.pullback_lift(a[i + 1], v[i + 1], C.identity(o[i + 1]), C.compose(u[i + 1], a[i + 1]))
        back = (C.identity(o[0]),) + tuple(u[:k]) + ids(tail_objects)
    return Reduction(reduced, middle, to_inserted, to_input, None, original, back)


def verify_reduction(s: CfoStructure, z: Zigzag, reduction: Reduction) -> List[str]:
    """Check every returned ladder arrow by arrow; return the problems found."""
    problems = []
    rel, C = s.rel, s.base
    j = _split_type(z)
    reduced = reduction.reduced
    if not is_zigzag(rel, reduced) or (reduced.domain, reduced.codomain) != (z.domain, z.codomain):
        problems.append("reduced zigzag is not a zigzag with the same ends")
    inserted = insert_identity(C, reduced, j)
    if reduction.middle is not None:
        if not is_zigzag(rel, reduction.middle):
            problems.append("middle zigzag is not a zigzag")
        if not is_ladder(rel, reduction.middle, inserted, reduction.middle_to_inserted):
            problems.append("middle -> inserted is not a ladder")
        if not is_ladder(rel, reduction.middle, z, reduction.middle_to_input):
            problems.append("middle -> input is not a ladder")
    elif not is_ladder(rel, inserted, z, reduction.inserted_to_input):
        problems.append("inserted -> input is not a ladder")
    if reduction.original is not None and not is_ladder(rel, reduction.original, reduced, reduction.original_to_reduced):
        problems.append("original -> reduced is not a ladder")
    return problems


# -- calculus of cocycles -----------------------------------------------------


def _condition_1(s: CfoStructure) -> Optional[Dict[str, Any]]:
    C = s.base
    for v in C.morphisms:
        if v not in s.V:
            continue
        for g in C.into(C.cod(v)):
            pb = s.find_pullback(g, v)
            if pb is None:
                return {"missing_pullback": [_label(v), _label(g)]}
            if pb.pr1 not in s.V:
                return {"pulled_back": _label(pb.pr1), "v": _label(v), "along": _label(g)}
    return None


def _condition_2(s: CfoStructure) -> Optional[Dict[str, Any]]:
    for m in s.base.isomorphisms():
        if m not in s.V:
            return {"isomorphism": _label(m)}
    return None


def _condition_3(s: CfoStructure, cap: Optional[int]) -> Optional[Dict[str, Any]]:
    total = total_correspondences(s, cap=cap)
    result = is_grothendieck_fibration(total.projection)
    if not result:
        g, e = result.counterexample
        return {"no_cartesian_lift": _label(g), "at": _label(e)}
    for m in total.category.morphisms:
        if is_cartesian(total.projection, m) is not None and is_cartesian(total.zigzag_projection, m) is None:
            return {"not_preserved": _label(m)}
    return None


def _condition_4(s: CfoStructure, cap: Optional[int]) -> Optional[Dict[str, Any]]:
    for z in total_correspondences(s, cap=cap).category.objects:
        if z.arrows[0] not in s.V:
            return {"correspondence": _label(z), "left_leg": _label(z.arrows[0])}
    return None


def cofinality_verdict(s: CfoStructure, X: Obj, Y: Obj, T: Optional[int] = None, cap: Optional[int] = None) -> Verdict:
    """is_homotopy_cofinal for FCorr(X, Y) ↪ Cocyc(X, Y)."""
    _, U = functional_correspondences(s, X, Y, cap=cap)
    return is_homotopy_cofinal(U, T=T, cap=cap)


def certify_cocycle_calculus(
    s: CfoStructure,
    T: Optional[int] = None,
    objects: Optional[Iterable[Obj]] = None,
    prefix: str = "cocycle",
    cap: Optional[int] = None,
) -> Report:
    """
    Check the five conditions of a homotopical calculus of cocycles.

    Conditions 1-4 are exact; condition 5 has one verdict row per pair
    (X, Y) plus an aggregate row. When objects is given, the structure is
    first restricted to the full subcategory they span.
    """
    if s is None:
        raise ValueError("s cannot be None")
    T = get_settings().dim if T is None else T
    if objects is not None:
        s = s.restrict(objects)
    rows = [
        _guarded(f"{prefix}/condition-1", COCYCLE_ANCHORS["condition-1"], lambda: _condition_1(s)),
        _guarded(f"{prefix}/condition-2", COCYCLE_ANCHORS["condition-2"], lambda: _condition_2(s)),
        _guarded(f"{prefix}/condition-3", COCYCLE_ANCHORS["condition-3"], lambda: _condition_3(s, cap)),
        _guarded(f"{prefix}/condition-4", COCYCLE_ANCHORS["condition-4"], lambda: _condition_4(s, cap)),
    ]
    anchor = COCYCLE_ANCHORS["condition-5"]
    verdicts = []
    for X in s.base.objects:
        for Y in s.base.objects:
            check_id = f"{prefix}/cofinal/{X},{Y}"
            try:
                verdict = cofinality_verdict(s, X, Y, T=T, cap=cap)
            except FibrantKitError as e:
                logger.warning(f"{check_id}: {e}")
                rows.append(CheckResult.error(check_id, anchor, e))
                continue
            witness = {"X": _label(X), "Y": _label(Y), **verdict.witness}
            verdicts.append(verdict.model_copy(update={"witness": witness}))
            rows.append(CheckResult.of_verdict(check_id, anchor, verdict))
    rows.append(CheckResult.of_verdict(f"{prefix}/condition-5", anchor, aggregate_verdicts(verdicts)))
    return Report(suite="cocycle-calculus", fixture=s.name, checks=rows).sorted()


def is_homotopically_replete(s: FibrationStructure, objects: Iterable[Obj]) -> bool:
    """Every weak equivalence touching the subset has both ends in it."""
    members = set(objects)
    C = s.base
    return all(
        (C.dom(w) in members) == (C.cod(w) in members)
        for w in C.morphisms if s.is_weq(w)
    )


# -- homotopy-category hom-sets ------------------------------------------------


class HomSet(NamedTuple):
    """Components of Cocyc_V(X, Y), each listed in category order."""

    X: Obj
    Y: Obj
    components: Tuple[Tuple[Zigzag, ...], ...]

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def representatives(self) -> List[Zigzag]:
        return [min(component, key=order_key) for component in self.components]

    def index(self, z: Zigzag) -> Optional[int]:
        for n, component in enumerate(self.components):
            if z in component:
                return n
        return None


def homotopy_hom(s: CfoStructure, X: Obj, Y: Obj, cap: Optional[int] = None) -> HomSet:
    """π₀ of the V-cocycle category, with a representative per component."""
    key = ("hom", X, Y, cap)
    if key not in s._cache:
        K = cocycle_category(s, s.V, X, Y, cap=cap)
        s._cache[key] = HomSet(X, Y, tuple(tuple(component) for component in K.components()))
    return s._cache[key]


class HomComposition(NamedTuple):
    """Composition table on components, with every representative pair that disagreed."""

    table: Dict[Tuple[int, int], int]
    conflicts: List[Dict[str, Any]]


def compose_cocycles(s: CfoStructure, first: Zigzag, second: Zigzag) -> Zigzag:
    """X <- Z1 -> Y then Y <- Z2 -> W, composed through the chosen pullback of v2 along f1."""
    C = s.base
    v1, f1 = first.arrows
    v2, f2 = second.arrows
    pb = s.pullback(f1, v2)
    return Zigzag(
        COCYCLE.directions(),
        (first.domain, pb.object, second.codomain),
        (C.compose(v1, pb.pr1), C.compose(f2, pb.pr2)),
    )


def homotopy_hom_composition(
    s: CfoStructure,
    X: Obj,
    Y: Obj,
    W: Obj,
    cap: Optional[int] = None,
) -> HomComposition:
    """
    Compose every pair of representatives and compare the resulting components.

    Raises:
        FibrantKitError: If a composite is not a V-cocycle (V not closed under
            pullback and composition)
    """
    first, second, target = homotopy_hom(s, X, Y, cap), homotopy_hom(s, Y, W, cap), homotopy_hom(s, X, W, cap)
    table: Dict[Tuple[int, int], int] = {}
    conflicts: List[Dict[str, Any]] = []
    for i, left in enumerate(first.components):
        for j, right in enumerate(second.components):
            for z1 in left:
                for z2 in right:
                    composite = compose_cocycles(s, z1, z2)
                    n = target.index(composite)
                    if n is None:
                        raise FibrantKitError(f"composite {composite!r} is not a V-cocycle")
                    if (i, j) not in table:
                        table[(i, j)] = n
                    elif table[(i, j)] != n:
                        conflicts.append({"pair": [i, j], "left": _label(z1), "right": _label(z2)})
    return HomComposition(table, conflicts)
