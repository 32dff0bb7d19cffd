"""
Fixture files and fixture generators.

A fixture is a UTF-8 JSON document with exactly the fields objects,
morphisms, identities, composition, weq, fib, terminal, products,
path_objects and expect. Composition pairs missing from the table are an
error. Fixture.build() turns a fixture into a CfoStructure.
"""

import json
import logging
import random
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, PrivateAttr
from pydantic import ValidationError as SchemaError

from fibrantkit.exceptions import ParseError, UnknownId
from fibrantkit.fibrant import CfoStructure, ChosenProduct, PathObject, check_cfo_axioms
from fibrantkit.fincat import FinCategory, poset_category, validate_category
from fibrantkit.groupoids import (
    bounded_groupoid_family,
    family_category,
    functor_groupoid,
    functor_id,
)
from fibrantkit.relcat import RelCategory

logger = logging.getLogger(__name__)

FIXTURE_SUFFIX = ".fix"
DATA_DIR = Path(__file__).parent / "data"


class MorphismRecord(BaseModel):
    model_config = {"extra": "forbid"}

    id: str
    dom: str
    cod: str


class ProductRecord(BaseModel):
    model_config = {"extra": "forbid"}

    object: str
    proj1: str
    proj2: str


class PathRecord(BaseModel):
    model_config = {"extra": "forbid"}

    object: str
    i: str
    p0: str
    p1: str


class Expectations(BaseModel):
    """
    Metadata a fixture carries about itself.

    Attributes:
        axioms: Axiom letter (A-E, products, D0-D4) -> expected to pass
        failures: Further check ids that are expected to fail
        hom_counts: "X,Y" -> size of the homotopy hom-set (independent oracle)
        v_exclude: Trivial fibrations withheld from V
        kind: Generator kind and parameters
    """

    model_config = {"extra": "forbid"}

    axioms: Dict[str, bool] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)
    hom_counts: Dict[str, int] = Field(default_factory=dict)
    v_exclude: List[str] = Field(default_factory=list)
    kind: Dict[str, Any] = Field(default_factory=dict)

    def expected_failures(self) -> List[str]:
        """Check ids that should fail: declared failing axioms plus the failures list."""
        ids = [_axiom_check_id(letter) for letter, passes in self.axioms.items() if not passes]
        return sorted(set(ids) | set(self.failures))


def _axiom_check_id(letter: str) -> str:
    return f"cisinski/{letter}" if letter.startswith("D") and letter[1:].isdigit() else f"axiom/{letter}"


def pair_key(X: str, Y: str) -> str:
    return f"{X},{Y}"


def split_pair(key: str) -> Tuple[str, str]:
    parts = key.split(",")
    if len(parts) != 2:
        raise UnknownId(f"pair key {key!r} must name exactly two objects", [key])
    return parts[0], parts[1]


class Fixture(BaseModel):
    """A finite category with weak equivalences, fibrations and chosen limits."""

    model_config = {"extra": "forbid"}

    name: str = Field(default="", exclude=True)
    objects: List[str]
    morphisms: List[MorphismRecord]
    identities: Dict[str, str]
    composition: List[Tuple[str, str, str]]
    weq: List[str] = Field(default_factory=list)
    fib: List[str] = Field(default_factory=list)
    terminal: Optional[str] = None
    products: Dict[str, ProductRecord] = Field(default_factory=dict)
    path_objects: Dict[str, PathRecord] = Field(default_factory=dict)
    expect: Expectations = Field(default_factory=Expectations)

    _structure: Optional[CfoStructure] = PrivateAttr(default=None)

    def category_raw(self) -> Dict[str, Any]:
        return {
            "objects": self.objects,
            "morphisms": [record.model_dump() for record in self.morphisms],
            "identities": self.identities,
            "composition": [list(entry) for entry in self.composition],
        }

    def _unresolved(self, C: FinCategory) -> List[UnknownId]:
        problems: List[UnknownId] = []

        def need_morphism(m: str, where: str) -> None:
            if not C.has_morphism(m):
                problems.append(UnknownId(f"{where} names unknown morphism {m!r}", [m]))

        def need_object(x: str, where: str) -> None:
            if not C.has_object(x):
                problems.append(UnknownId(f"{where} names unknown object {x!r}", [x]))

        for field in ("weq", "fib"):
            for m in getattr(self, field):
                need_morphism(m, field)
        for m in self.expect.v_exclude:
            need_morphism(m, "expect.v_exclude")
        if self.terminal is not None:
            need_object(self.terminal, "terminal")
        for key, record in self.products.items():
            try:
                X, Y = split_pair(key)
            except UnknownId as e:
                problems.append(e)
                continue
            for x in (X, Y, record.object):
                need_object(x, f"products[{key}]")
            for m in (record.proj1, record.proj2):
                need_morphism(m, f"products[{key}]")
        for key, record in self.path_objects.items():
            for x in (key, record.object):
                need_object(x, f"path_objects[{key}]")
            for m in (record.i, record.p0, record.p1):
                need_morphism(m, f"path_objects[{key}]")
        return problems

    def build(self) -> CfoStructure:
        """
        Validate the fixture and build its structure (once).

        Returns:
            The CfoStructure described by the fixture

        Raises:
            ValidationError: UnknownId, MissingIdentity, DanglingComposite,
                NonAssociative or NotARelativeCategory
        """
        if self._structure is not None:
            return self._structure
        C = validate_category(self.category_raw(), name=self.name)
        problems = self._unresolved(C)
        if problems:
            first = problems[0]
            first.violations = list(problems)
            raise first
        rel = RelCategory(C, self.weq, name=self.name)
        products = {
            split_pair(key): ChosenProduct(r.object, r.proj1, r.proj2) for key, r in self.products.items()
        }
        paths = {key: PathObject(r.object, r.i, r.p0, r.p1) for key, r in self.path_objects.items()}
        self._structure = CfoStructure(
            rel, self.fib, self.terminal, products, paths, self.expect.v_exclude, name=self.name
        )
        logger.debug(f"Built fixture {self.name!r}: {len(C.objects)} objects, {len(C.morphisms)} morphisms")
        return self._structure

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, two-space indent, trailing newline."""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_fixture(path: Union[str, Path]) -> Fixture:
    """
    Load and validate a fixture file.

    Args:
        path: Fixture file

    Returns:
        A validated fixture whose ids all resolve

    Raises:
        ParseError: If the file is empty, not JSON, or not in the fixture schema
        ValidationError: If the category or the id references are invalid
    """
    if path is None:
        raise ValueError("path cannot be None")
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise ParseError(f"{path.name} is empty", 1, 1)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path.name}: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise ParseError(f"{path.name}: a fixture must be a JSON object", 1, 1)
    try:
        fixture = Fixture.model_validate({**data, "name": data.get("name", path.stem)})
    except SchemaError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{path.name}: {location}: {first['msg']}", 1, 1) from e
    fixture.build()
    logger.info(f"Loaded fixture {fixture.name} from {path}")
    return fixture


def dump_fixture(fixture: Fixture, path: Union[str, Path]) -> Path:
    """Write fixture as canonical JSON and return the path written."""
    path = Path(path)
    path.write_text(fixture.to_json(), encoding="utf-8")
    logger.info(f"Wrote fixture {fixture.name} to {path}")
    return path


def shipped_fixture(name: str) -> Path:
    """Path of a fixture shipped in the package data directory."""
    path = DATA_DIR / f"{name}{FIXTURE_SUFFIX}"
    if not path.exists():
        raise FileNotFoundError(f"no shipped fixture named {name!r}")
    return path


# -- generators ---------------------------------------------------------------


def _fixture_from_category(
    C: FinCategory,
    weq: List[str],
    fib: List[str],
    terminal: Optional[str],
    products: Dict[str, ProductRecord],
    path_objects: Dict[str, PathRecord],
    expect: Expectations,
    name: str,
    record_missing: bool = False,
) -> Fixture:
    """
    Assemble a fixture and run the axiom checker on it.

    The expectations passed in are the family's declared outcomes. Only when
    record_missing is set (closure families) are the observed axiom failures
    added to them; otherwise a failing axiom is logged and left undeclared so
    the suite reports it.
    """
    raw = C.to_raw()
    fixture = Fixture(
        name=name,
        objects=raw["objects"],
        morphisms=raw["morphisms"],
        identities=raw["identities"],
        composition=[tuple(entry) for entry in raw["composition"]],
        weq=sorted(weq),
        fib=sorted(fib),
        terminal=terminal,
        products=products,
        path_objects=path_objects,
        expect=expect,
    )
    report = check_cfo_axioms(fixture.build())
    failing = [row.id.split("/", 1)[1] for row in report.checks if row.status.is_failure]
    if not failing:
        return fixture
    if record_missing:
        logger.info(f"Closure of {name} is missing axioms {failing}")
        fixture.expect.axioms.update({letter: False for letter in failing})
    else:
        logger.warning(f"Generated fixture {name} fails axioms {failing}")
    return fixture


def semilattice_order(n: int, shape: str = "random", seed: int = 0) -> Tuple[List[str], Callable[[str, str], bool]]:
    """
    Elements "0".."n-1" ordered as a tree rooted at "0" plus the top "n-1".

    The meet of two elements is their lowest common ancestor, so the order is
    a lattice. shape "chain" gives the total order 0 < 1 < ... < n-1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if shape not in ("random", "chain"):
        raise ValueError(f"unknown shape {shape!r}; expected 'random' or 'chain'")
    rng = random.Random(seed)
    parent: Dict[int, Optional[int]] = {0: None}
    for i in range(1, n - 1):
        parent[i] = i - 1 if shape == "chain" else rng.randrange(i)
    top = n - 1

    def ancestors(i: int) -> set:
        out = set()
        node: Optional[int] = i
        while node is not None:
            out.add(node)
            node = parent.get(node)
        return out

    down = {i: ancestors(i) for i in range(n - 1)}
    down[top] = set(range(n))
    elements = [str(i) for i in range(n)]
    return elements, lambda x, y: int(x) in down[int(y)]


def _lattice_fixture(n: int, shape: str, seed: int, isos_only: bool, kind: str) -> Fixture:
    elements, leq = semilattice_order(n, shape, seed)
    C = poset_category(elements, leq, name=f"{kind}-{n}-{shape}-{seed}")

    def meet(x: str, y: str) -> str:
        lower = [z for z in elements if leq(z, x) and leq(z, y)]
        return max(lower, key=lambda z: sum(leq(w, z) for w in elements))

    products = {}
    for x in elements:
        for y in elements:
            m = meet(x, y)
            products[pair_key(x, y)] = ProductRecord(object=m, proj1=f"{m}<={x}", proj2=f"{m}<={y}")
    path_objects = {x: PathRecord(object=x, i=f"{x}<={x}", p0=f"{x}<={x}", p1=f"{x}<={x}") for x in elements}
    weq = [C.identity(x) for x in elements] if isos_only else list(C.morphisms)
    hom_counts = {
        pair_key(x, y): (len(C.hom(x, y)) if isos_only else 1) for x in elements for y in elements
    }
    expect = Expectations(hom_counts=hom_counts, kind={"kind": kind, "n": n, "shape": shape, "seed": seed})
    return _fixture_from_category(C, weq, list(C.morphisms), elements[-1], products, path_objects, expect, C.name)


def semilattice_fixture(n: int, shape: str = "random", seed: int = 0) -> Fixture:
    """Meet-semilattice with top; every morphism is a weak equivalence and a fibration."""
    return _lattice_fixture(n, shape, seed, isos_only=False, kind="semilattice")


def lattice_isos_fixture(n: int, shape: str = "random", seed: int = 0) -> Fixture:
    """The same lattice with the isomorphisms (identities) as weak equivalences."""
    return _lattice_fixture(n, shape, seed, isos_only=True, kind="lattice_isos")


def bounded_groupoids_fixture(k: int = 2, B: int = 16) -> Fixture:
    """
    Groupoids closed once under products and path objects within k objects and B morphisms.

    Weak equivalences are the equivalences and fibrations the isofibrations.
    Hom-count oracles are the numbers of isomorphism classes of functors
    between the seed groupoids.

    Raises:
        ClosureError: If B(Z/2)×B(Z/2) or Path(B(Z/2)) exceeds the bounds
    """
    family = bounded_groupoid_family(k, B)
    fc = family_category(family)
    products = {}
    for (x, y), (name, pr1, pr2) in family.products.items():
        products[pair_key(x, y)] = ProductRecord(object=name, proj1=functor_id(fc, pr1), proj2=functor_id(fc, pr2))
    path_objects = {}
    for x, (name, i, p0, p1) in family.paths.items():
        path_objects[x] = PathRecord(
            object=name, i=functor_id(fc, i), p0=functor_id(fc, p0), p1=functor_id(fc, p1)
        )
    seeds = ["pt", "BZ2"]
    hom_counts = {
        pair_key(x, y): len(functor_groupoid(family.members[x], family.members[y]).components())
        for x in seeds for y in seeds
    }
    expect = Expectations(hom_counts=hom_counts, kind={"kind": "bounded_groupoids", "k": k, "B": B})
    name = f"bounded_groupoids-{k}-{B}"
    return _fixture_from_category(
        fc.category, fc.weq, fc.fib, "pt", products, path_objects, expect, name, record_missing=True
    )


GENERATORS: Dict[str, Callable[..., Fixture]] = {
    "semilattice": semilattice_fixture,
    "lattice_isos": lattice_isos_fixture,
    "bounded_groupoids": bounded_groupoids_fixture,
}


def generate_fixture(kind: str, **params: Any) -> Fixture:
    """
    Generate a fixture of the given kind.

    Args:
        kind: semilattice (n, shape, seed), lattice_isos (n, shape, seed)
            or bounded_groupoids (k, B)
        **params: Generator parameters

    Raises:
        ValueError: If kind or a parameter is unknown
        ClosureError: If a bounded-groupoid family does not close
    """
    if kind not in GENERATORS:
        raise ValueError(f"unknown fixture kind {kind!r}; expected one of {sorted(GENERATORS)}")
    try:
        fixture = GENERATORS[kind](**params)
    except TypeError as e:
        raise ValueError(f"bad parameters for {kind}: {e}") from e
    logger.info(f"Generated fixture {fixture.name}")
    return fixture
