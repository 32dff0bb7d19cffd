"""
Truncated simplicial sets.

Simplicial sets are stored up to a truncation dimension T with every simplex
(degenerate ones included) and total face and degeneracy tables, so the
simplicial identities can be checked exhaustively. Nerves of finite
categories, the Bousfield-Kan homotopy colimit (diagonal of the bar
construction) and the Thomason comparison map are built here.
"""

import logging
from typing import Any, Callable, Dict, Hashable, List, Mapping, Optional

from fibrantkit.config import get_settings, resolve_cap
from fibrantkit.exceptions import FibrantKitError, NotAFunctor, SizeCapExceeded
from fibrantkit.fincat import CatDiagram, FinCategory, Functor, Mor, Obj, oplax_colimit, oplax_to_elements

logger = logging.getLogger(__name__)

Simplex = Hashable


class SimplicialSet:
    """
    A simplicial set truncated at dimension T.

    Attributes:
        dim: Truncation dimension T (levels 0..T are stored)
        levels: levels[n] lists the n-simplices, in a deterministic order
        faces: faces[n][i] maps an n-simplex to d_i of it (n >= 1)
        degeneracies: degeneracies[n][i] maps an n-simplex to s_i of it (n < T)
    """

    def __init__(
        self,
        dim: int,
        levels: List[List[Simplex]],
        faces: List[List[Dict[Simplex, Simplex]]],
        degeneracies: List[List[Dict[Simplex, Simplex]]],
        name: str = "",
    ):
        if dim < 0:
            raise ValueError("truncation dimension must be non-negative")
        self.dim = dim
        self.levels = levels
        self.faces = faces
        self.degeneracies = degeneracies
        self.name = name
        self._nondegenerate: Dict[int, List[Simplex]] = {}

    @classmethod
    def from_operators(
        cls,
        dim: int,
        levels: List[List[Simplex]],
        face: Callable[[int, int, Simplex], Simplex],
        degeneracy: Callable[[int, int, Simplex], Simplex],
        name: str = "",
    ) -> "SimplicialSet":
        """Tabulate face and degeneracy operators given as functions (n, i, x)."""
        faces: List[List[Dict[Simplex, Simplex]]] = [[]]
        for n in range(1, dim + 1):
            faces.append([{x: face(n, i, x) for x in levels[n]} for i in range(n + 1)])
        degeneracies = [
            [{x: degeneracy(n, i, x) for x in levels[n]} for i in range(n + 1)]
            for n in range(dim)
        ]
        return cls(dim, levels, faces, degeneracies, name=name)

    def __repr__(self) -> str:
        sizes = ", ".join(str(len(level)) for level in self.levels)
        return f"SimplicialSet({self.name or '?'}, T={self.dim}, sizes=[{sizes}])"

    def face(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.degeneracies[n][i][x]

    def vertices(self, n: int, x: Simplex) -> List[Simplex]:
        """The n + 1 vertices of an n-simplex, in order."""
        if n == 0:
            return [x]
        out = []
        for k in range(n + 1):
            y, m = x, n
            # drop every vertex but k: faces d_n .. d_{k+1}, then d_0 k times
            for _ in range(n - k):
                y = self.faces[m][m][y]
                m -= 1
            for _ in range(k):
                y = self.faces[m][0][y]
                m -= 1
            out.append(y)
        return out

    def nondegenerate(self, n: int) -> List[Simplex]:
        """n-simplices not in the image of any degeneracy."""
        if n not in self._nondegenerate:
            if n == 0:
                self._nondegenerate[n] = list(self.levels[0])
            else:
                images = set()
                for table in self.degeneracies[n - 1]:
                    images.update(table.values())
                self._nondegenerate[n] = [x for x in self.levels[n] if x not in images]
        return self._nondegenerate[n]

    def violations(self) -> List[str]:
        """Every failed simplicial identity on the stored levels."""
        problems: List[str] = []
        T = self.dim
        for n in range(1, T + 1):
            for i in range(n + 1):
                if set(self.faces[n][i]) != set(self.levels[n]):
                    problems.append(f"d_{i} is not total on level {n}")
        for n in range(T):
            for i in range(n + 1):
                if set(self.degeneracies[n][i]) != set(self.levels[n]):
                    problems.append(f"s_{i} is not total on level {n}")
        if problems:
            return problems
        for n in range(2, T + 1):
            for x in self.levels[n]:
                for j in range(1, n + 1):
                    for i in range(j):
                        lhs = self.faces[n - 1][i][self.faces[n][j][x]]
                        rhs = self.faces[n - 1][j - 1][self.faces[n][i][x]]
                        if lhs != rhs:
                            problems.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on {x!r}")
        for n in range(T):
            for x in self.levels[n]:
                for j in range(n + 1):
                    sx = self.degeneracies[n][j][x]
                    for i in range(n + 2):
                        dsx = self.faces[n + 1][i][sx]
                        if i in (j, j + 1):
                            expected = x
                        elif i < j:
                            expected = self.degeneracies[n - 1][j - 1][self.faces[n][i][x]]
                        else:
                            expected = self.degeneracies[n - 1][j][self.faces[n][i - 1][x]]
                        if dsx != expected:
                            problems.append(f"d_{i} s_{j} identity fails on {x!r}")
        for n in range(T - 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j + 1):
                        lhs = self.degeneracies[n + 1][i][self.degeneracies[n][j][x]]
                        rhs = self.degeneracies[n + 1][j + 1][self.degeneracies[n][i][x]]
                        if lhs != rhs:
                            problems.append(f"s_{i} s_{j} != s_{j + 1} s_{i} on {x!r}")
        return problems

    def check(self) -> "SimplicialSet":
        """
        Verify every simplicial identity exhaustively.

        Raises:
            FibrantKitError: On the first failed identity
        """
        problems = self.violations()
        if problems:
            raise FibrantKitError(f"{self!r}: {problems[0]}")
        return self


def _guard_level(size: int, cap: int, name: str) -> None:
    if size > cap:
        logger.warning(f"{name}: level of {size} simplices refused (cap {cap})")
        raise SizeCapExceeded(name, cap)


class SimplicialMap:
    """A levelwise map f_0..f_T between simplicial sets truncated at the same T."""

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        maps: List[Dict[Simplex, Simplex]],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.maps = maps
        self.name = name

    def __repr__(self) -> str:
        return f"SimplicialMap({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def __call__(self, n: int, x: Simplex) -> Simplex:
        return self.maps[n][x]

    def violations(self) -> List[str]:
        S, T = self.source, self.target
        problems = []
        for n in range(S.dim + 1):
            if set(self.maps[n]) != set(S.levels[n]):
                problems.append(f"level {n} map is not total")
        if problems:
            return problems
        for n in range(1, S.dim + 1):
            for i in range(n + 1):
                for x in S.levels[n]:
                    if self.maps[n - 1][S.faces[n][i][x]] != T.faces[n][i][self.maps[n][x]]:
                        problems.append(f"does not commute with d_{i} at level {n}")
                        break
        for n in range(S.dim):
            for i in range(n + 1):
                for x in S.levels[n]:
                    if self.maps[n + 1][S.degeneracies[n][i][x]] != T.degeneracies[n][i][self.maps[n][x]]:
                        problems.append(f"does not commute with s_{i} at level {n}")
                        break
        return problems

    def check(self) -> "SimplicialMap":
        """
        Verify that the map commutes with all stored operators.

        Raises:
            FibrantKitError: On the first failure
        """
        problems = self.violations()
        if problems:
            raise FibrantKitError(f"{self!r}: {problems[0]}")
        return self

    def is_isomorphism(self) -> bool:
        return all(
            len(set(self.maps[n].values())) == len(self.source.levels[n]) == len(self.target.levels[n])
            for n in range(self.source.dim + 1)
        )


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """Return g∘f."""
    maps = [{x: g.maps[n][y] for x, y in f.maps[n].items()} for n in range(f.source.dim + 1)]
    return SimplicialMap(f.source, g.target, maps, name=f"{g.name}∘{f.name}")


def identity_map(S: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(S, S, [{x: x for x in level} for level in S.levels], name="id")


# -- nerves -----------------------------------------------------------------


def _chain_objects(C: FinCategory, chain: Any) -> List[Obj]:
    """Objects c_0..c_n of a non-empty chain of morphisms."""
    return [C.dom(chain[0])] + [C.cod(f) for f in chain]


def nerve_face(C: FinCategory, n: int, i: int, chain: Any) -> Any:
    """d_i of an n-chain (a tuple of n composable morphisms, or an object for n = 0)."""
    if n == 1:
        return C.cod(chain[0]) if i == 0 else C.dom(chain[0])
    if i == 0:
        return chain[1:]
    if i == n:
        return chain[:-1]
    return chain[:i - 1] + (C.compose(chain[i], chain[i - 1]),) + chain[i + 1:]


def nerve_degeneracy(C: FinCategory, n: int, i: int, chain: Any) -> Any:
    """s_i of an n-chain: insert the identity at the i-th object."""
    if n == 0:
        return (C.identity(chain),)
    objs = _chain_objects(C, chain)
    return chain[:i] + (C.identity(objs[i]),) + chain[i:]


def nerve_levels(C: FinCategory, T: int, cap: Optional[int] = None) -> List[List[Any]]:
    cap = resolve_cap(cap, kind="simplex")
    levels: List[List[Any]] = [list(C.objects)]
    if T >= 1:
        levels.append([(f,) for f in C.morphisms])
        _guard_level(len(levels[1]), cap, f"N({C.name})")
    for _ in range(2, T + 1):
        nxt = [chain + (g,) for chain in levels[-1] for g in C.out_of(C.cod(chain[-1]))]
        _guard_level(len(nxt), cap, f"N({C.name})")
        levels.append(nxt)
    return levels


def nerve(C: FinCategory, T: Optional[int] = None, cap: Optional[int] = None) -> SimplicialSet:
    """
    The nerve of C truncated at T.

    n-simplices are composable chains (f_1, ..., f_n), f_1 applied first;
    0-simplices are objects. Faces compose or drop; degeneracies insert
    identities.

    Raises:
        SizeCapExceeded: If a level exceeds the simplex cap
    """
    T = get_settings().dim if T is None else T
    levels = nerve_levels(C, T, cap=cap)
    S = SimplicialSet.from_operators(
        T,
        levels,
        lambda n, i, x: nerve_face(C, n, i, x),
        lambda n, i, x: nerve_degeneracy(C, n, i, x),
        name=f"N({C.name})",
    )
    logger.debug(f"Built {S!r}")
    return S


def nerve_map(F: Functor, T: Optional[int] = None, cap: Optional[int] = None) -> SimplicialMap:
    """The simplicial map N(F): N(A) -> N(B)."""
    T = get_settings().dim if T is None else T
    source = nerve(F.source, T, cap=cap)
    target = nerve(F.target, T, cap=cap)
    maps = [{x: F.obj(x) for x in source.levels[0]}]
    for n in range(1, T + 1):
        maps.append({x: tuple(F.mor(f) for f in x) for x in source.levels[n]})
    return SimplicialMap(source, target, maps, name=f"N({F.name})")


# -- diagrams and homotopy colimits ---------------------------------------------


class SimplicialDiagram:
    """
    A contravariant simplicial-set-valued diagram on a finite category.

    X(f): X(c) -> X(c') for f: c' -> c.
    """

    def __init__(
        self,
        base: FinCategory,
        values: Mapping[Obj, SimplicialSet],
        maps: Mapping[Mor, SimplicialMap],
        name: str = "",
    ):
        self.base = base
        self.values = dict(values)
        self.maps = dict(maps)
        self.name = name

    def check(self) -> "SimplicialDiagram":
        """
        Verify contravariant functoriality on every stored level.

        Raises:
            NotAFunctor: If an identity or composite is not preserved
        """
        C = self.base
        for c in C.objects:
            if any(self.maps[C.identity(c)].maps[n] != {x: x for x in level}
                   for n, level in enumerate(self.values[c].levels)):
                raise NotAFunctor(f"{self.name}: X(id_{c!r}) is not the identity")
        for g, f in C.composable_pairs():
            Xg, Xf, Xgf = self.maps[g], self.maps[f], self.maps[C.compose(g, f)]
            for n, table in enumerate(Xgf.maps):
                for x, y in table.items():
                    if Xf.maps[n][Xg.maps[n][x]] != y:
                        raise NotAFunctor(f"{self.name}: X({g!r}∘{f!r}) != X({f!r})∘X({g!r})")
        return self


def nerve_diagram(X: CatDiagram, T: Optional[int] = None, cap: Optional[int] = None) -> SimplicialDiagram:
    """The composite N∘X of a category-valued diagram with the nerve."""
    T = get_settings().dim if T is None else T
    values = {c: nerve(X.value(c), T, cap=cap) for c in X.base.objects}
    maps = {}
    for f in X.base.morphisms:
        Xf = X.functor(f)
        a, b = X.base.ends(f)
        source, target = values[b], values[a]
        tables = [{x: Xf.obj(x) for x in source.levels[0]}]
        for n in range(1, T + 1):
            tables.append({x: tuple(Xf.mor(m) for m in x) for x in source.levels[n]})
        maps[f] = SimplicialMap(source, target, tables, name=f"N(X({f!r}))")
    return SimplicialDiagram(X.base, values, maps, name=f"N∘{X.name}")


def _last_object(C: FinCategory, n: int, chain: Any) -> Obj:
    return chain if n == 0 else C.cod(chain[-1])


def homotopy_colimit(
    X: SimplicialDiagram,
    T: Optional[int] = None,
    cap: Optional[int] = None,
) -> SimplicialSet:
    """
    Bousfield-Kan homotopy colimit of a contravariant diagram of simplicial sets.

    n-simplices are pairs (chain c_0 -> ... -> c_n in C, x in X(c_n)_n). The
    last face d_n moves x along X(f_n); the other faces and all degeneracies
    act on both coordinates.

    Raises:
        NotAFunctor: If X is not functorial
        SizeCapExceeded: If a level exceeds the simplex cap
    """
    X.check()
    C = X.base
    T = get_settings().dim if T is None else T
    if any(value.dim < T for value in X.values.values()):
        raise ValueError(f"diagram values must be truncated at dimension >= {T}")
    simplex_cap = resolve_cap(cap, kind="simplex")
    chains = nerve_levels(C, T, cap=simplex_cap)
    levels: List[List[Any]] = []
    for n in range(T + 1):
        level = [(chain, x) for chain in chains[n] for x in X.values[_last_object(C, n, chain)].levels[n]]
        _guard_level(len(level), simplex_cap, f"hocolim({X.name})")
        levels.append(level)

    def face(n: int, i: int, simplex: Any) -> Any:
        chain, x = simplex
        c = _last_object(C, n, chain)
        dx = X.values[c].faces[n][i][x]
        if i == n:
            dx = X.maps[chain[-1]].maps[n - 1][dx]
        return nerve_face(C, n, i, chain), dx

    def degeneracy(n: int, i: int, simplex: Any) -> Any:
        chain, x = simplex
        c = _last_object(C, n, chain)
        return nerve_degeneracy(C, n, i, chain), X.values[c].degeneracies[n][i][x]

    S = SimplicialSet.from_operators(T, levels, face, degeneracy, name=f"hocolim({X.name})")
    logger.debug(f"Built {S!r}")
    return S


def _chain_vertices(Xc: FinCategory, n: int, y: Any) -> List[Obj]:
    if n == 0:
        return [y]
    return [Xc.dom(y[0])] + [Xc.cod(g) for g in y]


def thomason_comparison(
    X: CatDiagram,
    T: Optional[int] = None,
    cap: Optional[int] = None,
) -> SimplicialMap:
    """
    The canonical map hocolim(N∘X) -> N(oplax colimit of X).

    A simplex (c_0 -> ... -> c_n, x_0 -> ... -> x_n in X(c_n)) goes to the
    chain whose i-th object is <c_i, X(c_i -> c_n)(x_i)>, joined by the
    morphisms (f_i, X(c_{i-1} -> c_n)(g_i)).

    Raises:
        NotAFunctor: If X is not functorial, or the result is not simplicial
    """
    T = get_settings().dim if T is None else T
    C = X.base
    source = homotopy_colimit(nerve_diagram(X, T, cap=cap), T, cap=cap)
    K, _ = oplax_colimit(X, cap=cap)
    target = nerve(K, T, cap=cap)

    def image(n: int, simplex: Any) -> Any:
        chain, y = simplex
        if n == 0:
            return chain, y
        cs = _chain_objects(C, chain)
        cn = cs[-1]
        Xc = X.value(cn)
        xs = _chain_vertices(Xc, n, y)
        # h[i]: c_i -> c_n
        h = [C.identity(cn)] * (n + 1)
        for i in range(n - 1, -1, -1):
            h[i] = C.compose(h[i + 1], chain[i])
        points = [(cs[i], X.functor(h[i]).obj(xs[i])) for i in range(n + 1)]
        arrows = []
        for i in range(1, n + 1):
            g = X.functor(h[i - 1]).mor(y[i - 1])
            arrows.append((points[i - 1], (chain[i - 1], g), points[i]))
        return tuple(arrows)

    maps = [{s: image(n, s) for s in source.levels[n]} for n in range(T + 1)]
    comparison = SimplicialMap(source, target, maps, name=f"thomason({X.name})")
    problems = comparison.violations()
    if problems:
        raise NotAFunctor(f"{comparison!r}: {problems[0]}")
    return comparison


def elements_isomorphism(
    X: CatDiagram,
    T: Optional[int] = None,
    cap: Optional[int] = None,
) -> SimplicialMap:
    """
    Explicit isomorphism hocolim(N∘X) -> N(el X) for a Set-valued X.

    Composite of the Thomason comparison with the nerve of the canonical
    isomorphism from the oplax colimit to the category of elements.
    """
    T = get_settings().dim if T is None else T
    comparison = thomason_comparison(X, T, cap=cap)
    relabel = nerve_map(oplax_to_elements(X, cap=cap), T, cap=cap)
    # nerve_map rebuilds N(oplax); ids coincide, so compose tables directly
    composite = SimplicialMap(
        comparison.source,
        relabel.target,
        [{s: relabel.maps[n][y] for s, y in comparison.maps[n].items()} for n in range(T + 1)],
        name=f"el-iso({X.name})",
    )
    return composite

