"""
Homotopy evidence.

Integral homology of truncated simplicial sets from the normalized chain
complex, and three-valued weak-equivalence evidence: Certified only from a
structural certificate (isomorphism, adjoint, terminal or initial object),
Refuted on a concrete pi_0 or homology discrepancy, Consistent otherwise.
"""

import logging
from typing import Callable, Dict, Hashable, List, Optional, Tuple, Union

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from fibrantkit.config import get_settings
from fibrantkit.exceptions import SizeCapExceeded
from fibrantkit.fincat import (
    FinCategory,
    Functor,
    comma_category,
    find_left_adjoint,
    find_right_adjoint,
    inclusion_functor,
    strict_fibre,
)
from fibrantkit.models import HomologyGroup, HomologyProfile, Verdict, aggregate_verdicts
from fibrantkit.simplicial import SimplicialMap, SimplicialSet, nerve, nerve_map

logger = logging.getLogger(__name__)

Column = Dict[int, int]


def _eliminate_unit_pivots(columns: List[Column]) -> Tuple[int, List[Column]]:
    """
    Pivot on +-1 entries until none is left.

    Each unit pivot contributes an invariant factor 1; the Schur complement
    left behind has the same remaining invariant factors.

    Returns:
        (number of unit pivots, residual columns)
    """
    cols: Dict[int, Column] = {j: dict(col) for j, col in enumerate(columns) if col}
    rows: Dict[int, set] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)

    pivots = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols):
            col = cols.get(j)
            if not col:
                continue
            units = [i for i, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda i: (len(rows[i]), i))
            p = col[r]
            pivot_col = cols.pop(j)
            for i in pivot_col:
                rows[i].discard(j)
            for j2 in sorted(rows[r]):
                other = cols[j2]
                factor = other[r] * p
                for i, v in pivot_col.items():
                    value = other.get(i, 0) - factor * v
                    if value:
                        if i not in other:
                            rows[i].add(j2)
                        other[i] = value
                    elif i in other:
                        del other[i]
                        rows[i].discard(j2)
                if not other:
                    del cols[j2]
            del rows[r]
            pivots += 1
            progress = True
    return pivots, [col for _, col in sorted(cols.items()) if col]


def smith_invariants(columns: List[Column]) -> List[int]:
    """
    Nonzero invariant factors of a sparse integer matrix given by columns.

    Unit pivots are eliminated first; sympy computes the Smith form of
    whatever residual block remains.
    """
    pivots, residual = _eliminate_unit_pivots(columns)
    factors = [1] * pivots
    if residual:
        row_ids = sorted({i for col in residual for i in col})
        index = {i: k for k, i in enumerate(row_ids)}
        dense = [[0] * len(residual) for _ in row_ids]
        for j, col in enumerate(residual):
            for i, v in col.items():
                dense[index[i]][j] = v
        logger.debug(f"Smith form of residual {len(row_ids)}x{len(residual)} block")
        for d in invariant_factors(Matrix(dense)):
            d = abs(int(d))
            if d:
                factors.append(d)
    return factors


def _chain_homology(
    bases: List[List[Hashable]],
    boundary: Callable[[int, Hashable], Dict[Hashable, int]],
    degrees: int,
) -> List[HomologyGroup]:
    """H_0 .. H_{degrees-1} of a finite free chain complex; bases must reach degree `degrees`."""
    indexes = [{x: k for k, x in enumerate(basis)} for basis in bases]
    ranks = [0] * (len(bases) + 1)
    torsion: List[List[int]] = [[] for _ in range(len(bases) + 1)]
    for n in range(1, min(degrees, len(bases) - 1) + 1):
        below = indexes[n - 1]
        columns = []
        for x in bases[n]:
            col: Column = {}
            for y, c in boundary(n, x).items():
                if c and y in below:
                    k = below[y]
                    col[k] = col.get(k, 0) + c
                    if not col[k]:
                        del col[k]
            columns.append(col)
        factors = smith_invariants(columns)
        ranks[n] = len(factors)
        torsion[n - 1] = sorted(d for d in factors if d > 1)
    groups = []
    for n in range(degrees):
        free = len(bases[n]) - ranks[n] - ranks[n + 1]
        groups.append(HomologyGroup(free_rank=free, torsion=torsion[n]))
    return groups


def _normalized_boundary(S: SimplicialSet) -> Callable[[int, Hashable], Dict[Hashable, int]]:
    def boundary(n: int, x: Hashable) -> Dict[Hashable, int]:
        out: Dict[Hashable, int] = {}
        for i in range(n + 1):
            y = S.faces[n][i][x]
            out[y] = out.get(y, 0) + (-1) ** i
        return out

    return boundary


def homology(S: SimplicialSet) -> HomologyProfile:
    """
    Integral homology H_0 .. H_{T-1} from the normalized chain complex.

    The complex is free on nondegenerate simplices; degenerate faces are
    dropped from boundaries.
    """
    T = S.dim
    bases = [S.nondegenerate(n) for n in range(T + 1)]
    groups = _chain_homology(bases, _normalized_boundary(S), T)
    profile = HomologyProfile(dim=T, groups=groups)
    logger.debug(f"Homology of {S.name}: {profile}")
    return profile


def mapping_cone_homology(f: SimplicialMap) -> List[HomologyGroup]:
    """
    Homology of the mapping cone of the normalized chain map of f.

    Cone_n = C_{n-1}(source) + C_n(target), with d(a, b) = (-da, f(a) + db).
    Vanishing through degree T-1 means f_* is onto through T-1 and one-to-one
    through T-2.
    """
    S, T = f.source, f.target
    top = S.dim
    bases: List[List[Hashable]] = []
    for n in range(top + 1):
        left = [("s", x) for x in S.nondegenerate(n - 1)] if n >= 1 else []
        bases.append(left + [("t", y) for y in T.nondegenerate(n)])
    source_boundary = _normalized_boundary(S)
    target_boundary = _normalized_boundary(T)

    def boundary(n: int, gen: Hashable) -> Dict[Hashable, int]:
        side, x = gen
        out: Dict[Hashable, int] = {}
        if side == "t":
            for y, c in target_boundary(n, x).items():
                out[("t", y)] = out.get(("t", y), 0) + c
            return out
        if n >= 2:
            for y, c in source_boundary(n - 1, x).items():
                out[("s", y)] = out.get(("s", y), 0) - c
        image = ("t", f.maps[n - 1][x])
        out[image] = out.get(image, 0) + 1
        return out

    return _chain_homology(bases, boundary, top)


def homology_evidence(f: SimplicialMap) -> Verdict:
    """Refuted on a pi_0 or homology discrepancy, else Consistent (never Certified)."""
    source, target = homology(f.source), homology(f.target)
    if source.components != target.components:
        return Verdict.refuted(pi0=[source.components, target.components])
    difference = source.first_difference(target)
    if difference:
        return Verdict.refuted(homology=difference)
    for n, group in enumerate(mapping_cone_homology(f)):
        if not group.is_zero:
            return Verdict.refuted(cone_degree=n, cone=str(group))
    return Verdict.consistent(homology=str(source))


def weak_equivalence_evidence(
    f: Union[SimplicialMap, Functor],
    T: Optional[int] = None,
    cap: Optional[int] = None,
) -> Verdict:
    """
    Three-valued evidence that f is a weak homotopy equivalence.

    Args:
        f: A simplicial map, or a functor (judged through its nerve)
        T: Truncation dimension (default: settings)
        cap: Size cap passed to the constructions

    Returns:
        Certified for an isomorphism or a functor with an adjoint; Refuted on
        a pi_0, homology or mapping-cone discrepancy; Consistent otherwise
    """
    if f is None:
        raise ValueError("f cannot be None")
    T = get_settings().dim if T is None else T
    if isinstance(f, Functor):
        if f.is_isomorphism() and f.is_functor():
            return Verdict.certified(certificate="isomorphism")
        try:
            if find_right_adjoint(f, cap=cap) is not None:
                return Verdict.certified(certificate="right adjoint")
            if find_left_adjoint(f, cap=cap) is not None:
                return Verdict.certified(certificate="left adjoint")
        except SizeCapExceeded as e:
            logger.debug(f"Adjoint search for {f!r} abandoned: {e}")
        f = nerve_map(f, T, cap=cap)
    if f.is_isomorphism() and not f.violations():
        return Verdict.certified(certificate="isomorphism")
    verdict = homology_evidence(f)
    if verdict.is_refuted:
        logger.debug(f"{f!r} refuted: {verdict.witness}")
    return verdict


def _contraction_certificate(C: FinCategory, depth: int, cap: Optional[int]) -> Optional[List[str]]:
    terminals = C.terminal_objects()
    if terminals:
        return [f"terminal object {terminals[0]!r}"]
    initials = C.initial_objects()
    if initials:
        return [f"initial object {initials[0]!r}"]
    if depth <= 0 or len(C.objects) <= 1:
        return None
    for x in C.objects:
        sub = C.full_subcategory([y for y in C.objects if y != x])
        inclusion = inclusion_functor(sub, C)
        try:
            adjoint = find_right_adjoint(inclusion, cap=cap) or find_left_adjoint(inclusion, cap=cap)
        except SizeCapExceeded:
            return None
        if adjoint is None:
            continue
        rest = _contraction_certificate(sub, depth - 1, cap)
        if rest is not None:
            return [f"reflective removal of {x!r}"] + rest
    return None


def is_weakly_contractible(
    C: Union[FinCategory, SimplicialSet],
    T: Optional[int] = None,
    depth: Optional[int] = None,
    cap: Optional[int] = None,
) -> Verdict:
    """
    Three-valued evidence that the nerve of C (or C itself) is contractible.

    Certified when C has a terminal or initial object, or reaches one through
    a chain of reflective/coreflective full-subcategory inclusions of length
    at most depth; Refuted when pi_0 != 1 or reduced homology through T-1 is
    nonzero; Consistent otherwise.
    """
    if C is None:
        raise ValueError("C cannot be None")
    settings = get_settings()
    T = settings.dim if T is None else T
    depth = settings.adjoint_depth if depth is None else depth
    if isinstance(C, FinCategory):
        if not C.objects:
            return Verdict.refuted(pi0=0)
        certificate = _contraction_certificate(C, depth, cap)
        if certificate is not None:
            return Verdict.certified(certificate=certificate)
        components = len(C.components())
        if components != 1:
            return Verdict.refuted(pi0=components)
        S = nerve(C, T, cap=cap)
    else:
        S = C
        if all(len(level) == 1 for level in S.levels):
            return Verdict.certified(certificate="point")
    profile = homology(S)
    if profile.components != 1:
        return Verdict.refuted(pi0=profile.components)
    if not profile.is_acyclic:
        return Verdict.refuted(homology=str(profile))
    return Verdict.consistent(homology=str(profile))


def is_homotopy_cofinal(
    F: Functor,
    T: Optional[int] = None,
    depth: Optional[int] = None,
    cap: Optional[int] = None,
) -> Verdict:
    """
    Contractibility of every comma category d↓F, aggregated worst-first.

    The witness names the first target object with the winning verdict.
    """
    if F is None:
        raise ValueError("F cannot be None")
    verdicts = []
    for d in F.target.objects:
        K, _ = comma_category(F, d, cap=cap)
        verdict = is_weakly_contractible(K, T=T, depth=depth, cap=cap)
        verdicts.append(verdict.model_copy(update={"witness": {"object": str(d), **verdict.witness}}))
    return aggregate_verdicts(verdicts)


def fibre_verdicts(P: Functor, T: Optional[int] = None, cap: Optional[int] = None) -> Verdict:
    """Contractibility of every strict fibre of P, aggregated worst-first."""
    verdicts = []
    for b in P.target.objects:
        verdict = is_weakly_contractible(strict_fibre(P, b), T=T, cap=cap)
        verdicts.append(verdict.model_copy(update={"witness": {"object": str(b), **verdict.witness}}))
    return aggregate_verdicts(verdicts)

