"""Brute-force degreewise cohomology over the rationals.

Independent of the contraction machinery: enumerate the monomial basis degree
by degree, expand the differential of each basis monomial into the next
degree, and read off dim H^p = dim ker d^p - rank d^{p-1} from exact column
elimination.  Used to cross-check that a minimization run preserves
cohomology, and to validate module contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .at_model import DGModule
from .differential import DGAlgebra, DiffEvaluator
from .graded_algebra import Signature, basis_monomials, mono_str

SparseVec = Dict[int, Fraction]

_ZERO = Fraction(0)


def column_reduce(columns: Sequence[SparseVec]) -> Tuple[int, List[Dict[int, Fraction]]]:
    """Exact incremental elimination over sparse rational columns.

    Returns (rank, kernel combinations): each kernel combination maps column
    positions to coefficients of a vanishing linear relation.
    """
    pivots: Dict[int, Tuple[SparseVec, Dict[int, Fraction]]] = {}
    kernel: List[Dict[int, Fraction]] = []
    for pos, col in enumerate(columns):
        vec = dict(col)
        combo: Dict[int, Fraction] = {pos: Fraction(1)}
        while vec:
            lead = min(vec)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (vec, combo)
                break
            pvec, pcombo = hit
            factor = vec[lead] / pvec[lead]
            for r, c in pvec.items():
                s = vec.get(r, _ZERO) - factor * c
                if s:
                    vec[r] = s
                elif r in vec:
                    del vec[r]
            for k, c in pcombo.items():
                s = combo.get(k, _ZERO) - factor * c
                if s:
                    combo[k] = s
                elif k in combo:
                    del combo[k]
        else:
            kernel.append(combo)
    return len(pivots), kernel


def rank_of_columns(columns: Sequence[SparseVec]) -> int:
    return column_reduce(columns)[0]


class NotClosedError(ValueError):
    """The differential leaves the span of the requested generator subset."""


def _degree_columns(sig: Signature, ev: DiffEvaluator, basis_p, index_next,
                    subset_set) -> List[SparseVec]:
    cols = []
    for m in basis_p:
        img = ev.on_monomial(m)
        col: SparseVec = {}
        for mm, c in img.items():
            if any(i not in subset_set for i, _ in mm):
                raise NotClosedError(
                    f"d({mono_str(sig, m)}) has term {mono_str(sig, mm)} outside the subset")
            col[index_next[mm]] = c
        cols.append(col)
    return cols


def cohomology_dims(dga: DGAlgebra, subset=None, max_degree: int = 10) -> List[Tuple[int, int]]:
    """(degree, dimension) of H^p for 0 <= p <= max_degree, exactly."""
    if max_degree < 0:
        raise ValueError("degree cap must be >= 0")
    sig = dga.sig
    subset_idx = sorted({g.index if hasattr(g, "index") else int(g) for g in subset}) \
        if subset is not None else list(range(len(sig)))
    subset_set = set(subset_idx)
    ev = DiffEvaluator(sig, dga.diff)
    bases = [basis_monomials(sig, p, subset_idx) for p in range(max_degree + 2)]
    ranks = []
    for p in range(max_degree + 1):
        index_next = {m: k for k, m in enumerate(bases[p + 1])}
        cols = _degree_columns(sig, ev, bases[p], index_next, subset_set)
        ranks.append(rank_of_columns(cols))
    dims = []
    for p in range(max_degree + 1):
        below = ranks[p - 1] if p > 0 else 0
        dims.append((p, len(bases[p]) - ranks[p] - below))
    return dims


def module_homology_dims(M: DGModule, max_degree: Optional[int] = None) -> List[Tuple[int, int]]:
    """(degree, dimension) for a plain DG-module, over its whole degree range."""
    if max_degree is None:
        max_degree = max((d for _, d in M.generators), default=0)
    by_degree: Dict[int, List[int]] = {}
    for i, (_, d) in enumerate(M.generators):
        by_degree.setdefault(d, []).append(i)
    ranks: Dict[int, int] = {}
    for p in range(max_degree + 1):
        gens_p = by_degree.get(p, [])
        pos_next = {g: k for k, g in enumerate(by_degree.get(p + 1, []))}
        cols = []
        for g in gens_p:
            col = {pos_next[j]: c for j, c in M.d_of(g).items()}
            cols.append(col)
        ranks[p] = rank_of_columns(cols)
    dims = []
    for p in range(max_degree + 1):
        below = ranks.get(p - 1, 0)
        dims.append((p, len(by_degree.get(p, [])) - ranks[p] - below))
    return dims


@dataclass(frozen=True)
class ComparisonReport:
    dims_a: Tuple[Tuple[int, int], ...]
    dims_b: Tuple[Tuple[int, int], ...]
    first_mismatch: Optional[int]

    @property
    def equal(self) -> bool:
        return self.first_mismatch is None

    def __str__(self) -> str:
        lines = []
        for (p, da), (_, db) in zip(self.dims_a, self.dims_b):
            mark = "" if da == db else "   <- mismatch"
            lines.append(f"H^{p}: {da} vs {db}{mark}")
        lines.append("equal" if self.equal else f"first mismatch at degree {self.first_mismatch}")
        return "\n".join(lines)


def compare_cohomology(a: Tuple[DGAlgebra, object], b: Tuple[DGAlgebra, object],
                       max_degree: int = 10) -> ComparisonReport:
    """Degreewise dimension comparison of two (algebra, subset) sides."""
    dims_a = cohomology_dims(a[0], a[1], max_degree)
    dims_b = cohomology_dims(b[0], b[1], max_degree)
    first = None
    for (p, da), (_, db) in zip(dims_a, dims_b):
        if da != db:
            first = p
            break
    return ComparisonReport(tuple(dims_a), tuple(dims_b), first)
