"""Seeded random generators for valid ordered inputs.

Used by the property suites and the stress script.  Derivative candidates are
drawn from the exact cocycle space over the earlier generators, so every
sample satisfies the full ordered contract (homogeneous degree +1, squares to
zero, mentions earlier generators only) by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .at_model import DGModule, Lin
from .differential import DGAlgebra, DiffEvaluator
from .graded_algebra import (
    Elem,
    Signature,
    basis_monomials,
    elem_add,
    elem_scale,
    mono_elem,
)
from .homology_oracle import column_reduce

_COEFF_POOL = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
               Fraction(3), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)]


def _cocycle_space(sig: Signature, diff: Dict[int, Elem], earlier: List[int],
                   degree: int) -> List[Elem]:
    """Basis of degree-``degree`` cocycles in the span of ``earlier`` monomials."""
    basis = basis_monomials(sig, degree, earlier)
    if not basis:
        return []
    target = basis_monomials(sig, degree + 1, earlier)
    index = {m: k for k, m in enumerate(target)}
    ev = DiffEvaluator(sig, diff)
    cols = []
    for m in basis:
        img = ev.on_monomial(m)
        cols.append({index[mm]: c for mm, c in img.items()})
    _, kernel = column_reduce(cols)
    out = []
    for combo in kernel:
        e: Elem = {}
        for pos, c in combo.items():
            e = elem_add(e, mono_elem(basis[pos], c))
        out.append(e)
    return out


def random_sullivan_algebra(rng: random.Random, max_gens: int = 8,
                            max_degree: int = 4,
                            closed_probability: float = 0.4) -> DGAlgebra:
    n = rng.randint(4, max_gens)
    pairs = []
    for i in range(n):
        deg = rng.randint(1, max_degree)
        pairs.append((f"g{i}", deg))
    sig = Signature.from_pairs(pairs)
    diff: Dict[int, Elem] = {}
    for i in range(n):
        if rng.random() < closed_probability:
            continue
        earlier = list(range(i))
        space = _cocycle_space(sig, diff, earlier, sig.degree(i) + 1)
        if not space:
            continue
        picks = rng.randint(1, min(3, len(space)))
        chosen = rng.sample(space, picks)
        value: Elem = {}
        for vec in chosen:
            value = elem_add(value, elem_scale(vec, rng.choice(_COEFF_POOL)))
        if value:
            diff[i] = value
    return DGAlgebra(sig, diff)


def random_dg_module(rng: random.Random, max_gens: int = 30,
                     max_degree: int = 5,
                     closed_probability: float = 0.35) -> DGModule:
    n = rng.randint(2, max_gens)
    gens = []
    for i in range(n):
        gens.append((f"m{i}", rng.randint(0, max_degree)))
    diff: Dict[int, Lin] = {}

    def d_of(x: Lin) -> Lin:
        out: Lin = {}
        for k, c in x.items():
            for j, cj in diff.get(k, {}).items():
                s = out.get(j, Fraction(0)) + c * cj
                if s:
                    out[j] = s
                elif j in out:
                    del out[j]
        return out

    for i in range(n):
        if rng.random() < closed_probability:
            continue
        deg = gens[i][1]
        earlier = [k for k in range(i) if gens[k][1] == deg + 1]
        if not earlier:
            continue
        # kernel of d restricted to the earlier degree-(deg+1) generators
        cols = []
        next_ids = sorted({j for k in earlier for j in diff.get(k, {})})
        pos = {j: t for t, j in enumerate(next_ids)}
        for k in earlier:
            cols.append({pos[j]: c for j, c in diff.get(k, {}).items()})
        _, kernel = column_reduce(cols)
        if not kernel:
            continue
        picks = rng.randint(1, min(3, len(kernel)))
        value: Lin = {}
        for combo in rng.sample(kernel, picks):
            c = rng.choice(_COEFF_POOL)
            for t, coef in combo.items():
                k = earlier[t]
                s = value.get(k, Fraction(0)) + c * coef
                if s:
                    value[k] = s
                elif k in value:
                    del value[k]
        if value:
            diff[i] = value
    return DGModule(tuple(gens), diff)


def random_homogeneous_element(rng: random.Random, sig: Signature, degree: int,
                               max_terms: int = 4) -> Elem:
    basis = basis_monomials(sig, degree)
    if not basis:
        return {}
    count = rng.randint(1, min(max_terms, len(basis)))
    out: Elem = {}
    for m in rng.sample(basis, count):
        out = elem_add(out, mono_elem(m, rng.choice(_COEFF_POOL)))
    return out
