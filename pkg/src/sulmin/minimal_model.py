"""Incremental minimization of a free graded-commutative DG-algebra.

Generators are swept in declaration order.  For each generator m the sweep
looks at a = f(d(m)), the projected derivative, and b = m - phi(d(m)):

* a is a word of length >= 2 in the surviving generators: m survives,
  f(m) = m, g(m) = b, phi(m) = 0, and a is the induced derivative of m.
* otherwise a has a linear part: the surviving generator j with the highest
  index and a nonzero linear coefficient is removed, (m, j) is recorded as a
  contractible pair, and the earlier f/phi tables are corrected.

The correction realizes the composition with the elementary contraction that
collapses the pair.  On f it substitutes j -> j - a/alpha (an algebra map),
which on a linear occurrence of j is exactly the textbook column update
f(x) -= lambda * a; the substitution form also clears occurrences of j inside
product terms, which the linear update cannot reach, and keeps every f image
inside the surviving subalgebra.  The phi correction is the matching homotopy
term, again reducing to phi(x) += lambda * b on linear occurrences.

After the sweep the induced derivative is recomputed from the final tables
and checked: against the maintained per-step values, for minimality, for
squaring to zero, and for agreement with f(d(g(w))).  Any failure is an
internal invariant breach and raises.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .differential import DGAlgebra, DiffEvaluator, validate_sullivan
from .homology_oracle import column_reduce
from .graded_algebra import (
    Elem,
    Generator,
    Mono,
    Signature,
    basis_monomials,
    elem_add,
    elem_gen,
    elem_is_zero,
    elem_mul,
    elem_pow,
    elem_scale,
    elem_sub,
    in_lambda_geq2,
    linear_part,
    mono_elem,
    mono_str,
)
from .morphisms import FullContraction, GeneratorMap, HomotopyEvaluator, MapEvaluator


class SullivanValidationError(ValueError):
    """The input fails the ordered Sullivan contract."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class InternalInvariantError(RuntimeError):
    """State corruption inside the sweep; indicates a bug, never bad input."""


def _substitute(sig: Signature, x: Elem, j: int, replacement: Elem) -> Elem:
    """Algebra substitution sending generator j to ``replacement`` in x."""
    out: Elem = {}
    pow_cache: Dict[int, Elem] = {}
    for m, c in x.items():
        if all(i != j for i, _ in m):
            out = elem_add(out, {m: c})
            continue
        acc = {(): Fraction(c)}
        for i, e in m:
            if i != j:
                acc = elem_mul(sig, acc, mono_elem(((i, e),)))
            else:
                rep = pow_cache.get(e)
                if rep is None:
                    rep = elem_pow(sig, replacement, e)
                    pow_cache[e] = rep
                acc = elem_mul(sig, acc, rep)
        out = elem_add(out, acc)
    return out


def _pair_homotopy(sig: Signature, x: Elem, j: int, kill_image: Elem,
                   subst) -> Elem:
    """Homotopy term of the elementary pair collapse, applied to x.

    The elementary homotopy sends j to ``kill_image`` (the killer generator
    scaled by 1/alpha) and every other generator to zero; it extends to
    products by the usual two-term rule whose right leg is the substitution
    map of the collapse.  Zero unless x mentions j.
    """
    cache: Dict[Mono, Elem] = {(): {}}

    def on_monomial(m: Mono) -> Elem:
        hit = cache.get(m)
        if hit is not None:
            return hit
        (i, e) = m[0]
        rest: Mono = ((i, e - 1),) + m[1:] if e > 1 else m[1:]
        tail = on_monomial(rest)
        out: Elem = {}
        if tail:
            out = elem_mul(sig, elem_gen(sig, i), tail)
            if sig.degree(i) % 2:
                out = {mm: -c for mm, c in out.items()}
        if i == j:
            out = elem_add(out, elem_mul(sig, kill_image, subst(mono_elem(rest))))
        cache[m] = out
        return out

    out: Elem = {}
    for m, c in x.items():
        if all(i != j for i, _ in m):
            continue
        img = on_monomial(m)
        if img:
            out = elem_add(out, elem_scale(img, c))
    return out


def _d_preimage(sig: Signature, diff, degree: int, earlier, target: Elem) -> Elem:
    """Deterministic solution u of d(u) = target over the earlier generators."""
    basis = basis_monomials(sig, degree, earlier)
    up = basis_monomials(sig, degree + 1, earlier)
    index = {m: k for k, m in enumerate(up)}
    ev = DiffEvaluator(sig, diff)
    cols = []
    for m in basis:
        cols.append({index[mm]: c for mm, c in ev.on_monomial(m).items()})
    cols.append({index[mm]: c for mm, c in target.items()})
    _, kernel = column_reduce(cols)
    last = len(basis)
    for combo in kernel:
        c_last = combo.get(last)
        if c_last:
            out: Elem = {}
            for pos, c in combo.items():
                if pos != last:
                    out = elem_add(out, mono_elem(basis[pos], -c / c_last))
            return out
    raise InternalInvariantError("no derivative preimage for a chain correction")


def compute_minimal_model(dga: DGAlgebra) -> FullContraction:
    report = validate_sullivan(dga)
    if not report.ok:
        raise SullivanValidationError(report)

    sig = dga.sig
    n = len(sig)
    W: List[int] = []
    in_w = set()
    f: Dict[int, Elem] = {}
    g: Dict[int, Elem] = {}
    phi: Dict[int, Elem] = {}
    dw_current: Dict[int, Elem] = {}   # running f-projection of each survivor's derivative
    pairs: List[Tuple[int, int]] = []

    d_ev = DiffEvaluator(sig, dga.diff)
    for i in range(n):
        di = dga.d_of(i)
        f_ev = MapEvaluator(sig, f)
        g_ev = MapEvaluator(sig, g)
        phi_ev = HomotopyEvaluator(sig, phi, f_ev, g_ev)
        a = f_ev.on_element(di)
        b = elem_sub(elem_gen(sig, i), phi_ev.on_element(di))

        for m in a:
            if any(k not in in_w for k, _ in m):
                raise InternalInvariantError(
                    f"projected derivative of {sig.name(i)} leaves the surviving "
                    f"subalgebra at term {mono_str(sig, m)}")

        # the recursion for phi can undershoot on products once earlier pairs
        # interact, leaving b short of the chain property d(b) = g(a); repair
        # with an exact derivative preimage, projected off the surviving part
        # (never triggers on inputs whose pairs do not interact)
        residual = elem_sub(d_ev.on_element(b), g_ev.on_element(a))
        if residual:
            delta = _d_preimage(sig, dga.diff, sig.degree(i), range(i), residual)
            delta = elem_sub(delta, g_ev.on_element(f_ev.on_element(delta)))
            b = elem_sub(b, delta)
            if elem_sub(d_ev.on_element(b), g_ev.on_element(a)):
                raise InternalInvariantError(
                    f"chain correction failed for {sig.name(i)}")

        if in_lambda_geq2(sig, a, in_w):
            W.append(i)
            in_w.add(i)
            f[i] = elem_gen(sig, i)
            g[i] = b
            phi[i] = {}
            dw_current[i] = a
        else:
            lin = linear_part(sig, a, in_w)
            if not lin:
                raise InternalInvariantError(
                    f"projected derivative of {sig.name(i)} has no linear part "
                    "yet is not a product")
            target = max(gen.index for gen in lin)
            alpha = lin[sig.generators[target]]
            W.remove(target)
            in_w.discard(target)
            pairs.append((i, target))
            f[i] = {}
            phi[i] = {}

            replacement = elem_sub(elem_gen(sig, target), elem_scale(a, 1 / alpha))
            kill_image = elem_scale(elem_gen(sig, i), 1 / alpha)
            f_old = dict(f)

            def subst(x: Elem) -> Elem:
                return _substitute(sig, x, target, replacement)

            g_mid = dict(g)
            g_mid[i] = b  # the killer embeds as b while the collapse composes
            g_mid_ev = MapEvaluator(sig, g_mid)
            g.pop(target, None)

            def mentions_target(x: Elem) -> bool:
                return any(any(t == target for t, _ in m) for m in x)

            for k in range(i):
                fk = f_old[k]
                if mentions_target(fk):
                    f[k] = subst(fk)
                    correction = _pair_homotopy(sig, fk, target, kill_image, subst)
                    phi[k] = elem_add(phi[k], g_mid_ev.on_element(correction))
            # a survivor whose induced derivative mentioned the killed
            # generator changes derivative under the substitution, and its
            # inclusion image must absorb the matching homotopy term to stay
            # a chain map (no-op whenever the killed generator only ever
            # appeared linearly, as in the small worked cases)
            for w in W:
                dw = dw_current.get(w, {})
                if mentions_target(dw):
                    correction = _pair_homotopy(sig, dw, target, kill_image, subst)
                    g[w] = elem_sub(g[w], g_mid_ev.on_element(correction))
                    dw_current[w] = subst(dw)

    # finalize the induced derivative from the final projection table
    f_ev = MapEvaluator(sig, f)
    g_ev = MapEvaluator(sig, g)
    dW: Dict[int, Elem] = {}
    for w in W:
        final = f_ev.on_element(d_ev.on_monomial(((w, 1),)))
        if final != dw_current.get(w, {}):
            raise InternalInvariantError(
                f"induced derivative of {sig.name(w)} drifted from its recorded value")
        if not in_lambda_geq2(sig, final, in_w):
            raise InternalInvariantError(
                f"induced derivative of {sig.name(w)} is not minimal")
        fdg = f_ev.on_element(d_ev.on_element(g[w]))
        if fdg != final:
            raise InternalInvariantError(
                f"induced derivative of {sig.name(w)} disagrees with f(d(g({sig.name(w)})))")
        if final:
            dW[w] = final
    for w in W:
        if f[w] != elem_gen(sig, w):
            raise InternalInvariantError(f"projection does not fix {sig.name(w)}")
    dw_ev = DiffEvaluator(sig, dW)
    for w, dv in dW.items():
        if not elem_is_zero(dw_ev.on_element(dv)):
            raise InternalInvariantError(
                f"induced derivative does not square to zero on {sig.name(w)}")

    return FullContraction(
        source=dga,
        W=tuple(W),
        dW=dW,
        f=GeneratorMap(sig, f, 0),
        g=GeneratorMap(sig, g, 0),
        phi=GeneratorMap(sig, phi, -1),
        pairs=tuple(pairs),
    )


def contractible_summand(c: FullContraction) -> List[Tuple[Generator, Elem]]:
    """(killer generator, its source derivative) for each recorded pair."""
    out = []
    for i, _ in c.pairs:
        out.append((c.sig.generators[i], c.source.d_of(i)))
    return out
