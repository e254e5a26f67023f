"""Incremental contraction of a finitely generated DG-module onto its homology.

No products here: differentials and morphism tables are plain linear
combinations of generators over the rationals.  The pairing sweep processes
generators in declaration order; a generator whose projected derivative
vanishes births a homology class, otherwise it kills the highest-index
surviving class and the earlier tables are corrected by exact column
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

Lin = Dict[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def lin_add(x: Lin, y: Lin) -> Lin:
    out = dict(x)
    for i, c in y.items():
        s = out.get(i, _ZERO) + c
        if s:
            out[i] = s
        elif i in out:
            del out[i]
    return out


def lin_scale(x: Lin, c: Fraction) -> Lin:
    if not c:
        return {}
    return {i: c * v for i, v in x.items()}


def lin_sub(x: Lin, y: Lin) -> Lin:
    return lin_add(x, {i: -c for i, c in y.items()})


@dataclass(frozen=True)
class DGModule:
    """Ordered generators (name, degree >= 0) with a linear differential table."""

    generators: Tuple[Tuple[str, int], ...]
    diff: Mapping[int, Lin] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(
            self, "diff", {i: dict(v) for i, v in self.diff.items() if v})

    def degree(self, index: int) -> int:
        return self.generators[index][1]

    def name(self, index: int) -> str:
        return self.generators[index][0]

    def d_of(self, index: int) -> Lin:
        return self.diff.get(index, {})

    def apply_d(self, x: Lin) -> Lin:
        out: Lin = {}
        for i, c in x.items():
            out = lin_add(out, lin_scale(self.d_of(i), c))
        return out


def validate_module(M: DGModule) -> List[str]:
    """All violations of the ordered DG-module contract, as messages."""
    problems = []
    names = set()
    for i, (name, deg) in enumerate(M.generators):
        if deg < 0:
            problems.append(f"generator {name} has degree {deg} < 0")
        if name in names:
            problems.append(f"duplicate generator name {name}")
        names.add(name)
    for i, dx in sorted(M.diff.items()):
        name, deg = M.generators[i]
        for j in dx:
            if j >= i:
                problems.append(
                    f"d({name}) uses {M.name(j)} (index {j} >= {i})")
            if M.degree(j) != deg + 1:
                problems.append(
                    f"d({name}) term {M.name(j)} has degree {M.degree(j)}, expected {deg + 1}")
        if M.apply_d(dx):
            problems.append(f"d(d({name})) is nonzero")
    return problems


@dataclass(frozen=True)
class ATModel:
    """Contraction of a DG-module onto its homology (zero differential)."""

    H: Tuple[int, ...]
    f: Mapping[int, Lin]
    g: Mapping[int, Lin]
    phi: Mapping[int, Lin]
    pairs: Tuple[Tuple[int, int], ...]


def compute_at_model(M: DGModule) -> ATModel:
    problems = validate_module(M)
    if problems:
        raise ValueError("invalid DG-module: " + "; ".join(problems))

    H: List[int] = []
    in_h = set()
    f: Dict[int, Lin] = {}
    g: Dict[int, Lin] = {}
    phi: Dict[int, Lin] = {}
    pairs: List[Tuple[int, int]] = []

    def f_of(x: Lin) -> Lin:
        out: Lin = {}
        for i, c in x.items():
            out = lin_add(out, lin_scale(f[i], c))
        return out

    def phi_of(x: Lin) -> Lin:
        out: Lin = {}
        for i, c in x.items():
            out = lin_add(out, lin_scale(phi[i], c))
        return out

    for i in range(len(M.generators)):
        di = M.d_of(i)
        a = f_of(di)
        b = lin_sub({i: _ONE}, phi_of(di))
        if not a:
            H.append(i)
            in_h.add(i)
            f[i] = {i: _ONE}
            g[i] = b
            phi[i] = {}
        else:
            j = max(k for k in a if k in in_h)
            alpha = a[j]
            H.remove(j)
            in_h.discard(j)
            f[i] = {}
            phi[i] = {}
            g.pop(j, None)
            pairs.append((i, j))
            for m in range(i):
                lam = f[m].get(j, _ZERO) / alpha
                if not lam:
                    continue
                f[m] = lin_sub(f[m], lin_scale(a, lam))
                phi[m] = lin_add(phi[m], lin_scale(b, lam))

    return ATModel(tuple(H), f, g, phi, tuple(pairs))


@dataclass(frozen=True)
class ModuleIdentityCheck:
    name: str
    ok: bool
    counterexample: Optional[str] = None

    def __str__(self) -> str:
        return f"{self.name}: {'pass' if self.ok else 'FAIL at ' + str(self.counterexample)}"


def check_at_model(M: DGModule, A: ATModel) -> Tuple[ModuleIdentityCheck, ...]:
    """Verify the nine contraction identities on every generator, exactly."""

    def ev(table: Mapping[int, Lin], x: Lin) -> Lin:
        out: Lin = {}
        for i, c in x.items():
            out = lin_add(out, lin_scale(table[i], c))
        return out

    failures: Dict[str, str] = {}

    def record(name: str, residual: Lin, where: str) -> None:
        if residual and name not in failures:
            failures[name] = where

    def g_of(x: Lin) -> Lin:
        out: Lin = {}
        for i, c in x.items():
            out = lin_add(out, lin_scale(A.g[i], c))
        return out

    for i in range(len(M.generators)):
        name = M.name(i)
        unit: Lin = {i: _ONE}
        di = M.d_of(i)
        phii = A.phi[i]
        record("f d = 0", ev(A.f, di), name)
        record("f phi = 0", ev(A.f, phii), name)
        record("phi phi = 0", ev(A.phi, phii), name)
        fm = ev(A.f, unit)
        if any(k not in A.g for k in fm):
            record("id - gf = phi d + d phi", fm, name)  # f escapes the span of H
        else:
            gf = g_of(fm)
            homo = lin_add(ev(A.phi, di), M.apply_d(phii))
            record("id - gf = phi d + d phi", lin_sub(lin_sub(unit, gf), homo), name)
        record("phi d phi = phi", lin_sub(ev(A.phi, M.apply_d(phii)), phii), name)
        record("d phi d = d", lin_sub(M.apply_d(ev(A.phi, di)), di), name)
    for h in A.H:
        name = M.name(h)
        unit: Lin = {h: _ONE}
        record("f g = id", lin_sub(ev(A.f, A.g[h]), unit), name)
        record("phi g = 0", ev(A.phi, A.g[h]), name)
        record("d g = 0", M.apply_d(A.g[h]), name)

    names = [
        "f d = 0", "d g = 0", "f phi = 0", "phi g = 0", "phi phi = 0",
        "id - gf = phi d + d phi", "f g = id", "phi d phi = phi", "d phi d = d",
    ]
    return tuple(
        ModuleIdentityCheck(n, n not in failures, failures.get(n)) for n in names)


def homology_class_dims(M: DGModule, A: ATModel) -> Dict[int, int]:
    """Number of surviving classes per degree."""
    out: Dict[int, int] = {}
    for h in A.H:
        d = M.degree(h)
        out[d] = out.get(d, 0) + 1
    return out
