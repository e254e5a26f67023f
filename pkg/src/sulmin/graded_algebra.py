"""Exact arithmetic in a free graded-commutative algebra over the rationals.

Generators carry a positive degree and a declaration index.  A monomial is a
tuple of ``(generator index, exponent)`` pairs, strictly increasing in index;
a generator of odd degree never carries an exponent above 1 (its square is
zero).  An element is a dict mapping monomials to nonzero ``Fraction``
coefficients, so dict equality is exactly equality in the algebra.

Every value here is immutable by convention: no function mutates an element
it received or returned, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Mono = Tuple[Tuple[int, int], ...]
Elem = Dict[Mono, Fraction]

ONE_MONO: Mono = ()

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SignatureError(ValueError):
    """A monomial or element refers to generators outside the signature."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    index: int

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


class Signature:
    """Ordered list of generators; the order doubles as the Sullivan filtration."""

    def __init__(self, generators: Sequence[Generator]):
        gens = tuple(generators)
        names = set()
        for pos, g in enumerate(gens):
            if g.index != pos:
                raise SignatureError(f"generator {g.name!r} has index {g.index}, expected {pos}")
            if g.degree < 1:
                raise SignatureError(f"generator {g.name!r} has degree {g.degree}, expected >= 1")
            if g.name in names:
                raise SignatureError(f"duplicate generator name {g.name!r}")
            names.add(g.name)
        self.generators = gens
        self._by_name = {g.name: g for g in gens}

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> "Signature":
        return cls([Generator(name, degree, i) for i, (name, degree) in enumerate(pairs)])

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def by_name(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise SignatureError(f"unknown generator {name!r}") from None

    def degree(self, index: int) -> int:
        return self.generators[index].degree

    def name(self, index: int) -> str:
        return self.generators[index].name


def _as_indices(sig: Signature, subset: Optional[Iterable[Union[Generator, int]]]) -> Tuple[int, ...]:
    if subset is None:
        return tuple(range(len(sig)))
    idxs = sorted({g.index if isinstance(g, Generator) else int(g) for g in subset})
    for i in idxs:
        if not 0 <= i < len(sig):
            raise SignatureError(f"generator index {i} outside signature")
    return tuple(idxs)


def mono_degree(sig: Signature, m: Mono) -> int:
    return sum(e * sig.degree(i) for i, e in m)


def mono_valid(sig: Signature, m: Mono) -> bool:
    last = -1
    for i, e in m:
        if not 0 <= i < len(sig):
            return False
        if i <= last or e < 1:
            return False
        if sig.degree(i) % 2 == 1 and e != 1:
            return False
        last = i
    return True


def mono_str(sig: Signature, m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for i, e in m:
        name = sig.name(i)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def mono_mul(sig: Signature, a: Mono, b: Mono) -> Tuple[int, Optional[Mono]]:
    """Merge two canonical monomials, returning (Koszul sign, product).

    The sign is -1 to the number of odd/odd transpositions the merge performs;
    the product is None (with sign 0) when an odd generator would be squared.
    """
    n = len(sig)
    for m in (a, b):
        if m and m[-1][0] >= n:
            raise SignatureError(f"monomial {m} outside signature of {n} generators")
    if not a:
        return 1, b
    if not b:
        return 1, a
    degs = sig.generators
    # odd_suffix[k] = number of odd factors of a at positions >= k
    odd_suffix = [0] * (len(a) + 1)
    for k in range(len(a) - 1, -1, -1):
        odd_suffix[k] = odd_suffix[k + 1] + (degs[a[k][0]].degree % 2)
    out: List[Tuple[int, int]] = []
    sign = 1
    ai = bi = 0
    while ai < len(a) and bi < len(b):
        ia, ea = a[ai]
        ib, eb = b[bi]
        if ia < ib:
            out.append((ia, ea))
            ai += 1
        elif ia > ib:
            if degs[ib].degree % 2 and odd_suffix[ai] % 2:
                sign = -sign
            out.append((ib, eb))
            bi += 1
        else:
            if degs[ia].degree % 2:
                return 0, None
            out.append((ia, ea + eb))
            ai += 1
            bi += 1
    out.extend(a[ai:])
    out.extend(b[bi:])
    return sign, tuple(out)


def mono_from_factors(sig: Signature, indices: Sequence[int]) -> Tuple[int, Optional[Mono]]:
    """Fold an arbitrary factor sequence into canonical form with its sign."""
    sign, acc = 1, ONE_MONO
    for i in indices:
        s, acc = mono_mul(sig, acc, ((i, 1),))
        if acc is None:
            return 0, None
        sign *= s
    return sign, acc


# -- element arithmetic -------------------------------------------------------

def elem_zero() -> Elem:
    return {}

def elem_one() -> Elem:
    return {ONE_MONO: _ONE}

def elem_gen(sig: Signature, index: int) -> Elem:
    if not 0 <= index < len(sig):
        raise SignatureError(f"generator index {index} outside signature")
    return {((index, 1),): _ONE}

def elem_const(c) -> Elem:
    c = Fraction(c)
    return {ONE_MONO: c} if c else {}

def elem_copy(x: Elem) -> Elem:
    return dict(x)

def elem_is_zero(x: Elem) -> bool:
    return not x

def elem_neg(x: Elem) -> Elem:
    return {m: -c for m, c in x.items()}

def elem_scale(x: Elem, c) -> Elem:
    c = Fraction(c)
    if not c:
        return {}
    return {m: c * v for m, v in x.items()}

def elem_add(x: Elem, y: Elem) -> Elem:
    out = dict(x)
    for m, c in y.items():
        s = out.get(m, _ZERO) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out

def elem_sub(x: Elem, y: Elem) -> Elem:
    out = dict(x)
    for m, c in y.items():
        s = out.get(m, _ZERO) - c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out

def elem_mul(sig: Signature, x: Elem, y: Elem) -> Elem:
    out: Elem = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            sign, m = mono_mul(sig, ma, mb)
            if m is None:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out

def elem_pow(sig: Signature, x: Elem, e: int) -> Elem:
    if e < 0:
        raise ValueError("negative exponent")
    acc = elem_one()
    for _ in range(e):
        acc = elem_mul(sig, acc, x)
    return acc

def mono_elem(m: Mono, c=_ONE) -> Elem:
    c = Fraction(c)
    return {m: c} if c else {}


def elem_degree(sig: Signature, x: Elem) -> Optional[int]:
    """Degree of a homogeneous element; None for zero; raises on mixed degrees."""
    deg = None
    for m in x:
        d = mono_degree(sig, m)
        if deg is None:
            deg = d
        elif d != deg:
            raise ValueError("element is not homogeneous")
    return deg

def elem_is_homogeneous(sig: Signature, x: Elem) -> bool:
    degs = {mono_degree(sig, m) for m in x}
    return len(degs) <= 1


def linear_part(sig: Signature, x: Elem, subset=None) -> Dict[Generator, Fraction]:
    """Coefficients of the bare exponent-1 generator monomials of ``x``."""
    idxs = set(_as_indices(sig, subset))
    out = {}
    for m, c in x.items():
        if len(m) == 1 and m[0][1] == 1 and m[0][0] in idxs:
            out[sig.generators[m[0][0]]] = c
    return out


def in_lambda_geq2(sig: Signature, x: Elem, subset=None) -> bool:
    """True iff every monomial of ``x`` is a word of length >= 2 in ``subset``.

    Zero qualifies; any constant or linear term, or a factor outside the
    subset, disqualifies.
    """
    idxs = set(_as_indices(sig, subset))
    for m in x:
        if sum(e for _, e in m) < 2:
            return False
        if any(i not in idxs for i, _ in m):
            return False
    return True


def basis_monomials(sig: Signature, p: int, subset=None) -> List[Mono]:
    """All canonical monomials of total degree ``p`` over ``subset`` generators,
    sorted lexicographically by factor list."""
    if p < 0:
        raise ValueError("degree must be >= 0")
    idxs = _as_indices(sig, subset)
    out: List[Mono] = []
    acc: List[Tuple[int, int]] = []

    def rec(pos: int, remaining: int) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        if pos == len(idxs):
            return
        i = idxs[pos]
        d = sig.degree(i)
        rec(pos + 1, remaining)
        if d % 2 == 1:
            if d <= remaining:
                acc.append((i, 1))
                rec(pos + 1, remaining - d)
                acc.pop()
        else:
            e = 1
            while e * d <= remaining:
                acc.append((i, e))
                rec(pos + 1, remaining - e * d)
                acc.pop()
                e += 1

    rec(0, p)
    out.sort()
    return out
