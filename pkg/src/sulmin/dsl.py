"""Text format for algebra and module descriptions, and result emitters.

A source document is a sequence of newline-terminated statements:

    mode algebra            # optional header; "algebra" (default) or "module"
    gen x1:1                # declare a generator: name, colon, degree
    d x1 = v2 - 2*a1*b1     # assign its derivative
    # comment

Expressions are sums of terms; a term is an optional rational coefficient
(``2``, ``-1/2``) times ``*``-separated factors, each a declared generator
name with an optional ``^`` power, or a parenthesized subexpression.  Input
factor order is arbitrary: products normalize at parse time, picking up the
graded-commutativity sign, so for odd a and b the text ``b*a`` denotes
``-1 * a*b``.  In module mode an expression must be a linear combination of
generator names.

Every error carries a 1-based line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .at_model import DGModule, Lin
from .differential import DGAlgebra
from .graded_algebra import (
    Elem,
    Mono,
    Signature,
    elem_add,
    elem_const,
    elem_gen,
    elem_mul,
    elem_pow,
    elem_scale,
    mono_degree,
)
from .morphisms import FullContraction
from .minimal_model import contractible_summand


class DslError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# -- lexer --------------------------------------------------------------------

_SYMBOLS = set(":=+-*^/(){},")


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, SYM, NEWLINE, EOF
    text: str
    line: int
    col: int


def _lex(text: str) -> List[Token]:
    tokens: List[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
        elif ch.isdigit():
            start = i
            startcol = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("INT", text[start:i], line, startcol))
        elif ch.isalpha() or ch == "_":
            start = i
            startcol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("IDENT", text[start:i], line, startcol))
        elif ch in _SYMBOLS:
            tokens.append(Token("SYM", ch, line, col))
            i += 1
            col += 1
        else:
            raise DslError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("NEWLINE", "\n", line, col))
    tokens.append(Token("EOF", "", line + 1, 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at_sym(self, ch: str) -> bool:
        t = self.peek()
        return t.kind == "SYM" and t.text == ch

    def expect_sym(self, ch: str) -> Token:
        t = self.peek()
        if not self.at_sym(ch):
            raise DslError(f"expected {ch!r}", t.line, t.col)
        return self.next()

    def skip_newlines(self) -> None:
        while self.peek().kind == "NEWLINE":
            self.next()


# -- expression parsing -------------------------------------------------------

def _parse_uint(cur: _Cursor) -> Tuple[int, Token]:
    t = cur.peek()
    if t.kind != "INT":
        raise DslError("expected an unsigned integer", t.line, t.col)
    cur.next()
    return int(t.text), t


def _parse_coeff(cur: _Cursor) -> Fraction:
    num, _ = _parse_uint(cur)
    if cur.at_sym("/"):
        cur.next()
        den, t = _parse_uint(cur)
        if den == 0:
            raise DslError("zero denominator", t.line, t.col)
        return Fraction(num, den)
    return Fraction(num)


class _AlgebraEval:
    """Evaluate an expression straight into a canonical element."""

    def __init__(self, sig: Signature, declared: Dict[str, int]):
        self.sig = sig
        self.declared = declared

    def factor(self, cur: _Cursor) -> Elem:
        t = cur.peek()
        if t.kind == "IDENT":
            cur.next()
            if t.text not in self.declared:
                raise DslError(f"undeclared identifier {t.text!r}", t.line, t.col)
            base = elem_gen(self.sig, self.declared[t.text])
            if cur.at_sym("^"):
                cur.next()
                e, _ = _parse_uint(cur)
                return elem_pow(self.sig, base, e)
            return base
        if t.kind == "SYM" and t.text == "(":
            cur.next()
            inner = self.expr(cur)
            cur.expect_sym(")")
            if cur.at_sym("^"):
                cur.next()
                e, _ = _parse_uint(cur)
                return elem_pow(self.sig, inner, e)
            return inner
        raise DslError("expected a generator or '('", t.line, t.col)

    def term(self, cur: _Cursor) -> Elem:
        t = cur.peek()
        acc: Optional[Elem] = None
        if t.kind == "INT":
            acc = elem_const(_parse_coeff(cur))
            if cur.at_sym("*"):
                cur.next()
                acc = elem_mul(self.sig, acc, self.factor(cur))
            elif cur.peek().kind == "IDENT" or cur.at_sym("("):
                acc = elem_mul(self.sig, acc, self.factor(cur))
            else:
                return acc
        else:
            acc = self.factor(cur)
        while cur.at_sym("*"):
            cur.next()
            acc = elem_mul(self.sig, acc, self.factor(cur))
        return acc

    def expr(self, cur: _Cursor) -> Elem:
        t = cur.peek()
        negate = False
        if cur.at_sym("-"):
            cur.next()
            negate = True
        elif cur.at_sym("+"):
            cur.next()
        acc = self.term(cur)
        if negate:
            acc = elem_scale(acc, -1)
        while cur.at_sym("+") or cur.at_sym("-"):
            op = cur.next().text
            nxt = self.term(cur)
            if op == "-":
                nxt = elem_scale(nxt, -1)
            acc = elem_add(acc, nxt)
        return acc


class _ModuleEval:
    """Evaluate a linear expression into a generator -> coefficient map."""

    def __init__(self, declared: Dict[str, int]):
        self.declared = declared

    def term(self, cur: _Cursor) -> Lin:
        t = cur.peek()
        coeff = Fraction(1)
        saw_coeff = False
        if t.kind == "INT":
            coeff = _parse_coeff(cur)
            saw_coeff = True
            if cur.at_sym("*"):
                cur.next()
        t = cur.peek()
        if t.kind == "IDENT":
            cur.next()
            if t.text not in self.declared:
                raise DslError(f"undeclared identifier {t.text!r}", t.line, t.col)
            nxt = cur.peek()
            if nxt.kind == "SYM" and nxt.text in "*^(":
                raise DslError("nonlinear expression in module mode", nxt.line, nxt.col)
            return {self.declared[t.text]: coeff} if coeff else {}
        if saw_coeff:
            if coeff:
                raise DslError("constant term in a module differential", t.line, t.col)
            return {}
        raise DslError("expected a generator name", t.line, t.col)

    def expr(self, cur: _Cursor) -> Lin:
        negate = False
        if cur.at_sym("-"):
            cur.next()
            negate = True
        elif cur.at_sym("+"):
            cur.next()
        acc = self.term(cur)
        if negate:
            acc = {k: -v for k, v in acc.items()}
        while cur.at_sym("+") or cur.at_sym("-"):
            op = cur.next().text
            nxt = self.term(cur)
            if op == "-":
                nxt = {k: -v for k, v in nxt.items()}
            for k, v in nxt.items():
                s = acc.get(k, Fraction(0)) + v
                if s:
                    acc[k] = s
                elif k in acc:
                    del acc[k]
        return acc


# -- document parsing ---------------------------------------------------------

def parse(text: str) -> Union[DGAlgebra, DGModule]:
    """Parse a source document into an algebra or module description."""
    cur = _Cursor(_lex(text))
    mode = "algebra"
    names: Dict[str, int] = {}
    degrees: List[Tuple[str, int]] = []
    diffs_a: Dict[int, Elem] = {}
    diffs_m: Dict[int, Lin] = {}
    has_diff: set = set()
    seen_statement = False

    cur.skip_newlines()
    first = cur.peek()
    if first.kind == "IDENT" and first.text == "mode":
        cur.next()
        t = cur.peek()
        if t.kind != "IDENT" or t.text not in ("algebra", "module"):
            raise DslError("expected 'algebra' or 'module'", t.line, t.col)
        mode = t.text
        cur.next()
        _end_of_statement(cur)

    while True:
        cur.skip_newlines()
        t = cur.peek()
        if t.kind == "EOF":
            break
        if t.kind != "IDENT":
            raise DslError("expected a statement", t.line, t.col)
        if t.text == "gen":
            cur.next()
            name_tok = cur.peek()
            if name_tok.kind != "IDENT":
                raise DslError("expected a generator name", name_tok.line, name_tok.col)
            cur.next()
            if name_tok.text in names:
                raise DslError(f"duplicate declaration of {name_tok.text!r}",
                               name_tok.line, name_tok.col)
            cur.expect_sym(":")
            deg, deg_tok = _parse_uint(cur)
            if mode == "algebra" and deg < 1:
                raise DslError("degree 0 generator in algebra mode",
                               deg_tok.line, deg_tok.col)
            _end_of_statement(cur)
            names[name_tok.text] = len(degrees)
            degrees.append((name_tok.text, deg))
        elif t.text == "d":
            cur.next()
            name_tok = cur.peek()
            if name_tok.kind != "IDENT":
                raise DslError("expected a generator name", name_tok.line, name_tok.col)
            cur.next()
            if name_tok.text not in names:
                raise DslError(f"undeclared identifier {name_tok.text!r}",
                               name_tok.line, name_tok.col)
            idx = names[name_tok.text]
            if idx in has_diff:
                raise DslError(f"duplicate differential for {name_tok.text!r}",
                               name_tok.line, name_tok.col)
            cur.expect_sym("=")
            if mode == "algebra":
                sig = Signature.from_pairs(degrees)
                value = _AlgebraEval(sig, names).expr(cur)
                _end_of_statement(cur)
                has_diff.add(idx)
                if value:
                    diffs_a[idx] = value
            else:
                value = _ModuleEval(names).expr(cur)
                _end_of_statement(cur)
                has_diff.add(idx)
                if value:
                    diffs_m[idx] = value
        elif t.text == "mode":
            raise DslError("mode header must be the first statement", t.line, t.col)
        else:
            raise DslError(f"unknown statement {t.text!r}", t.line, t.col)

    if mode == "algebra":
        sig = Signature.from_pairs(degrees)
        return DGAlgebra(sig, diffs_a)
    return DGModule(tuple(degrees), diffs_m)


def _end_of_statement(cur: _Cursor) -> None:
    t = cur.peek()
    if t.kind == "NEWLINE":
        cur.next()
        return
    if t.kind == "EOF":
        return
    raise DslError("expected end of statement", t.line, t.col)


def parse_expression(sig: Signature, text: str) -> Elem:
    """Parse a single expression against an existing signature (test helper)."""
    cur = _Cursor(_lex(text))
    cur.skip_newlines()
    declared = {g.name: g.index for g in sig.generators}
    value = _AlgebraEval(sig, declared).expr(cur)
    t = cur.peek()
    if t.kind not in ("NEWLINE", "EOF"):
        raise DslError("trailing input after expression", t.line, t.col)
    return value


# -- emission -----------------------------------------------------------------

def _term_key(sig: Signature, m: Mono):
    expanded = tuple(i for i, e in m for _ in range(e))
    return (mono_degree(sig, m), expanded)


def format_element(sig: Signature, x: Elem) -> str:
    """Canonical text for an element: ascending degree, then lexicographic."""
    if not x:
        return "0"
    parts: List[str] = []
    for m in sorted(x, key=lambda mm: _term_key(sig, mm)):
        c = x[m]
        mag = abs(c)
        if not m:
            body = str(mag)
        else:
            factors = "*".join(
                sig.name(i) if e == 1 else f"{sig.name(i)}^{e}" for i, e in m)
            body = factors if mag == 1 else f"{mag}*{factors}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def format_linear(M: DGModule, x: Lin) -> str:
    if not x:
        return "0"
    parts: List[str] = []
    for i in sorted(x):
        c = x[i]
        mag = abs(c)
        body = M.name(i) if mag == 1 else f"{mag}*{M.name(i)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def emit_machine(c: FullContraction) -> str:
    """Machine-readable result document; expressions re-parse bit-exactly."""
    sig = c.sig
    doc = MachineDocument(
        W=tuple(c.W),
        dW={w: dict(c.dW.get(w, {})) for w in c.W},
        f={i: dict(c.f.table[i]) for i in range(len(sig))},
        g={w: dict(c.g.table[w]) for w in c.W},
        phi={i: dict(c.phi.table[i]) for i in range(len(sig))},
        pairs=tuple(c.pairs),
    )
    return render_machine(sig, doc)


@dataclass(frozen=True)
class MachineDocument:
    W: Tuple[int, ...]
    dW: Mapping[int, Elem]
    f: Mapping[int, Elem]
    g: Mapping[int, Elem]
    phi: Mapping[int, Elem]
    pairs: Tuple[Tuple[int, int], ...]


def render_machine(sig: Signature, doc: MachineDocument) -> str:
    lines = ["W = {" + ", ".join(sig.name(w) for w in doc.W) + "}"]
    for w in doc.W:
        lines.append(f"dW {sig.name(w)} = {format_element(sig, doc.dW.get(w, {}))}")
    for i in sorted(doc.f):
        lines.append(f"f {sig.name(i)} = {format_element(sig, doc.f[i])}")
    for w in doc.W:
        lines.append(f"g {sig.name(w)} = {format_element(sig, doc.g[w])}")
    for i in sorted(doc.phi):
        lines.append(f"phi {sig.name(i)} = {format_element(sig, doc.phi[i])}")
    for i, j in doc.pairs:
        lines.append(f"pair {sig.name(i)} {sig.name(j)}")
    return "\n".join(lines) + "\n"


def parse_machine(text: str, sig: Signature) -> MachineDocument:
    """Re-read a machine document against the signature it was emitted for."""
    cur = _Cursor(_lex(text))
    declared = {g.name: g.index for g in sig.generators}
    ev = _AlgebraEval(sig, declared)
    W: List[int] = []
    dW: Dict[int, Elem] = {}
    f: Dict[int, Elem] = {}
    g: Dict[int, Elem] = {}
    phi: Dict[int, Elem] = {}
    pairs: List[Tuple[int, int]] = []

    def read_name(cur: _Cursor) -> int:
        t = cur.peek()
        if t.kind != "IDENT" or t.text not in declared:
            raise DslError("expected a generator name", t.line, t.col)
        cur.next()
        return declared[t.text]

    while True:
        cur.skip_newlines()
        t = cur.peek()
        if t.kind == "EOF":
            break
        if t.kind != "IDENT":
            raise DslError("expected a result statement", t.line, t.col)
        kw = t.text
        cur.next()
        if kw == "W":
            cur.expect_sym("=")
            cur.expect_sym("{")
            while not cur.at_sym("}"):
                W.append(read_name(cur))
                if cur.at_sym(","):
                    cur.next()
            cur.expect_sym("}")
            _end_of_statement(cur)
        elif kw in ("dW", "f", "g", "phi"):
            idx = read_name(cur)
            cur.expect_sym("=")
            value = ev.expr(cur)
            _end_of_statement(cur)
            {"dW": dW, "f": f, "g": g, "phi": phi}[kw][idx] = value
        elif kw == "pair":
            i = read_name(cur)
            j = read_name(cur)
            _end_of_statement(cur)
            pairs.append((i, j))
        else:
            raise DslError(f"unknown result statement {kw!r}", t.line, t.col)
    return MachineDocument(tuple(W), dW, f, g, phi, tuple(pairs))


def emit_report(c: FullContraction) -> str:
    """Human-readable result table, one row per source generator."""
    sig = c.sig
    in_w = set(c.W)
    headers = ["generator", "W", "dW", "f", "g", "phi"]
    rows = []
    for gen in sig.generators:
        i = gen.index
        rows.append([
            f"{gen.name} (deg {gen.degree})",
            gen.name if i in in_w else "",
            format_element(sig, c.dW.get(i, {})) if i in in_w else "",
            format_element(sig, c.f.table[i]),
            format_element(sig, c.g.table[i]) if i in in_w else "",
            format_element(sig, c.phi.table[i]),
        ])
    widths = [max(len(headers[k]), *(len(r[k]) for r in rows)) if rows else len(headers[k])
              for k in range(len(headers))]
    lines = []
    lines.append(" | ".join(h.ljust(widths[k]) for k, h in enumerate(headers)).rstrip())
    lines.append("-+-".join("-" * widths[k] for k in range(len(headers))))
    for r in rows:
        lines.append(" | ".join(r[k].ljust(widths[k]) for k in range(len(headers))).rstrip())
    if c.pairs:
        lines.append("")
        lines.append("pairs:")
        for i, j in c.pairs:
            lines.append(f"  ({sig.name(i)}, {sig.name(j)})")
        lines.append("contractible basis:")
        for gen, du in contractible_summand(c):
            lines.append(f"  {gen.name}  d({gen.name}) = {format_element(sig, du)}")
    else:
        lines.append("")
        lines.append("pairs: none (input already minimal)")
    return "\n".join(lines) + "\n"
