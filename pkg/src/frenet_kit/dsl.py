"""A small expression language for parametric curves.

Grammar::

    curve  := "[" expr ("," expr)+ "]"
    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          # right-associative, constant exponent
    atom   := number | "t" | fn "(" expr ")" | "(" expr ")"
    fn     := "sin" | "cos" | "exp" | "log" | "sqrt"

Numbers are decimal with an optional exponent (``2``, ``0.5``, ``1e-3``).
There is no implicit multiplication: ``2t`` is an error, write ``2*t``.

    >>> spec = parse_curve("[cos(t), sin(t), 0.5*t]")
    >>> spec.n
    3
    >>> pretty(spec)
    '[cos(t), sin(t), 0.5*t]'
"""

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from . import jets
from .errors import ArityError, DivisionByZeroConstantTerm, DomainError, ParseError
from .jets import Jet

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Pow", "Call",
    "CurveExpr", "CurveSpec",
    "parse_curve", "parse_expr", "pretty", "pretty_expr",
    "evaluate", "eval_components", "eval_point", "fold_constants",
    "substitute", "FUNCTIONS",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")

Span = Tuple[int, int]


# -- AST ----------------------------------------------------------------------
# Spans are excluded from equality so that re-parsed trees compare equal.

@dataclass(frozen=True)
class Num:
    value: float
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"
    span: Span = field(default=(0, 0), compare=False, repr=False)


Node = Union[Num, Var, Neg, BinOp, Pow, Call]


@dataclass(frozen=True)
class CurveExpr:
    """One coordinate function of a curve."""

    ast: Node
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class CurveSpec:
    """Parsed curve ``t -> (x_1(t), ..., x_n(t))`` with its sampling domain."""

    components: Tuple[CurveExpr, ...]
    t_min: float = -math.inf
    t_max: float = math.inf
    label: Optional[str] = None

    def __post_init__(self):
        if len(self.components) < 2:
            raise ArityError(
                f"a curve needs at least 2 components, got {len(self.components)}")
        if not self.t_min < self.t_max:
            raise ValueError(
                f"empty parameter domain: t_min={self.t_min} >= t_max={self.t_max}")

    @property
    def n(self):
        return len(self.components)

    def with_domain(self, t_min, t_max):
        return CurveSpec(self.components, float(t_min), float(t_max), self.label)

    def __str__(self):
        return pretty(self)


# -- lexer --------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str      # "num", "ident", "op", "eof"
    text: str
    pos: int

    def describe(self):
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}",
                             pos, ("expression",), repr(text[pos]), text)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


# -- parser -------------------------------------------------------------------

_EXPR_START = ("number", "'t'", "function call", "'('", "'-'")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected, what=None):
        tok = self.tok
        what = what or "expected " + " or ".join(expected)
        raise ParseError(f"{what} at position {tok.pos}, found {tok.describe()}",
                         tok.pos, expected, tok.describe(), self.text)

    def expect_op(self, sym):
        if self.tok.kind == "op" and self.tok.text == sym:
            return self.advance()
        self.fail((repr(sym),))

    def at_op(self, *syms):
        return self.tok.kind == "op" and self.tok.text in syms

    def curve(self):
        self.expect_op("[")
        comps = [self.component()]
        while self.at_op(","):
            self.advance()
            comps.append(self.component())
        if not self.at_op("]"):
            self.fail(("','", "']'", "operator"))
        self.advance()
        if self.tok.kind != "eof":
            self.fail(("end of input",))
        return comps

    def component(self):
        start = self.tok.pos
        node = self.expr()
        return CurveExpr(node, (start, self.toks[self.i - 1].pos
                                + len(self.toks[self.i - 1].text)))

    def end_of_prev(self):
        prev = self.toks[self.i - 1]
        return prev.pos + len(prev.text)

    def expr(self):
        start = self.tok.pos
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = _respan(BinOp(op, node, self.term()), start, self.end_of_prev())
        return node

    def term(self):
        start = self.tok.pos
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = _respan(BinOp(op, node, self.unary()), start, self.end_of_prev())
        return node

    def unary(self):
        if self.at_op("-"):
            start = self.advance().pos
            return _respan(Neg(self.unary()), start, self.end_of_prev())
        return self.power()

    def power(self):
        start = self.tok.pos
        base = self.atom()
        if not self.at_op("^"):
            return base
        self.advance()
        exp_start = self.tok.pos
        exponent = self.unary()
        if _has_var(exponent):
            raise ParseError(
                f"exponent must be constant (no 't') at position {exp_start}",
                exp_start, ("constant exponent",), "'t'", self.text)
        try:
            _const_value(exponent)
        except (DomainError, ZeroDivisionError, OverflowError) as exc:
            raise ParseError(f"exponent does not evaluate to a finite constant: {exc}",
                             exp_start, ("constant exponent",), "invalid constant",
                             self.text) from None
        return _respan(Pow(base, exponent), start, self.end_of_prev())

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise ParseError(f"number out of range at position {tok.pos}",
                                 tok.pos, ("finite number",), tok.describe(), self.text)
            return Num(value, (tok.pos, tok.pos + len(tok.text)))
        if tok.kind == "ident":
            if tok.text == "t":
                self.advance()
                return Var((tok.pos, tok.pos + 1))
            if tok.text in FUNCTIONS:
                self.advance()
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(tok.text, arg, (tok.pos, self.end_of_prev()))
            self.fail(("'t'",) + tuple(repr(f) for f in FUNCTIONS),
                      f"unknown name {tok.text!r}")
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail(_EXPR_START, "expected expression")


def _respan(node, start, end):
    return type(node)(*[getattr(node, f) for f in node.__dataclass_fields__
                        if f != "span"], span=(start, end))


def parse_curve(text, t_min=-math.inf, t_max=math.inf, label=None):
    """Parse ``"[e1, e2, ...]"`` into a :class:`CurveSpec`.

    The parameter domain is not part of the curve text; pass it here.

    Raises
    ------
    ParseError
        With the 0-based position of the offending token.
    ArityError
        If fewer than two components are given.
    """
    if not text or not text.strip():
        raise ParseError("empty curve text", 0, ("'['",), "end of input", text or "")
    comps = _Parser(text).curve()
    if len(comps) < 2:
        raise ArityError(f"a curve needs at least 2 components, got {len(comps)}")
    return CurveSpec(tuple(comps), float(t_min), float(t_max), label)


def parse_expr(text):
    """Parse a single expression in ``t``."""
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "eof":
        p.fail(("operator", "end of input"))
    return node


# -- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _fmt_num(v):
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg) or (isinstance(node, Num) and node.value < 0):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _show(node, need=0):
    if isinstance(node, Num):
        s = _fmt_num(node.value)
    elif isinstance(node, Var):
        s = "t"
    elif isinstance(node, Call):
        s = f"{node.fn}({_show(node.arg)})"
    elif isinstance(node, Neg):
        s = "-" + _show(node.operand, 3)
    elif isinstance(node, Pow):
        s = _show(node.base, 5) + "^" + _show(node.exponent, 3)
    elif isinstance(node, BinOp):
        p = _PREC[node.op]
        sep = f" {node.op} " if p == 1 else node.op
        s = _show(node.left, p) + sep + _show(node.right, p + 1)
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return f"({s})" if _prec(node) < need else s


def pretty_expr(node):
    return _show(node)


def pretty(spec):
    """Render a :class:`CurveSpec` back to curve text."""
    return "[" + ", ".join(_show(c.ast) for c in spec.components) + "]"


# -- evaluation ---------------------------------------------------------------

def _float_pow(x, e):
    if e.is_integer():
        if x == 0.0 and e < 0:
            raise DivisionByZeroConstantTerm("negative power of zero")
        return x ** int(e)
    if not x > 0.0:
        raise DomainError(f"non-integer power {e!r} of non-positive value {x!r}", value=x)
    return x ** e


def _float_fn(name, x):
    if name == "log" and not x > 0.0:
        raise DomainError(f"log of non-positive value {x!r}", value=x)
    if name == "sqrt" and not x > 0.0:
        # sqrt(0) has no derivative, so it is rejected here too
        raise DomainError(f"sqrt of non-positive value {x!r}", value=x)
    return getattr(math, name)(x)


def evaluate(node, x):
    """Evaluate an expression at ``x``, a float or a :class:`Jet`."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -evaluate(node.operand, x)
    if isinstance(node, BinOp):
        a = evaluate(node.left, x)
        b = evaluate(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if isinstance(b, float) and b == 0.0:
            raise DivisionByZeroConstantTerm("division by zero")
        return a / b
    if isinstance(node, Pow):
        e = _const_value(node.exponent)
        base = evaluate(node.base, x)
        if isinstance(base, Jet):
            return jets.power(base, e)
        return _float_pow(base, e)
    if isinstance(node, Call):
        arg = evaluate(node.arg, x)
        if isinstance(arg, Jet):
            return getattr(jets, node.fn)(arg)
        return _float_fn(node.fn, arg)
    raise TypeError(f"not an expression node: {node!r}")


def _has_var(node):
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return _has_var(node.operand)
    if isinstance(node, BinOp):
        return _has_var(node.left) or _has_var(node.right)
    if isinstance(node, Pow):
        return _has_var(node.base) or _has_var(node.exponent)
    return _has_var(node.arg)


def _const_value(node):
    v = float(evaluate(node, 0.0))
    if not math.isfinite(v):
        raise OverflowError("constant is not finite")
    return v


def fold_constants(node):
    """Replace every ``t``-free subtree by a single :class:`Num`."""
    if not _has_var(node):
        return Num(_const_value(node), node.span)
    if isinstance(node, Var):
        return node
    if isinstance(node, Neg):
        return Neg(fold_constants(node.operand), node.span)
    if isinstance(node, BinOp):
        return BinOp(node.op, fold_constants(node.left), fold_constants(node.right),
                     node.span)
    if isinstance(node, Pow):
        return Pow(fold_constants(node.base), Num(_const_value(node.exponent)),
                   node.span)
    return Call(node.fn, fold_constants(node.arg), node.span)


def substitute(node, replacement):
    """Return ``node`` with every ``t`` replaced by ``replacement``."""
    if isinstance(node, Var):
        return replacement
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, replacement))
    if isinstance(node, BinOp):
        return BinOp(node.op, substitute(node.left, replacement),
                     substitute(node.right, replacement))
    if isinstance(node, Pow):
        return Pow(substitute(node.base, replacement), node.exponent)
    return Call(node.fn, substitute(node.arg, replacement))


def _evaluate_component(spec, index, x, t0):
    try:
        return evaluate(spec.components[index].ast, x)
    except (DomainError, ZeroDivisionError) as exc:
        raise DomainError(f"component {index + 1} undefined at t={t0!r}: {exc}",
                          value=getattr(exc, "value", None),
                          component=index + 1, t0=t0) from exc


def eval_components(spec, t0, order, x=None):
    """Taylor-expand every component of ``spec`` at ``t0`` to ``order``.

    ``x`` optionally replaces the identity jet, which composes the curve
    with another jet (used for reparametrizations).
    """
    if not spec.t_min <= t0 <= spec.t_max:
        raise DomainError(
            f"t={t0!r} outside the curve domain [{spec.t_min}, {spec.t_max}]", t0=t0)
    if x is None:
        x = jets.jet_variable(t0, order)
    out = []
    for i in range(spec.n):
        v = _evaluate_component(spec, i, x, t0)
        out.append(v if isinstance(v, Jet) else jets.jet_constant(v, x.order))
    return out


def eval_point(spec, t):
    """Position of the curve at ``t`` as a list of floats."""
    return [float(_evaluate_component(spec, i, float(t), t)) for i in range(spec.n)]
