"""The input language: tokenizer, parser, name resolution and canonical printer.

A document is a sequence of line-oriented declarations::

    chart A dim 1 axes (z)
    pair P on A { (2/3) coord 1 }
    monomial g : Ah -> A matrix [[6]]
    check adapted-sheaf 1 1 g P

Blocks in braces hold ``;``- or newline-separated entries.  Multiplicities
are written as a standard coefficient ``(a/b)`` or as ``m=K`` with ``K`` an
integer or ``inf``.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import CurveCover, OrbifoldCurve
from .divisors import INF, CPairBoundary, PrimeDivisor, QDivisor, as_cpair, format_ext
from .errors import CPairError, NotStandardCoefficient, ParseError, SemanticError
from .geometry import Chart, DivisorialMorphism, MonomialCover

__all__ = [
    "Document", "parse", "serialize", "CHECK_SIGNATURES",
    "ChartDecl", "PairDecl", "PairEntry", "MonomialDecl", "MorphismDecl",
    "CurveDecl", "CoverDecl", "CheckDecl", "Environment",
]

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z_][A-Za-z0-9_']*)*)
  | (?P<punct>[{}();:=*+\-/\[\],])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, pos - start + 1))
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


# Declarations.  Source locations never take part in equality.

def _loc():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass
class ChartDecl:
    name: str
    dim: int
    axes: tuple
    loc: tuple = _loc()


@dataclass
class PairEntry:
    prime: tuple          # ("coord", i) or ("name", s)
    mult: object          # int or INF
    loc: tuple = _loc()


@dataclass
class PairDecl:
    name: str
    chart: str | None
    entries: list
    loc: tuple = _loc()


@dataclass
class MonomialDecl:
    name: str
    source: str
    target: str
    matrix: tuple
    loc: tuple = _loc()


@dataclass
class MorphismDecl:
    name: str
    source: str
    target: str
    pullbacks: list        # [(target name, terms)]
    exceptional: list
    k_source: tuple | None
    k_target: tuple | None
    image_not_in_boundary: bool
    splits: list           # [(parent, parts)]
    local: list            # [(component, terms)]
    loc: tuple = _loc()


@dataclass
class CurveDecl:
    name: str
    genus: int
    points: list           # [(name, mult)]
    loc: tuple = _loc()


@dataclass
class CoverDecl:
    name: str
    curve: str
    degree: int
    profiles: list         # [(point, parts)]
    loc: tuple = _loc()


@dataclass
class CheckDecl:
    kind: str
    args: tuple
    loc: tuple = _loc()
    arg_locs: tuple = field(default=(), compare=False, repr=False)

    def arg_loc(self, i):
        return self.arg_locs[i] if i < len(self.arg_locs) else self.loc


@dataclass
class Document:
    declarations: list
    env: object = field(default=None, compare=False, repr=False)

    @property
    def checks(self):
        return [d for d in self.declarations if isinstance(d, CheckDecl)]


# Check signatures: argument kinds in order.  ``int`` is a positive integer,
# ``word`` a bare identifier; other kinds name declarations.
CHECK_SIGNATURES = {
    "classify": [("mono", "pair")],
    "adapted-sheaf": [("int", "int", "mono", "pair")],
    "oracle": [("int", "int", "mono", "pair")],
    "inclusions": [("int", "int", "mono", "pair")],
    "residue": [("mono", "pair")],
    "sym-product": [("int", "int", "int", "mono", "pair")],
    "functoriality": [("int", "int", "mono", "mono", "pair")],
    "differential": [("mono", "pair", "ints")],
    "cyclic-cover": [("pair",)],
    "restrict": [("pair", "int")],
    "quotient": [("morph", "pair"), ("mono", "pair")],
    "orbifold": [("morph",), ("mono", "pair", "pair")],
    "local-orbifold": [("morph",)],
    "nc-cmorphism": [("morph", "at", "word")],
    "pluricanonical": [("int", "morph")],
    "compare": [("pair", "pair")],
    "log-canonical": [("morph",)],
    "b-birational": [("morph", "morph")],
    "chern": [("pair",)],
    "curve": [("curve",)],
    "cover": [("cover",)],
    "sweep": [("word", "int")],
}


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        shown = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {shown}", tok.line, tok.col)

    def accept(self, text):
        if self.peek().text == text and self.peek().kind != "eof":
            return self.next()
        return None

    def expect(self, text):
        tok = self.accept(text)
        if tok is None:
            raise self.error(f"expected {text!r}")
        return tok

    def expect_kind(self, kind, what):
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what}")
        return self.next()

    def name(self, what="a name"):
        return self.expect_kind("name", what)

    def integer(self, what="an integer"):
        return int(self.expect_kind("num", what).text)

    def skip_newlines(self):
        while self.peek().kind == "nl" or self.peek().text == ";":
            self.next()

    def end_of_statement(self):
        tok = self.peek()
        if tok.kind == "eof":
            return
        if tok.kind != "nl":
            raise self.error("expected end of line")
        self.next()

    # grammar

    def document(self):
        decls = []
        while True:
            while self.peek().kind == "nl":
                self.next()
            tok = self.peek()
            if tok.kind == "eof":
                return Document(decls)
            handler = getattr(self, "decl_" + tok.text, None) if tok.kind == "name" else None
            if handler is None:
                raise self.error("expected a declaration (chart, pair, monomial, morphism, curve, cover, check)")
            self.next()
            decls.append(handler((tok.line, tok.col)))
            self.end_of_statement()

    def decl_chart(self, loc):
        name = self.name("a chart name").text
        self.expect("dim")
        dim = self.integer("a dimension")
        axes = ()
        if self.accept("axes"):
            self.expect("(")
            axes = [self.name("an axis name").text]
            while self.accept(","):
                axes.append(self.name("an axis name").text)
            self.expect(")")
        return ChartDecl(name, dim, tuple(axes), loc)

    def multiplicity(self):
        """``(a/b)`` or ``m=K``; returns ``(kind, value, token)``."""
        tok = self.peek()
        if self.accept("("):
            value = self.rational()
            self.expect(")")
            return "coeff", value, tok
        if tok.kind == "num":
            return "coeff", self.rational(), tok
        if tok.text == "m" and self.peek(1).text == "=":
            self.next()
            self.next()
            if self.accept("inf"):
                return "mult", INF, tok
            return "mult", self.integer("a multiplicity"), tok
        raise self.error("expected a coefficient '(a/b)' or a multiplicity 'm=K'")

    def rational(self):
        sign = -1 if self.accept("-") else 1
        num = self.integer("a number")
        den = 1
        if self.accept("/"):
            den = self.integer("a denominator")
            if den == 0:
                raise self.error("zero denominator", self.tokens[self.pos - 1])
        return sign * Fraction(num, den)

    def block(self, entry):
        self.expect("{")
        items = []
        while True:
            self.skip_newlines()
            if self.accept("}"):
                return items
            items.append(entry())
            tok = self.peek()
            if tok.text not in (";", "}") and tok.kind != "nl":
                raise self.error("expected ';', a new line or '}'")

    def decl_pair(self, loc):
        name = self.name("a pair name").text
        chart = self.name("a chart name").text if self.accept("on") else None

        def entry():
            kind, value, tok = self.multiplicity()
            if self.accept("coord"):
                prime = ("coord", self.integer("an axis index"))
            else:
                prime = ("name", self.name("a prime name").text)
            return PairEntry(prime, (kind, value), (tok.line, tok.col))

        return PairDecl(name, chart, self.block(entry), loc)

    def decl_monomial(self, loc):
        name = self.name("a map name").text
        self.expect(":")
        source = self.name("a chart name").text
        self.expect("->")
        target = self.name("a chart name").text
        self.expect("matrix")
        self.expect("[")
        rows = []
        while True:
            while self.peek().kind == "nl":
                self.next()
            self.expect("[")
            row = [self.integer("a matrix entry")]
            while self.accept(","):
                row.append(self.integer("a matrix entry"))
            self.expect("]")
            rows.append(tuple(row))
            while self.peek().kind == "nl":
                self.next()
            if self.accept("]"):
                break
            self.expect(",")
        return MonomialDecl(name, source, target, tuple(rows), loc)

    def divisor(self):
        """A signed sum of ``coef*NAME`` terms; ``0`` is the empty sum."""
        terms = []
        sign = -1 if self.accept("-") else 1
        while True:
            tok = self.peek()
            if tok.kind == "num" and tok.text == "0" and self.peek(1).text != "*" \
                    and self.peek(1).text != "/":
                self.next()
            else:
                coeff = Fraction(1)
                if tok.kind == "num" or tok.text == "(":
                    paren = self.accept("(")
                    coeff = self.rational()
                    if paren:
                        self.expect(")")
                    self.expect("*")
                terms.append((self.name("a prime name").text, sign * coeff))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return tuple(terms)

    def decl_morphism(self, loc):
        name = self.name("a morphism name").text
        self.expect(":")
        source = self.name("a pair name").text
        self.expect("->")
        target = self.name("a pair name").text
        decl = MorphismDecl(name, source, target, [], [], None, None, False, [], [], loc)

        def entry():
            tok = self.name("a morphism statement")
            word = tok.text
            if word == "pullback":
                prime = self.name("a target prime").text
                self.expect("=")
                decl.pullbacks.append((prime, self.divisor()))
            elif word == "exceptional":
                decl.exceptional.append(self.name("a prime name").text)
                while self.accept(","):
                    decl.exceptional.append(self.name("a prime name").text)
            elif word in ("K_source", "K_target"):
                self.expect("=")
                setattr(decl, word.lower(), self.divisor())
            elif word == "image-not-in-boundary":
                decl.image_not_in_boundary = True
            elif word == "split":
                parent = self.name("a prime name").text
                self.expect("=")
                parts = [self.name("a component name").text]
                while self.accept("+"):
                    parts.append(self.name("a component name").text)
                decl.splits.append((parent, tuple(parts)))
            elif word == "local":
                comp = self.name("a component name").text
                self.expect("=")
                decl.local.append((comp, self.divisor()))
            else:
                raise self.error("unknown morphism statement", tok)

        self.block(entry)
        return decl

    def decl_curve(self, loc):
        name = self.name("a curve name").text
        self.expect("genus")
        genus = self.integer("a genus")

        def entry():
            point = self.name("a point name").text
            kind, value, tok = self.multiplicity()
            return (point, (kind, value), (tok.line, tok.col))

        return CurveDecl(name, genus, self.block(entry), loc)

    def decl_cover(self, loc):
        name = self.name("a cover name").text
        self.expect("of")
        curve = self.name("a curve name").text
        self.expect("degree")
        degree = self.integer("a degree")

        def entry():
            point = self.name("a point name").text
            self.expect("(")
            parts = [self.integer("a ramification index")]
            while self.accept(","):
                parts.append(self.integer("a ramification index"))
            self.expect(")")
            return (point, tuple(parts))

        return CoverDecl(name, curve, degree, self.block(entry), loc)

    def decl_check(self, loc):
        kind = self.name("a check kind")
        if kind.text not in CHECK_SIGNATURES:
            raise ParseError(f"unknown check kind {kind.text!r}", kind.line, kind.col)
        args, locs = [], []
        while self.peek().kind in ("name", "num"):
            tok = self.next()
            args.append(tok.text)
            locs.append((tok.line, tok.col))
        return CheckDecl(kind.text, tuple(args), loc, tuple(locs))


# Name resolution

@dataclass
class PairInfo:
    chart: Chart | None
    boundary: CPairBoundary
    primes: tuple


@dataclass
class MorphismInfo:
    phi: DivisorialMorphism
    source: str
    target: str
    image_not_in_boundary: bool
    target_splits: dict
    source_splits: dict
    local_pullbacks: dict


@dataclass
class Environment:
    charts: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    monomials: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    covers: dict = field(default_factory=dict)

    def kind_of(self, name):
        for kind, table in (("chart", self.charts), ("pair", self.pairs), ("mono", self.monomials),
                            ("morph", self.morphisms), ("curve", self.curves),
                            ("cover", self.covers)):
            if name in table:
                return kind
        return None


def _multiplicity(kind, value, loc):
    if kind == "mult":
        if value != INF and value < 1:
            raise SemanticError(f"multiplicity {value} must be at least 1", *loc)
        return value
    if value == 0:
        return 1
    try:
        return as_cpair(QDivisor({"_": value})).multiplicity("_")
    except NotStandardCoefficient:
        raise SemanticError(
            f"coefficient {format_ext(value)} is not of the form (m-1)/m", *loc,
            kind="NotStandardCoefficient") from None


def _resolve(doc):
    env = Environment()

    def fresh(name, loc):
        if env.kind_of(name):
            raise SemanticError(f"name {name!r} is already declared", *loc)

    def lookup(name, kinds, loc):
        kind = env.kind_of(name)
        if kind not in kinds:
            want = " or ".join(kinds)
            raise SemanticError(f"unknown {want} {name!r}", *loc)
        return kind

    for d in doc.declarations:
        try:
            _resolve_one(d, env, fresh, lookup)
        except SemanticError:
            raise
        except CPairError as exc:
            raise SemanticError(str(exc), *d.loc, kind=type(exc).__name__) from None
        except ValueError as exc:
            raise SemanticError(str(exc), *d.loc) from None
    return env


def _divisor(terms, names):
    return QDivisor({names.get(n) or PrimeDivisor(n): c for n, c in terms})


def _resolve_one(d, env, fresh, lookup):
    if isinstance(d, ChartDecl):
        fresh(d.name, d.loc)
        env.charts[d.name] = Chart(d.name, d.dim, d.axes)
    elif isinstance(d, PairDecl):
        fresh(d.name, d.loc)
        chart = None
        if d.chart is not None:
            lookup(d.chart, ["chart"], d.loc)
            chart = env.charts[d.chart]
        mult, primes = {}, []
        for e in d.entries:
            if e.prime[0] == "coord":
                if chart is None:
                    raise SemanticError("coordinate primes need a chart ('pair NAME on CHART')", *e.loc)
                try:
                    prime = chart.hyperplane(e.prime[1])
                except CPairError as exc:
                    raise SemanticError(str(exc), *e.loc, kind=type(exc).__name__) from None
            else:
                prime = PrimeDivisor(e.prime[1])
            if prime in mult:
                raise SemanticError(f"prime {prime} listed twice", *e.loc)
            mult[prime] = _multiplicity(*e.mult, e.loc)
            primes.append(prime)
        env.pairs[d.name] = PairInfo(chart, CPairBoundary(mult), tuple(primes))
    elif isinstance(d, MonomialDecl):
        fresh(d.name, d.loc)
        lookup(d.source, ["chart"], d.loc)
        lookup(d.target, ["chart"], d.loc)
        env.monomials[d.name] = MonomialCover(
            env.charts[d.source], env.charts[d.target], d.matrix, name=d.name)
    elif isinstance(d, MorphismDecl):
        fresh(d.name, d.loc)
        lookup(d.source, ["pair"], d.loc)
        lookup(d.target, ["pair"], d.loc)
        env.morphisms[d.name] = _resolve_morphism(d, env)
    elif isinstance(d, CurveDecl):
        fresh(d.name, d.loc)
        pts = tuple((n, _multiplicity(*m, loc)) for n, m, loc in d.points)
        pts = tuple(p for p in pts if p[1] != 1)
        env.curves[d.name] = OrbifoldCurve(d.genus, pts)
    elif isinstance(d, CoverDecl):
        fresh(d.name, d.loc)
        lookup(d.curve, ["curve"], d.loc)
        env.covers[d.name] = (d.curve, CurveCover(d.degree, tuple(d.profiles)))
    elif isinstance(d, CheckDecl):
        _check_args(d, env, lookup)


def _resolve_morphism(d, env):
    src, tgt = env.pairs[d.source], env.pairs[d.target]
    src_names = {p.name: p for p in src.primes}
    tgt_names = {p.name: p for p in tgt.primes}
    split_parts = {c for _, parts in d.splits for c in parts}
    source_order = list(src.primes)
    target_order = list(tgt.primes)

    def add(order, names, prime_name):
        if prime_name in split_parts:
            return
        p = names.setdefault(prime_name, PrimeDivisor(prime_name))
        if p not in order:
            order.append(p)

    for t, terms in d.pullbacks:
        add(target_order, tgt_names, t)
        for n, _ in terms:
            add(source_order, src_names, n)
    for n in d.exceptional:
        add(source_order, src_names, n)
    for n, _ in d.k_source or ():
        add(source_order, src_names, n)
    for n, _ in d.k_target or ():
        add(target_order, tgt_names, n)
    pull = {}
    for t, terms in d.pullbacks:
        prime = tgt_names[t]
        if prime in pull:
            raise SemanticError(f"pull-back of {t} given twice", *d.loc)
        pull[prime] = _divisor(terms, src_names)
    phi = DivisorialMorphism(
        source_order, target_order, pull,
        exceptional=[src_names[n] for n in d.exceptional],
        k_source=None if d.k_source is None else _divisor(d.k_source, src_names),
        k_target=None if d.k_target is None else _divisor(d.k_target, tgt_names),
        name=d.name)
    target_splits, source_splits = {}, {}
    for parent, parts in d.splits:
        comps = [PrimeDivisor(c) for c in parts]
        if parent in tgt_names:
            target_splits[tgt_names[parent]] = comps
        elif parent in src_names:
            source_splits[src_names[parent]] = comps
        else:
            raise SemanticError(f"split of unknown prime {parent!r}", *d.loc)
    local_names = dict(src_names)
    for parts in source_splits.values():
        for c in parts:
            local_names[c.name] = c
    local = {PrimeDivisor(c): _divisor(terms, local_names) for c, terms in d.local}
    return MorphismInfo(phi, d.source, d.target, d.image_not_in_boundary,
                        target_splits, source_splits, local)


def _check_args(d, env, lookup):
    errors, same_arity = [], []
    for sig in CHECK_SIGNATURES[d.kind]:
        try:
            _match(sig, d, env)
            return
        except SemanticError as exc:
            errors.append(exc)
            if len(sig) == len(d.args) and "ints" not in sig:
                same_arity.append(exc)
    if len(errors) == 1:
        raise errors[0]
    if len(same_arity) == 1:
        raise same_arity[0]
    shapes = " | ".join(" ".join(sig) for sig in CHECK_SIGNATURES[d.kind])
    raise SemanticError(f"check {d.kind} expects arguments {shapes}", *d.loc)


def _match(sig, d, env):
    args = d.args
    if sig and sig[-1] == "ints":
        fixed, rest = sig[:-1], args[len(sig) - 1:]
        bad = [i for i, a in enumerate(rest, len(sig) - 1) if not a.isdigit()]
        if not rest or bad:
            where = d.arg_loc(bad[0]) if bad else d.loc
            raise SemanticError("expected a list of non-negative integers", *where)
    else:
        fixed = sig
        if len(args) != len(sig):
            where = d.arg_loc(len(sig)) if len(args) > len(sig) else d.loc
            raise SemanticError(f"expected {len(sig)} arguments ({' '.join(sig)}), got {len(args)}", *where)
    for i, (want, arg) in enumerate(zip(fixed, args)):
        loc = d.arg_loc(i)
        if want == "int":
            if not arg.isdigit() or int(arg) < 1:
                raise SemanticError(f"expected a positive integer, got {arg!r}", *loc)
        elif want == "word":
            if arg.isdigit():
                raise SemanticError(f"expected a word, got {arg!r}", *loc)
        elif want == "at":
            if arg != "at":
                raise SemanticError(f"expected 'at', got {arg!r}", *loc)
        elif env.kind_of(arg) != want:
            raise SemanticError(f"unknown {want} {arg!r}", *loc)


def parse(text):
    """Parse and resolve a document; raises ``ParseError`` or ``SemanticError``."""
    doc = _Parser(text).document()
    doc.env = _resolve(doc)
    return doc


# Canonical printer

def _mult_text(kind_value):
    kind, value = kind_value
    if kind == "coeff":
        value = _multiplicity(kind, value, (0, 0))
    return f"m={format_ext(value)}"


def _prime_text(prime):
    return f"coord {prime[1]}" if prime[0] == "coord" else prime[1]


def _divisor_text(terms):
    merged = {}
    for n, c in terms:
        merged[n] = merged.get(n, 0) + c
    items = [(n, c) for n, c in sorted(merged.items()) if c]
    if not items:
        return "0"
    out = []
    for i, (n, c) in enumerate(items):
        body = f"{format_ext(abs(c))}*{n}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def _serialize_decl(d):
    if isinstance(d, ChartDecl):
        axes = d.axes or tuple(f"x{i}" for i in range(1, d.dim + 1))
        return f"chart {d.name} dim {d.dim} axes ({', '.join(axes)})"
    if isinstance(d, PairDecl):
        entries = sorted(d.entries, key=lambda e: (e.prime[0], str(e.prime[1])))
        body = " ; ".join(f"{_mult_text(e.mult)} {_prime_text(e.prime)}" for e in entries)
        head = f"pair {d.name}" + (f" on {d.chart}" if d.chart else "")
        return f"{head} {{ {body} }}" if body else f"{head} {{ }}"
    if isinstance(d, MonomialDecl):
        rows = ", ".join("[" + ", ".join(map(str, r)) + "]" for r in d.matrix)
        return f"monomial {d.name} : {d.source} -> {d.target} matrix [{rows}]"
    if isinstance(d, MorphismDecl):
        lines = [f"morphism {d.name} : {d.source} -> {d.target} {{"]
        for t, terms in sorted(d.pullbacks):
            lines.append(f"  pullback {t} = {_divisor_text(terms)}")
        if d.exceptional:
            lines.append(f"  exceptional {', '.join(sorted(d.exceptional))}")
        if d.k_source is not None:
            lines.append(f"  K_source = {_divisor_text(d.k_source)}")
        if d.k_target is not None:
            lines.append(f"  K_target = {_divisor_text(d.k_target)}")
        if d.image_not_in_boundary:
            lines.append("  image-not-in-boundary")
        for parent, parts in sorted(d.splits):
            lines.append(f"  split {parent} = {' + '.join(parts)}")
        for comp, terms in sorted(d.local):
            lines.append(f"  local {comp} = {_divisor_text(terms)}")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(d, CurveDecl):
        body = " ; ".join(f"{n} {_mult_text(m)}" for n, m, _ in sorted(d.points, key=lambda p: p[0]))
        return f"curve {d.name} genus {d.genus} {{ {body} }}" if body else \
            f"curve {d.name} genus {d.genus} {{ }}"
    if isinstance(d, CoverDecl):
        body = " ; ".join(f"{n} ({', '.join(map(str, parts))})" for n, parts in sorted(d.profiles))
        return f"cover {d.name} of {d.curve} degree {d.degree} {{ {body} }}" if body else \
            f"cover {d.name} of {d.curve} degree {d.degree} {{ }}"
    if isinstance(d, CheckDecl):
        return " ".join(("check", d.kind) + d.args)
    raise TypeError(f"unknown declaration {d!r}")


def serialize(doc):
    """Canonical text of a document; declaration order is kept."""
    return "".join(_serialize_decl(d) + "\n" for d in doc.declarations)


def canonical_form(doc):
    """The document with every entry normalized as the printer writes it."""
    return parse(serialize(doc))
