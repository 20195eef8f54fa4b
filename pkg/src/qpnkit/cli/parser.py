"""Line-oriented declaration language.

One statement per line; ``#`` starts a comment. Declarations bind names,
commands produce reports. Names are resolved and type-checked while parsing,
so every reference points to an earlier declaration of the right kind.
Entries of matrices and vectors are kept as text and interpreted by the
runner, which knows the ring they live in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import QpnError


class ParseError(QpnError):
    def __init__(self, line: int, column: int, expected: str):
        self.line, self.column, self.expected = line, column, expected
        super().__init__(f"line {line}, column {column}: expected {expected}")

    def detail(self) -> dict:
        return {"line": self.line, "column": self.column, "expected": self.expected}


class ScriptNameError(QpnError):
    """Undeclared or wrongly typed reference."""

    kind = "NameError"

    def __init__(self, line: int, name: str, problem: str):
        self.line, self.name, self.problem = line, name, problem
        super().__init__(f"line {line}: {name!r} {problem}")

    def detail(self) -> dict:
        return {"line": self.line, "name": self.name, "problem": self.problem}


# -- AST -------------------------------------------------------------------------


@dataclass(frozen=True)
class Statement:
    """A parsed line; ``line`` is its 1-based line number."""

    line: int


@dataclass(frozen=True)
class FieldDecl(Statement):
    name: str
    spec: str  # "Q" or "GF(p)"

    def render(self):
        return f"field {self.name} = {self.spec}"


@dataclass(frozen=True)
class RingDecl(Statement):
    name: str
    field: str
    n: int

    def render(self):
        return f"ring {self.name} = {self.field}[x0..x{self.n}]"


@dataclass(frozen=True)
class FreeDecl(Statement):
    name: str
    ring: str
    twists: tuple

    def render(self):
        return f"free {self.name} = " + " + ".join(f"{self.ring}({d})" for d in self.twists)


def _render_matrix(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def _render_vector(items) -> str:
    return "(" + ", ".join(items) + ")"


@dataclass(frozen=True)
class MatrixDecl(Statement):
    name: str
    source: str
    target: str
    rows: tuple

    def render(self):
        return f"matrix {self.name} : {self.source} -> {self.target} = {_render_matrix(self.rows)}"


@dataclass(frozen=True)
class ModuleDecl(Statement):
    name: str
    coker: bool
    ref: str

    def render(self):
        return f"module {self.name} = " + ("coker " if self.coker else "") + self.ref


@dataclass(frozen=True)
class MapDecl(Statement):
    name: str
    source: str
    target: str
    rows: tuple

    def render(self):
        return f"map {self.name} : {self.source} -> {self.target} = {_render_matrix(self.rows)}"


@dataclass(frozen=True)
class TargetDecl(Statement):
    name: str
    kind: str  # field | univariate | findim
    field: str
    dim: int = 0
    constants: tuple = ()

    def render(self):
        if self.kind == "field":
            rhs = self.field
        elif self.kind == "univariate":
            rhs = f"{self.field}[t]"
        else:
            rhs = "algebra(" + ", ".join([self.field, str(self.dim), *self.constants]) + ")"
        return f"target {self.name} = {rhs}"


@dataclass(frozen=True)
class SectionsDecl(Statement):
    name: str
    target: str
    elems: tuple

    def render(self):
        return f"sections {self.name} over {self.target} = {_render_vector(self.elems)}"


@dataclass(frozen=True)
class RingMapDecl(Statement):
    name: str
    source: str
    target: str
    images: tuple

    def render(self):
        return f"ringmap {self.name} : {self.source} -> {self.target} = {_render_vector(self.images)}"


@dataclass(frozen=True)
class TModuleDecl(Statement):
    name: str
    target: str
    rank: int
    rows: tuple | None  # None: free of the given rank

    def render(self):
        rhs = f"free({self.rank})" if self.rows is None else _render_matrix(self.rows)
        return f"tmodule {self.name} over {self.target} = {rhs}"


@dataclass(frozen=True)
class AlgebraDecl(Statement):
    name: str
    carrier: str
    mult: tuple  # vectors in row-major order of generator pairs
    unit: tuple

    def render(self):
        mult = "(" + ", ".join(_render_vector(v) for v in self.mult) + ")"
        return f"algebra {self.name} on {self.carrier} = mult {mult} unit {_render_vector(self.unit)}"


@dataclass(frozen=True)
class AModuleDecl(Statement):
    name: str
    algebra: str
    underlying: str | None  # None: the algebra as a module over itself
    action: tuple = ()

    def render(self):
        if self.underlying is None:
            return f"amodule {self.name} on {self.algebra} = regular"
        act = "(" + ", ".join(_render_vector(v) for v in self.action) + ")"
        return f"amodule {self.name} on {self.algebra} = {self.underlying} action {act}"


@dataclass(frozen=True)
class Command(Statement):
    verb: str
    args: tuple

    def render(self):
        return " ".join((self.verb,) + self.args)


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    @property
    def declarations(self) -> tuple:
        return tuple(s for s in self.statements if not isinstance(s, Command))

    @property
    def commands(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, Command))

    def render(self) -> str:
        return "".join(s.render() + "\n" for s in self.statements)

    def same_as(self, other: "SessionScript") -> bool:
        """Equal up to line numbers."""
        return len(self.statements) == len(other.statements) and all(
            _strip_line(a) == _strip_line(b) for a, b in zip(self.statements, other.statements))


def _strip_line(s: Statement):
    d = dict(s.__dict__)
    d.pop("line")
    return type(s), tuple(sorted(d.items(), key=lambda kv: kv[0]))


# -- scanning ---------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")
_OPEN = {"[": "]", "(": ")"}


class Cursor:
    def __init__(self, text: str, line: int):
        self.text, self.line, self.pos = text, line, 0

    def error(self, expected: str) -> ParseError:
        return ParseError(self.line, self.pos + 1, expected)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def end(self):
        if not self.at_end():
            raise self.error("end of line")

    def peek(self, lit: str) -> bool:
        self.ws()
        return self.text.startswith(lit, self.pos)

    def accept(self, lit: str) -> bool:
        if self.peek(lit):
            self.pos += len(lit)
            return True
        return False

    def expect(self, lit: str):
        if not self.accept(lit):
            raise self.error(repr(lit))

    def keyword(self, word: str) -> bool:
        self.ws()
        m = _IDENT.match(self.text, self.pos)
        if m and m.group() == word:
            self.pos = m.end()
            return True
        return False

    def ident(self, what: str = "a name") -> str:
        self.ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error(what)
        self.pos = m.end()
        return m.group()

    def integer(self, what: str = "an integer") -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error(what)
        self.pos = m.end()
        return int(m.group())

    def group(self, open_: str) -> str:
        """A balanced bracket group starting with ``open_``; returns its inside."""
        self.ws()
        if not self.text.startswith(open_, self.pos):
            raise self.error(repr(open_))
        start = self.pos
        stack = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in _OPEN:
                stack.append(_OPEN[ch])
            elif ch in ")]":
                if not stack or stack.pop() != ch:
                    raise self.error("balanced brackets")
                if not stack:
                    self.pos += 1
                    return self.text[start + 1:self.pos - 1]
            self.pos += 1
        raise ParseError(self.line, start + 1, f"closing {_OPEN[open_]!r}")

    def rest(self) -> str:
        self.ws()
        s = self.text[self.pos:].strip()
        self.pos = len(self.text)
        return s


def split_top(text: str) -> list[str]:
    """Split at commas outside brackets; empty text gives []."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    last = "".join(cur).strip()
    if last or parts:
        parts.append(last)
    return parts


# -- parser -----------------------------------------------------------------------

_DECL_KEYWORDS = ("field", "ring", "free", "matrix", "module", "map", "target", "sections",
                  "ringmap", "tmodule", "algebra", "amodule")

# command verb -> argument kinds ("a|b" accepts either kind; "exact" and
# "relation" have their own argument rules)
COMMANDS = {
    "monomials": ("int", "int"),
    "hilbert": ("module", "int", "int"),
    "exact": ("maps", "window?"),
    "trunc": ("int", "int", "int", "field?"),
    "phi-extend": ("int", "int", "module", "matrix"),
    "sym": ("module", "int"),
    "good-epi": ("sections",),
    "eval": ("sections", "module|map"),
    "trunc-iso": ("sections", "int", "int"),
    "monoidal": ("sections", "module", "module"),
    "monoidal-random": ("sections", "int"),
    "reconstruct": ("sections",),
    "classify": ("tmodule",),
    "base-change": ("ringmap", "tmodule"),
    "descend": ("ringmap", "algebra", "amodule", "vector"),
    "relation": ("sections", "poly"),
}


class Parser:
    def __init__(self):
        self.symbols: dict[str, str] = {}
        self.last_field: str | None = None

    def ref(self, cur: Cursor, *kinds: str, what: str | None = None) -> str:
        name = cur.ident(what or " or ".join(kinds) + " name")
        kind = self.symbols.get(name)
        if kind is None:
            raise ScriptNameError(cur.line, name, "is not declared")
        if kinds and kind not in kinds:
            raise ScriptNameError(cur.line, name, f"is a {kind}, expected {' or '.join(kinds)}")
        return name

    def bind(self, cur: Cursor, name: str, kind: str):
        if name in self.symbols:
            raise ScriptNameError(cur.line, name, "is already declared")
        self.symbols[name] = kind
        if kind == "field":
            self.last_field = name

    def matrix(self, cur: Cursor) -> tuple:
        inside = cur.group("[")
        rows = []
        for r in split_top(inside):
            if not (r.startswith("[") and r.endswith("]")):
                raise cur.error("a matrix row '[...]'")
            rows.append(tuple(split_top(r[1:-1])))
        return tuple(rows)

    def vector(self, cur: Cursor) -> tuple:
        return tuple(split_top(cur.group("(")))

    def vectors(self, cur: Cursor) -> tuple:
        out = []
        for v in split_top(cur.group("(")):
            if not (v.startswith("(") and v.endswith(")")):
                raise cur.error("a vector '(...)'")
            out.append(tuple(split_top(v[1:-1])))
        return tuple(out)

    def statement(self, text: str, line: int) -> Statement | None:
        cur = Cursor(text, line)
        if cur.at_end():
            return None
        cur.ws()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*").match(cur.text, cur.pos)
        if not m:
            raise cur.error("a declaration keyword or command")
        word = m.group()
        if word in _DECL_KEYWORDS:
            cur.pos = m.end()
            st = getattr(self, "decl_" + word)(cur)
        elif word in COMMANDS:
            cur.pos = m.end()
            st = self.command(cur, word)
        else:
            raise cur.error("a declaration keyword or command")
        cur.end()
        return st

    # declarations

    def decl_field(self, cur):
        name = cur.ident()
        cur.expect("=")
        if cur.keyword("Q"):
            spec = "Q"
        elif cur.keyword("GF"):
            cur.expect("(")
            p = cur.integer("a prime")
            cur.expect(")")
            spec = f"GF({p})"
        else:
            raise cur.error("'Q' or 'GF(p)'")
        self.bind(cur, name, "field")
        return FieldDecl(cur.line, name, spec)

    def decl_ring(self, cur):
        name = cur.ident()
        cur.expect("=")
        field = self.ref(cur, "field")
        cur.expect("[")
        cur.expect("x0")
        cur.expect("..")
        cur.expect("x")
        n = cur.integer("a variable index")
        if n < 0:
            raise cur.error("a nonnegative variable index")
        cur.expect("]")
        self.bind(cur, name, "ring")
        return RingDecl(cur.line, name, field, n)

    def decl_free(self, cur):
        name = cur.ident()
        cur.expect("=")
        ring = self.ref(cur, "ring")
        twists = []
        while True:
            cur.expect("(")
            twists.append(cur.integer("a twist"))
            cur.expect(")")
            if not cur.accept("+"):
                break
            pos = cur.pos
            again = cur.ident("the ring name")
            if again != ring:
                cur.pos = pos
                raise cur.error(f"{ring!r} (summands share one ring)")
        self.bind(cur, name, "free")
        return FreeDecl(cur.line, name, ring, tuple(twists))

    def decl_matrix(self, cur):
        name = cur.ident()
        cur.expect(":")
        src = self.ref(cur, "free")
        cur.expect("->")
        tgt = self.ref(cur, "free")
        cur.expect("=")
        rows = self.matrix(cur)
        self.bind(cur, name, "matrix")
        return MatrixDecl(cur.line, name, src, tgt, rows)

    def decl_module(self, cur):
        name = cur.ident()
        cur.expect("=")
        if cur.keyword("coker"):
            ref = self.ref(cur, "matrix")
            coker = True
        else:
            ref = self.ref(cur, "free")
            coker = False
        self.bind(cur, name, "module")
        return ModuleDecl(cur.line, name, coker, ref)

    def decl_map(self, cur):
        name = cur.ident()
        cur.expect(":")
        src = self.ref(cur, "module")
        cur.expect("->")
        tgt = self.ref(cur, "module")
        cur.expect("=")
        rows = self.matrix(cur)
        self.bind(cur, name, "map")
        return MapDecl(cur.line, name, src, tgt, rows)

    def decl_target(self, cur):
        name = cur.ident()
        cur.expect("=")
        if cur.keyword("algebra"):
            inside = cur.group("(")
            parts = split_top(inside)
            if parts and _IDENT.fullmatch(parts[0]):
                field = parts.pop(0)
                if self.symbols.get(field) != "field":
                    raise ScriptNameError(cur.line, field, "is not a declared field")
            elif self.last_field is None:
                raise ScriptNameError(cur.line, "field", "no field declared before this algebra")
            else:
                field = self.last_field
            if not parts or not _INT.fullmatch(parts[0]) or int(parts[0]) < 1:
                raise cur.error("algebra(F, dim, constants...) with dim >= 1")
            dim = int(parts[0])
            consts = tuple(parts[1:])
            if len(consts) != dim ** 3:
                raise cur.error(f"{dim ** 3} structure constants")
            decl = TargetDecl(cur.line, name, "findim", field, dim, consts)
        else:
            field = self.ref(cur, "field")
            if cur.accept("[t]"):
                decl = TargetDecl(cur.line, name, "univariate", field)
            else:
                decl = TargetDecl(cur.line, name, "field", field)
        self.bind(cur, name, "target")
        return decl

    def decl_sections(self, cur):
        name = cur.ident()
        if not cur.keyword("over"):
            raise cur.error("'over'")
        target = self.ref(cur, "target")
        cur.expect("=")
        elems = self.vector(cur)
        if not elems:
            raise cur.error("at least one section")
        self.bind(cur, name, "sections")
        return SectionsDecl(cur.line, name, target, elems)

    def decl_ringmap(self, cur):
        name = cur.ident()
        cur.expect(":")
        src = self.ref(cur, "target")
        cur.expect("->")
        tgt = self.ref(cur, "target")
        cur.expect("=")
        images = self.vector(cur)
        self.bind(cur, name, "ringmap")
        return RingMapDecl(cur.line, name, src, tgt, images)

    def decl_tmodule(self, cur):
        name = cur.ident()
        if not cur.keyword("over"):
            raise cur.error("'over'")
        target = self.ref(cur, "target")
        cur.expect("=")
        if cur.keyword("free"):
            cur.expect("(")
            rank = cur.integer("a rank")
            cur.expect(")")
            rows = None
        else:
            rows = self.matrix(cur)
            rank = len(rows)
        self.bind(cur, name, "tmodule")
        return TModuleDecl(cur.line, name, target, rank, rows)

    def decl_algebra(self, cur):
        name = cur.ident()
        if not cur.keyword("on"):
            raise cur.error("'on'")
        carrier = self.ref(cur, "tmodule")
        cur.expect("=")
        if not cur.keyword("mult"):
            raise cur.error("'mult'")
        mult = self.vectors(cur)
        if not cur.keyword("unit"):
            raise cur.error("'unit'")
        unit = self.vector(cur)
        self.bind(cur, name, "algebra")
        return AlgebraDecl(cur.line, name, carrier, mult, unit)

    def decl_amodule(self, cur):
        name = cur.ident()
        if not cur.keyword("on"):
            raise cur.error("'on'")
        algebra = self.ref(cur, "algebra")
        cur.expect("=")
        if cur.keyword("regular"):
            decl = AModuleDecl(cur.line, name, algebra, None)
        else:
            under = self.ref(cur, "tmodule")
            if not cur.keyword("action"):
                raise cur.error("'action'")
            decl = AModuleDecl(cur.line, name, algebra, under, self.vectors(cur))
        self.bind(cur, name, "amodule")
        return decl

    # commands

    def command(self, cur: Cursor, verb: str) -> Command:
        spec = COMMANDS[verb]
        args: list[str] = []
        if verb == "relation":
            args.append(self.ref(cur, "sections"))
            poly = cur.rest()
            if not poly:
                raise cur.error("a polynomial")
            return Command(cur.line, verb, (args[0], poly))
        if verb == "exact":
            names = []
            while True:
                cur.ws()
                if cur.at_end() or _INT.match(cur.text, cur.pos):
                    break
                names.append(self.ref(cur, "map", "matrix"))
            if len(names) < 2:
                raise cur.error("at least two map or matrix names")
            args.extend(names)
            if not cur.at_end():
                args.append(str(cur.integer("window low degree")))
                args.append(str(cur.integer("window high degree")))
            return Command(cur.line, verb, tuple(args))
        for kind in spec:
            if kind == "int":
                args.append(str(cur.integer()))
            elif kind == "field?":
                if cur.keyword("over"):
                    args.extend(["over", self.ref(cur, "field")])
                elif self.last_field is None:
                    raise ScriptNameError(cur.line, "field", "no field declared before this command")
                else:
                    args.extend(["over", self.last_field])
            elif kind == "matrix":
                args.append(_render_matrix(self.matrix(cur)))
            elif kind == "vector":
                args.append(_render_vector(self.vector(cur)))
            else:
                args.append(self.ref(cur, *kind.split("|")))
        return Command(cur.line, verb, tuple(args))


def parse(text: str) -> SessionScript:
    """Parse a whole script. Raises ParseError or ScriptNameError."""
    p = Parser()
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        st = p.statement(line, i)
        if st is not None:
            out.append(st)
    return SessionScript(tuple(out))


def render(script: SessionScript) -> str:
    return script.render()
