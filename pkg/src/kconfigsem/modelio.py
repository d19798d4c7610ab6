"""Text formats for models and configurations.

Model files declare configs and choices:

    config ALPHA tristate
      prompt (BRAVO || m)
      default (m) if (BRAVO = y)
      select-expr n
    choice boolean mandatory
      prompt y
      member ALPHA

Configuration documents assign one value per line:

    ALPHA=m
    NAME="hello world"
    SIZE=42
    ADDR=0x1A
    GHOST=?

where ``?`` marks the undefined value held by undeclared identifiers.
Serialization is canonical: declarations sorted by name, two-space
indent, prompt and select-expr always written, every compound
subexpression parenthesized.  Parsing accepts any equivalent spelling
and reports all issues with line and column.

Keywords of the format (``config``, ``if``, ``member``, ...) cannot
be used as config names in these files; the serializer rejects them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .evaluator import Configuration
from .expr import (
    And,
    BOTTOM,
    Eq,
    EXPR_N,
    HexVal,
    IdOrConst,
    IntVal,
    KExpr,
    Leaf,
    LiftedConst,
    Neq,
    Not,
    Or,
    StrVal,
    Tri,
    TriVal,
)
from .model import (
    ChoiceDecl,
    ConfigDecl,
    ConfigType,
    DefaultEntry,
    KconfigModel,
    RangeBound,
    RangeEntry,
    universe_ids,
)

_KEYWORDS = frozenset(
    (
        "config", "choice", "prompt", "default", "select-expr", "range",
        "member", "if", "mandatory", "optional",
        "boolean", "tristate", "int", "hex", "string",
    )
)

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TRI_TOKENS = {"n": Tri.N, "m": Tri.M, "y": Tri.Y}


@dataclass(frozen=True)
class ParseIssue:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col}: {self.message}"


class ModelParseError(Exception):
    def __init__(self, issues: list[ParseIssue]) -> None:
        super().__init__("\n".join(str(i) for i in issues))
        self.issues = tuple(issues)


# ---------------------------------------------------------------------------
# Expression tokens


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT TRI STR HEX INT NOT AND OR EQ NEQ LP RP IF END
    value: object
    col: int


class _ExprError(Exception):
    def __init__(self, col: int, message: str) -> None:
        super().__init__(message)
        self.col = col
        self.message = message


def _lex_expr(text: str, base_col: int) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = base_col + i
        if ch in " \t":
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("LP", "(", col))
            i += 1
        elif ch == ")":
            tokens.append(_Token("RP", ")", col))
            i += 1
        elif ch == "!":
            if i + 1 < n and text[i + 1] == "=":
                tokens.append(_Token("NEQ", "!=", col))
                i += 2
            else:
                tokens.append(_Token("NOT", "!", col))
                i += 1
        elif ch == "=":
            tokens.append(_Token("EQ", "=", col))
            i += 1
        elif ch == "&":
            if text[i : i + 2] != "&&":
                raise _ExprError(col, "single & (use &&)")
            tokens.append(_Token("AND", "&&", col))
            i += 2
        elif ch == "|":
            if text[i : i + 2] != "||":
                raise _ExprError(col, "single | (use ||)")
            tokens.append(_Token("OR", "||", col))
            i += 2
        elif ch == '"':
            parts: list[str] = []
            i += 1
            while True:
                if i >= n:
                    raise _ExprError(col, "unterminated string literal")
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in '"\\':
                        raise _ExprError(
                            base_col + i, 'unknown escape (only \\" and \\\\)'
                        )
                    parts.append(text[i + 1])
                    i += 2
                else:
                    parts.append(c)
                    i += 1
            tokens.append(_Token("STR", StrVal("".join(parts)), col))
        elif ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            if text[i : i + 2] in ("0x", "0X") and j + 1 <= n:
                j = i + 2
                while j < n and text[j] in "0123456789abcdefABCDEF":
                    j += 1
                if j == i + 2:
                    raise _ExprError(col, "0x with no hex digits")
                tokens.append(_Token("HEX", HexVal(text[i + 2 : j]), col))
            else:
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(_Token("INT", IntVal(int(text[i:j])), col))
            i = j
        else:
            match = _IDENT_RE.match(text, i)
            if not match:
                raise _ExprError(col, f"unexpected character {ch!r}")
            word = match.group()
            if word in _TRI_TOKENS:
                tokens.append(_Token("TRI", TriVal(_TRI_TOKENS[word]), col))
            elif word == "if":
                tokens.append(_Token("IF", word, col))
            else:
                tokens.append(_Token("IDENT", word, col))
            i = match.end()
    tokens.append(_Token("END", None, base_col + n))
    return tokens


class _ExprParser:
    """Recursive descent over the token list: ``||`` < ``&&`` < ``!``.

    Comparison operands must be plain identifiers or literals, so
    ``(A && B) = y`` is rejected rather than silently regrouped.
    """

    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise _ExprError(tok.col, f"expected {what}")
        return tok

    def parse_expr(self) -> KExpr:
        e = self.parse_and()
        while self.peek().kind == "OR":
            self.take()
            e = Or(e, self.parse_and())
        return e

    def parse_and(self) -> KExpr:
        e = self.parse_unary()
        while self.peek().kind == "AND":
            self.take()
            e = And(e, self.parse_unary())
        return e

    def parse_unary(self) -> KExpr:
        if self.peek().kind == "NOT":
            self.take()
            return Not(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> KExpr:
        tok = self.peek()
        if tok.kind == "LP":
            self.take()
            e = self.parse_expr()
            self.expect("RP", "closing parenthesis")
            if self.peek().kind in ("EQ", "NEQ"):
                raise _ExprError(
                    self.peek().col,
                    "comparison operands must be identifiers or literals",
                )
            return e
        left = self.parse_operand()
        if self.peek().kind in ("EQ", "NEQ"):
            op = self.take()
            right = self.parse_operand()
            return Eq(left, right) if op.kind == "EQ" else Neq(left, right)
        return Leaf(left)

    def parse_operand(self) -> IdOrConst:
        tok = self.take()
        if tok.kind == "IDENT":
            return tok.value
        if tok.kind in ("TRI", "STR", "HEX", "INT"):
            return tok.value
        raise _ExprError(tok.col, "expected an identifier or literal")


def parse_expression(text: str, base_col: int = 1) -> KExpr:
    """Parse one expression; raises ``_ExprError`` on trailing input."""

    parser = _ExprParser(_lex_expr(text, base_col))
    e = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "END":
        raise _ExprError(tok.col, "unexpected trailing input")
    return e


# ---------------------------------------------------------------------------
# Model files


class _ConfigBlock:
    def __init__(self, line: int, name: str, type_: ConfigType) -> None:
        self.line = line
        self.name = name
        self.type = type_
        self.prompt: KExpr | None = None
        self.reverse_dep: KExpr | None = None
        self.defaults: list[DefaultEntry] = []
        self.ranges: list[RangeEntry] = []


class _ChoiceBlock:
    def __init__(self, line: int, type_: ConfigType, mandatory: bool) -> None:
        self.line = line
        self.type = type_
        self.mandatory = mandatory
        self.prompt: KExpr | None = None
        self.members: list[str] = []


class _ModelReader:
    def __init__(self) -> None:
        self.issues: list[ParseIssue] = []
        self.configs: list[ConfigDecl] = []
        self.choices: list[ChoiceDecl] = []
        self.block: _ConfigBlock | _ChoiceBlock | None = None
        self.seen_names: dict[str, int] = {}

    def fail(self, line: int, col: int, message: str) -> None:
        self.issues.append(ParseIssue(line, col, message))

    def _expr(self, text: str, line: int, col: int) -> KExpr | None:
        try:
            return parse_expression(text, col)
        except _ExprError as err:
            self.fail(line, err.col, err.message)
            return None

    def finish_block(self) -> None:
        block = self.block
        self.block = None
        if block is None:
            return
        try:
            if isinstance(block, _ConfigBlock):
                self.configs.append(
                    ConfigDecl(
                        block.name,
                        block.type,
                        prompt=block.prompt or EXPR_N,
                        defaults=tuple(block.defaults),
                        reverse_dep=block.reverse_dep or EXPR_N,
                        ranges=tuple(block.ranges),
                    )
                )
            else:
                self.choices.append(
                    ChoiceDecl(
                        type=block.type,
                        mandatory=block.mandatory,
                        prompt=block.prompt or EXPR_N,
                        members=tuple(block.members),
                    )
                )
        except ValueError as err:
            self.fail(block.line, 1, str(err))

    def header(self, line_no: int, line: str) -> None:
        self.finish_block()
        words = line.split()
        if words[0] == "config":
            if len(words) != 3:
                self.fail(line_no, 1, "expected: config <NAME> <type>")
                return
            name, type_word = words[1], words[2]
            if not _IDENT_RE.fullmatch(name) or name in ("n", "m", "y"):
                self.fail(line_no, 8, f"invalid config name {name!r}")
                return
            if name in self.seen_names:
                self.fail(
                    line_no,
                    8,
                    f"duplicate config {name} (first declared on line "
                    f"{self.seen_names[name]})",
                )
                return
            try:
                type_ = ConfigType(type_word)
            except ValueError:
                self.fail(line_no, 1, f"unknown config type {type_word!r}")
                return
            self.seen_names[name] = line_no
            self.block = _ConfigBlock(line_no, name, type_)
        elif words[0] == "choice":
            if (
                len(words) != 3
                or words[1] not in ("boolean", "tristate")
                or words[2] not in ("mandatory", "optional")
            ):
                self.fail(
                    line_no, 1,
                    "expected: choice <boolean|tristate> <mandatory|optional>",
                )
                return
            self.block = _ChoiceBlock(
                line_no, ConfigType(words[1]), words[2] == "mandatory"
            )
        else:
            self.fail(line_no, 1, f"unknown declaration {words[0]!r}")

    def directive(self, line_no: int, stripped: str, col: int) -> None:
        if self.block is None:
            self.fail(line_no, col, "directive outside any declaration")
            return
        parts = stripped.split(None, 1)
        word = parts[0]
        rest = parts[1].strip() if len(parts) > 1 else ""
        rest_col = col + len(word) + 1
        is_config = isinstance(self.block, _ConfigBlock)

        if word == "prompt":
            if self.block.prompt is not None:
                self.fail(line_no, col, "duplicate prompt")
                return
            self.block.prompt = self._expr(rest, line_no, rest_col)
        elif word == "select-expr" and is_config:
            if self.block.reverse_dep is not None:
                self.fail(line_no, col, "duplicate select-expr")
                return
            self.block.reverse_dep = self._expr(rest, line_no, rest_col)
        elif word == "default" and is_config:
            self._default(line_no, rest, rest_col)
        elif word == "range" and is_config:
            self._range(line_no, rest, rest_col)
        elif word == "member" and not is_config:
            if not _IDENT_RE.fullmatch(rest) or rest in ("n", "m", "y"):
                self.fail(line_no, rest_col, f"invalid member name {rest!r}")
                return
            self.block.members.append(rest)
        else:
            self.fail(line_no, col, f"unknown directive {word!r} here")

    def _split_condition(
        self, tokens: list[_Token]
    ) -> tuple[list[_Token], list[_Token]]:
        """Split at the IF keyword; both halves get an END sentinel."""

        for i, tok in enumerate(tokens):
            if tok.kind == "IF":
                end = _Token("END", None, tok.col)
                return tokens[:i] + [end], tokens[i + 1 :]
        return tokens, []

    def _default(self, line_no: int, rest: str, col: int) -> None:
        try:
            tokens = _lex_expr(rest, col)
        except _ExprError as err:
            self.fail(line_no, err.col, err.message)
            return
        value_toks, cond_toks = self._split_condition(tokens)
        try:
            parser = _ExprParser(value_toks)
            value = parser.parse_expr()
            if parser.peek().kind != "END":
                raise _ExprError(parser.peek().col, "unexpected trailing input")
            if cond_toks:
                parser = _ExprParser(cond_toks)
                condition = parser.parse_expr()
                if parser.peek().kind != "END":
                    raise _ExprError(
                        parser.peek().col, "unexpected trailing input"
                    )
            else:
                condition = Leaf(TriVal(Tri.Y))
        except _ExprError as err:
            self.fail(line_no, err.col, err.message)
            return
        self.block.defaults.append(DefaultEntry(value, condition))

    def _range(self, line_no: int, rest: str, col: int) -> None:
        try:
            tokens = _lex_expr(rest, col)
        except _ExprError as err:
            self.fail(line_no, err.col, err.message)
            return
        bound_toks, cond_toks = self._split_condition(tokens)
        bounds: list[RangeBound] = []
        for tok in bound_toks[:-1]:
            if tok.kind == "IDENT":
                bounds.append(tok.value)
            elif tok.kind in ("HEX", "INT"):
                bounds.append(tok.value)
            else:
                self.fail(
                    line_no, tok.col,
                    "range bounds must be numbers or identifiers",
                )
                return
        if len(bounds) != 2:
            self.fail(line_no, col, "expected: range <lo> <hi> [if <expr>]")
            return
        if cond_toks:
            try:
                parser = _ExprParser(cond_toks)
                condition = parser.parse_expr()
                if parser.peek().kind != "END":
                    raise _ExprError(
                        parser.peek().col, "unexpected trailing input"
                    )
            except _ExprError as err:
                self.fail(line_no, err.col, err.message)
                return
        else:
            condition = Leaf(TriVal(Tri.Y))
        try:
            self.block.ranges.append(RangeEntry(bounds[0], bounds[1], condition))
        except ValueError as err:
            self.fail(line_no, col, str(err))


def parse_model(text: str) -> KconfigModel:
    reader = _ModelReader()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if line[0] not in " \t":
            reader.header(line_no, stripped)
        else:
            col = len(line) - len(line.lstrip()) + 1
            reader.directive(line_no, stripped, col)
    reader.finish_block()
    if reader.issues:
        raise ModelParseError(reader.issues)
    try:
        return KconfigModel(
            configs=tuple(reader.configs), choices=tuple(reader.choices)
        )
    except ValueError as err:
        raise ModelParseError([ParseIssue(1, 1, str(err))]) from err


def render_value(v: LiftedConst) -> str:
    if v is BOTTOM:
        return "?"
    if isinstance(v, TriVal):
        return ("n", "m", "y")[v.value]
    if isinstance(v, StrVal):
        escaped = v.text.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(v, HexVal):
        return "0x" + v.digits
    return str(v.number)


def render_operand(item: IdOrConst) -> str:
    if isinstance(item, str):
        return item
    return render_value(item)


def render_expr(e: KExpr) -> str:
    """Canonical rendering: compound subexpressions are parenthesized."""

    def sub(node: KExpr) -> str:
        text = render_expr(node)
        return text if isinstance(node, Leaf) else f"({text})"

    if isinstance(e, Leaf):
        return render_operand(e.item)
    if isinstance(e, Not):
        return "!" + sub(e.operand)
    if isinstance(e, And):
        return f"{sub(e.left)} && {sub(e.right)}"
    if isinstance(e, Or):
        return f"{sub(e.left)} || {sub(e.right)}"
    if isinstance(e, Eq):
        return f"{render_operand(e.left)} = {render_operand(e.right)}"
    return f"{render_operand(e.left)} != {render_operand(e.right)}"


def _check_serializable_name(name: str) -> None:
    if name in _KEYWORDS:
        raise ValueError(
            f"config name {name!r} collides with a format keyword"
        )


def serialize_model(model: KconfigModel) -> str:
    lines: list[str] = []
    for cfg in model.configs:
        _check_serializable_name(cfg.name)
        lines.append(f"config {cfg.name} {cfg.type.value}")
        lines.append(f"  prompt {render_expr(cfg.prompt)}")
        for entry in cfg.defaults:
            lines.append(
                f"  default {render_expr(entry.value)}"
                f" if {render_expr(entry.condition)}"
            )
        lines.append(f"  select-expr {render_expr(cfg.reverse_dep)}")
        for rng in cfg.ranges:
            lines.append(
                f"  range {render_operand(rng.lower)} {render_operand(rng.upper)}"
                f" if {render_expr(rng.condition)}"
            )
    for ch in model.choices:
        mode = "mandatory" if ch.mandatory else "optional"
        lines.append(f"choice {ch.type.value} {mode}")
        lines.append(f"  prompt {render_expr(ch.prompt)}")
        for member in ch.members:
            _check_serializable_name(member)
            lines.append(f"  member {member}")
    return "\n".join(lines) + "\n" if lines else ""


# ---------------------------------------------------------------------------
# Configuration documents


def _parse_value(text: str, line_no: int, col: int) -> LiftedConst:
    if text == "?":
        return BOTTOM
    try:
        tokens = _lex_expr(text, col)
    except _ExprError as err:
        raise ModelParseError(
            [ParseIssue(line_no, err.col, err.message)]
        ) from err
    if len(tokens) != 2 or tokens[0].kind not in ("TRI", "STR", "HEX", "INT"):
        raise ModelParseError(
            [ParseIssue(line_no, col, f"invalid value {text!r}")]
        )
    return tokens[0].value


def _scan_assignment(
    line: str, line_no: int
) -> tuple[str, LiftedConst]:
    name, sep, value_text = line.partition("=")
    name = name.strip()
    if not sep:
        raise ModelParseError(
            [ParseIssue(line_no, 1, "expected NAME=value")]
        )
    if not _IDENT_RE.fullmatch(name) or name in ("n", "m", "y"):
        raise ModelParseError(
            [ParseIssue(line_no, 1, f"invalid identifier {name!r}")]
        )
    value_col = line.index("=") + 2
    value = _parse_value(value_text.strip(), line_no, value_col)
    return name, value


def parse_config(text: str, model: KconfigModel) -> Configuration:
    """Parse a configuration document against the model's universe."""

    issues: list[ParseIssue] = []
    entries: dict[str, LiftedConst] = {}
    lines_by_name: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            name, value = _scan_assignment(line, line_no)
        except ModelParseError as err:
            issues.extend(err.issues)
            continue
        if name in entries:
            issues.append(
                ParseIssue(
                    line_no, 1,
                    f"duplicate assignment for {name} (first on line "
                    f"{lines_by_name[name]})",
                )
            )
            continue
        entries[name] = value
        lines_by_name[name] = line_no

    universe = set(universe_ids(model))
    missing = sorted(universe - entries.keys())
    extra = sorted(entries.keys() - universe)
    last = len(text.splitlines()) + 1
    for name in missing:
        issues.append(ParseIssue(last, 1, f"missing assignment for {name}"))
    for name in extra:
        issues.append(
            ParseIssue(
                lines_by_name[name], 1,
                f"{name} is not part of this model",
            )
        )
    if issues:
        raise ModelParseError(issues)
    return Configuration(entries)


def serialize_config(c: Configuration) -> str:
    lines = [f"{name}={render_value(c[name])}" for name in sorted(c)]
    return "\n".join(lines) + "\n" if lines else ""


def serialize_config_line(c: Configuration) -> str:
    """One-line rendering used by streaming output and reports."""

    return " ".join(f"{name}={render_value(c[name])}" for name in sorted(c))


def parse_config_line(text: str) -> Configuration:
    """Inverse of :func:`serialize_config_line`.

    Quoted strings may contain spaces, so this scans token-wise
    rather than splitting on whitespace.
    """

    entries: dict[str, LiftedConst] = {}
    i = 0
    n = len(text)
    while i < n:
        if text[i] == " ":
            i += 1
            continue
        match = _IDENT_RE.match(text, i)
        if not match or match.end() >= n or text[match.end()] != "=":
            raise ModelParseError(
                [ParseIssue(1, i + 1, "expected NAME=value")]
            )
        name = match.group()
        i = match.end() + 1
        if i < n and text[i] == '"':
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                elif text[j] == '"':
                    j += 1
                    break
                else:
                    j += 1
            else:
                raise ModelParseError(
                    [ParseIssue(1, i + 1, "unterminated string literal")]
                )
            token = text[i:j]
        else:
            j = text.find(" ", i)
            j = n if j < 0 else j
            token = text[i:j]
        if name in entries:
            raise ModelParseError(
                [ParseIssue(1, i + 1, f"duplicate assignment for {name}")]
            )
        entries[name] = _parse_value(token, 1, i + 1)
        i = j
    return Configuration(entries)
