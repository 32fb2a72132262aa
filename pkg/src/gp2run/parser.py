"""Text formats: host graphs, programs (rules + command declarations).

Host graph grammar::

    Graph ::= '[' Node* '|' Edge* ']'
    Node  ::= '(' Id RootTag? ',' Label ')'      RootTag ::= '(R)'
    Edge  ::= '(' Id ',' Id ',' Id ',' Label ')'
    Label ::= List Mark?
    List  ::= 'empty' | Atom (':' Atom)*
    Atom  ::= Integer | QuotedString
    Mark  ::= '#' ('red'|'green'|'blue'|'grey'|'dashed')

Ids are integers of arbitrary magnitude or identifiers; they are opaque
keys resolved through a dict while building the graph.  Whitespace and
newlines are insignificant; ``//`` starts a line comment.

A program is a sequence of declarations: ``Name = Command`` defines a
procedure (``Main`` is the entry point) and
``Name '(' VarDecls ')' Lhs '=>' Rhs 'interface' '=' '{' Ids '}'
('where' Cond)?`` defines a rule, where the rule graphs reuse the host
grammar with declared variables allowed as list items.
"""

import re

from .graph import (
    Graph, MARK_NONE, MARK_GREY, MARK_DASHED, MARK_VALUES, MARK_NAMES,
    NODE_MARKS, EDGE_MARKS,
)
from .labels import Var, EMPTY, VAR_TYPES
from .rules import Rule, RuleGraph, RuleNode, RuleEdge
from .interpreter import Program, ProgramError


class Diagnostic:
    __slots__ = ("line", "column", "message")

    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message

    def __str__(self):
        if self.line:
            return "%d:%d: %s" % (self.line, self.column, self.message)
        return self.message

    def __repr__(self):
        return "Diagnostic(%s)" % self


class ParseError(Exception):
    def __init__(self, diagnostics):
        diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+|//[^\n]*)
    | (?P<str>"[^"\n]*")
    | (?P<int>-?\d+)
    | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<sym>=>|!=|[()\[\]{}|,;:#!=])
    | (?P<bad>.)
    """,
    re.VERBOSE,
)

_EOF = ("eof", None, -1)


class _Tokens:
    """Single-lookahead token stream over the input text."""

    def __init__(self, text):
        self.text = text
        self._it = _TOKEN_RE.finditer(text)
        self._line_starts = None
        self.cur = None
        self.advance()

    def advance(self):
        tok = self.cur
        for m in self._it:
            kind = m.lastgroup
            if kind == "ws":
                continue
            if kind == "bad":
                self.cur = _EOF
                raise ParseError([self._diag(m.start(),
                                             "unexpected character %r" % m.group())])
            value = m.group()
            if kind == "int":
                value = int(value)
            elif kind == "str":
                value = value[1:-1]
            self.cur = (kind, value, m.start())
            return tok
        self.cur = _EOF
        return tok

    def _diag(self, pos, message):
        if pos < 0:
            pos = len(self.text)
        if self._line_starts is None:
            starts = [0]
            for i, ch in enumerate(self.text):
                if ch == "\n":
                    starts.append(i + 1)
            self._line_starts = starts
        import bisect
        line = bisect.bisect_right(self._line_starts, pos)
        col = pos - self._line_starts[line - 1] + 1
        return Diagnostic(line, col, message)

    def error(self, message):
        raise ParseError([self._diag(self.cur[2], message)])

    def expect_sym(self, sym):
        kind, value, _pos = self.cur
        if kind != "sym" or value != sym:
            self.error("expected %r, found %r" % (sym, self._show()))
        self.advance()

    def take_sym(self, sym):
        kind, value, _pos = self.cur
        if kind == "sym" and value == sym:
            self.advance()
            return True
        return False

    def take_id(self, word):
        kind, value, _pos = self.cur
        if kind == "id" and value == word:
            self.advance()
            return True
        return False

    def expect_id(self, word=None):
        kind, value, _pos = self.cur
        if kind != "id" or (word is not None and value != word):
            self.error("expected %s, found %r"
                       % (word or "identifier", self._show()))
        self.advance()
        return value

    def at_id(self, word=None):
        kind, value, _pos = self.cur
        return kind == "id" and (word is None or value == word)

    def at_sym(self, sym):
        kind, value, _pos = self.cur
        return kind == "sym" and value == sym

    def _show(self):
        kind, value, _pos = self.cur
        return "end of input" if kind == "eof" else value


def _parse_id(toks):
    kind, value, _pos = toks.cur
    if kind == "int":
        toks.advance()
        return str(value)
    if kind == "id":
        toks.advance()
        return value
    toks.error("expected a node or edge id, found %r" % toks._show())


def _parse_label(toks, variables, edge):
    """Label ::= List Mark?  Returns (items tuple, mark)."""
    items = []
    if toks.take_id("empty"):
        pass
    else:
        while True:
            kind, value, _pos = toks.cur
            if kind == "int":
                items.append(value)
                toks.advance()
            elif kind == "str":
                items.append(value)
                toks.advance()
            elif kind == "id":
                if variables is None:
                    toks.error("variable %r not allowed in a host label" % value)
                if value not in variables:
                    toks.error("undeclared variable %r" % value)
                items.append(Var(value, variables[value]))
                toks.advance()
            else:
                toks.error("expected a list atom, found %r" % toks._show())
            if not toks.take_sym(":"):
                break
    mark = MARK_NONE
    if toks.take_sym("#"):
        name = toks.expect_id()
        mark = MARK_VALUES.get(name)
        if mark is None:
            toks.error("unknown mark %r" % name)
        allowed = EDGE_MARKS if edge else NODE_MARKS
        if mark not in allowed:
            toks.error("mark %r not allowed on a %s"
                       % (name, "edge" if edge else "node"))
    return tuple(items) if items else EMPTY, mark


def parse_host_graph(text):
    """Parse a host graph; raises ParseError with diagnostics on bad input."""
    toks = _Tokens(text)
    g = _parse_graph_into(toks, None, Graph())
    if toks.cur[0] != "eof":
        toks.error("trailing input after graph")
    return g


def _parse_graph_into(toks, variables, g):
    """Shared host/rule graph reader; g is a Graph or RuleGraph sink."""
    is_host = isinstance(g, Graph)
    by_id = {}
    edge_ids = set()
    toks.expect_sym("[")
    while toks.at_sym("("):
        toks.advance()
        ident = _parse_id(toks)
        rooted = False
        if toks.take_sym("("):
            toks.expect_id("R")
            toks.expect_sym(")")
            rooted = True
        toks.expect_sym(",")
        label, mark = _parse_label(toks, variables, edge=False)
        toks.expect_sym(")")
        if ident in by_id:
            toks.error("duplicate node id %r" % ident)
        if is_host:
            by_id[ident] = g.add_node(label, mark, rooted, ident)
        else:
            by_id[ident] = ident
            g.add_node(RuleNode(ident, label, mark, rooted))
    toks.expect_sym("|")
    while toks.at_sym("("):
        toks.advance()
        ident = _parse_id(toks)
        toks.expect_sym(",")
        src = _parse_id(toks)
        toks.expect_sym(",")
        tgt = _parse_id(toks)
        toks.expect_sym(",")
        label, mark = _parse_label(toks, variables, edge=True)
        toks.expect_sym(")")
        if ident in edge_ids:
            toks.error("duplicate edge id %r" % ident)
        edge_ids.add(ident)
        if src not in by_id:
            toks.error("edge %r references unknown node %r" % (ident, src))
        if tgt not in by_id:
            toks.error("edge %r references unknown node %r" % (ident, tgt))
        if is_host:
            g.add_edge(by_id[src], by_id[tgt], label, mark, ident)
        else:
            g.add_edge(RuleEdge(ident, src, tgt, label, mark))
    toks.expect_sym("]")
    return g


# -- programs --------------------------------------------------------------

_COMMAND_KEYWORDS = {
    "if", "then", "else", "try", "break", "fail", "skip", "where",
    "interface", "empty",
}


def parse_program(text):
    """Parse and validate a program; returns a Program.

    Raises ParseError on syntax errors and ProgramError on validation
    failures (both carry diagnostics).
    """
    toks = _Tokens(text)
    rules = {}
    procedures = {}
    main = None
    while toks.cur[0] != "eof":
        name = toks.expect_id()
        if name in _COMMAND_KEYWORDS:
            toks.error("%r cannot be used as a declaration name" % name)
        if toks.take_sym("="):
            body = _parse_command_seq(toks)
            if name == "Main":
                if main is not None:
                    toks.error("duplicate Main declaration")
                main = body
            else:
                if name in procedures:
                    toks.error("duplicate procedure %r" % name)
                procedures[name] = body
        elif toks.at_sym("("):
            if name in rules:
                toks.error("duplicate rule %r" % name)
            rules[name] = _parse_rule(toks, name)
        else:
            toks.error("expected '=' or '(' after %r" % name)
    return Program(rules, procedures, main)


def _parse_rule(toks, name):
    toks.expect_sym("(")
    variables = {}
    var_order = []
    if not toks.at_sym(")"):
        while True:
            group = [toks.expect_id()]
            while toks.take_sym(","):
                group.append(toks.expect_id())
            toks.expect_sym(":")
            vtype = toks.expect_id()
            if vtype not in VAR_TYPES:
                toks.error("unknown variable type %r" % vtype)
            for vname in group:
                if vname in variables:
                    toks.error("variable %r declared twice" % vname)
                variables[vname] = vtype
                var_order.append((vname, vtype))
            if not toks.take_sym(";"):
                break
    toks.expect_sym(")")
    lhs = _parse_graph_into(toks, variables, RuleGraph())
    toks.expect_sym("=>")
    rhs = _parse_graph_into(toks, variables, RuleGraph())
    toks.expect_id("interface")
    toks.expect_sym("=")
    toks.expect_sym("{")
    interface = set()
    if not toks.at_sym("}"):
        while True:
            interface.add(_parse_id(toks))
            if not toks.take_sym(","):
                break
    toks.expect_sym("}")
    condition = None
    if toks.take_id("where"):
        condition = _parse_condition(toks, variables)
    return Rule(name, var_order, lhs, rhs, interface, condition)


def _parse_condition(toks, variables):
    left = _parse_cond_conj(toks, variables)
    while toks.take_id("or"):
        left = ("or", left, _parse_cond_conj(toks, variables))
    return left


def _parse_cond_conj(toks, variables):
    left = _parse_cond_unary(toks, variables)
    while toks.take_id("and"):
        left = ("and", left, _parse_cond_unary(toks, variables))
    return left


def _parse_cond_unary(toks, variables):
    if toks.take_id("not"):
        return ("not", _parse_cond_unary(toks, variables))
    if toks.take_id("edge"):
        toks.expect_sym("(")
        i = _parse_id(toks)
        toks.expect_sym(",")
        j = _parse_id(toks)
        toks.expect_sym(")")
        return ("edge", i, j)
    if toks.at_sym("("):
        toks.advance()
        inner = _parse_condition(toks, variables)
        toks.expect_sym(")")
        return inner
    left, _mark = _parse_label(toks, variables, edge=False)
    if toks.take_sym("="):
        op = "eq"
    elif toks.take_sym("!="):
        op = "neq"
    else:
        toks.error("expected '=' or '!=' in condition")
    right, _mark = _parse_label(toks, variables, edge=False)
    return (op, left, right)


def _parse_command_seq(toks):
    items = [_parse_command_item(toks)]
    while toks.take_sym(";"):
        items.append(_parse_command_item(toks))
    if len(items) == 1:
        return items[0]
    return ("seq", items)


def _parse_command_item(toks):
    if toks.take_id("if"):
        cond = _parse_command_item(toks)
        toks.expect_id("then")
        then = _parse_command_item(toks)
        other = _parse_command_item(toks) if toks.take_id("else") else ("skip",)
        return ("if", cond, then, other)
    if toks.take_id("try"):
        cond = _parse_command_item(toks)
        then = _parse_command_item(toks) if toks.take_id("then") else ("skip",)
        other = _parse_command_item(toks) if toks.take_id("else") else ("skip",)
        return ("try", cond, then, other)
    cmd = _parse_command_primary(toks)
    while toks.take_sym("!"):
        cmd = ("loop", cmd)
    return cmd


def _parse_command_primary(toks):
    if toks.take_id("break"):
        return ("break",)
    if toks.take_id("fail"):
        return ("fail",)
    if toks.take_id("skip"):
        return ("skip",)
    if toks.take_sym("("):
        inner = _parse_command_seq(toks)
        toks.expect_sym(")")
        return inner
    if toks.take_sym("{"):
        names = [toks.expect_id()]
        while toks.take_sym(","):
            names.append(toks.expect_id())
        toks.expect_sym("}")
        return ("set", names)
    kind, value, _pos = toks.cur
    if kind == "id" and value not in _COMMAND_KEYWORDS:
        toks.advance()
        return ("call", value)
    toks.error("expected a command, found %r" % toks._show())


# -- serialization ---------------------------------------------------------

def _label_text(label, mark):
    if not label:
        text = "empty"
    else:
        parts = []
        for atom in label:
            if type(atom) is str:
                if '"' in atom or "\n" in atom:
                    raise ValueError("string atom %r not serializable" % atom)
                parts.append('"%s"' % atom)
            else:
                parts.append(str(atom))
        text = ":".join(parts)
    if mark != MARK_NONE:
        text += " # " + MARK_NAMES[mark]
    return text


def serialize_graph(g):
    """Emit the host-graph format; parsing it back yields an isomorphic
    graph with identical ids, labels, marks and roots."""
    node_handles = list(g.nodes())
    node_handles.reverse()  # node list is newest-first; emit insertion order
    used = set()
    for h in node_handles:
        ident = g.node(h).ident
        if ident is not None:
            used.add(ident)
    names = {}
    counter = 0
    node_texts = []
    for h in node_handles:
        n = g.node(h)
        ident = n.ident
        if ident is None:
            while "n%d" % counter in used:
                counter += 1
            ident = "n%d" % counter
            used.add(ident)
        names[h] = ident
        root = "(R)" if n.is_root else ""
        node_texts.append("(%s%s, %s)" % (ident, root, _label_text(n.label, n.mark)))
    edge_texts = []
    eused = set()
    for h in node_handles:
        out = list(g.out_edges(h))
        out.reverse()
        for eh in out:
            e = g.edge(eh)
            if e.ident is not None:
                eused.add(e.ident)
    ecounter = 0
    for h in node_handles:
        out = list(g.out_edges(h))
        out.reverse()
        for eh in out:
            e = g.edge(eh)
            ident = e.ident
            if ident is None:
                while "e%d" % ecounter in eused:
                    ecounter += 1
                ident = "e%d" % ecounter
                eused.add(ident)
            edge_texts.append("(%s, %s, %s, %s)"
                              % (ident, names[e.source], names[e.target],
                                 _label_text(e.label, e.mark)))
    nodes_part = "\n  ".join(node_texts)
    edges_part = "\n  ".join(edge_texts)
    if nodes_part:
        nodes_part += " "
    if edges_part:
        edges_part += " "
    return "[ %s| %s]" % (nodes_part, edges_part)
