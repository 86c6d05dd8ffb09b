"""Concrete syntax: parsers and printers for every file format.

Formula grammar, lowest precedence first (``->`` is right associative,
``|`` and ``&`` are left associative, quantifier bodies extend as far
right as possible)::

    F ::= F "->" F | F "|" F | F "&" F | Q
    Q ::= "forall" var "." F | "exists" var "." F | U
    U ::= "top" | "bot" | "~" atom | "[" F "]" | atom | "(" F ")"

Extensions: ``.fml`` formula, ``.seq`` sequent, ``.apds`` pushdown
system (or finite automaton with an ``fsa:`` header), ``.fdl`` finite
model, ``.prf`` proof records.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    App, Atom, BOT, Const, EPS, Exists, Forall, Formula, Frozen, Imp, And,
    NegAtom, Or, Sequent, TOP, Top, Bot, Var, fresh_name, free_vars, subst,
    term_vars, word, word_symbols,
)

KEYWORDS = {"forall", "exists", "top", "bot"}
MAX_NESTING = 400


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int
    end: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, message, span=None, expected=()):
        self.message = message
        self.span = span
        self.expected = frozenset(expected)
        where = f"{span}: " if span is not None else ""
        exp = f" (expected {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{where}{message}{exp}")


class KindError(ParseError):
    """A pushdown rule that matches none of the four admissible shapes."""


def _span(text, start, end):
    if text:
        start = min(max(start, 0), len(text) - 1)
        end = min(max(end, start + 1), len(text))
    else:
        start = end = 0
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(line, col, start, end)


# ---------------------------------------------------------------------------
# Tokens

@dataclass(frozen=True)
class Tok:
    kind: str  # ident, sym, eof
    text: str
    start: int
    end: int


_SYMBOLS = ["|-", "->", "<-", "::", "(", ")", ",", ".", "|", "&", "~", "[", "]", "=", ":", "/"]


def _is_ident_char(c, first):
    if c.isalpha() or c == "_":
        return True
    return not first and (c.isdigit() or c == "'")


def tokenize(text: str, base: int = 0, full: str | None = None) -> list:
    full = text if full is None else full
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c.isalpha() or c == "_" or c.isdigit():
            j = i + 1
            while j < n and _is_ident_char(text[j], False):
                j += 1
            toks.append(Tok("ident", text[i:j], base + i, base + j))
            i = j
            continue
        for s in _SYMBOLS:
            if text.startswith(s, i):
                toks.append(Tok("sym", s, base + i, base + i + len(s)))
                i += len(s)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", _span(full, base + i, base + i + 1))
    toks.append(Tok("eof", "", base + n, base + n))
    return toks


class _Parser:
    def __init__(self, text, free=frozenset(), base=0, full=None):
        self.full = text if full is None else full
        self.toks = tokenize(text, base, self.full)
        self.pos = 0
        self.bound = []
        self.free = set(free)
        self.depth = 0

    # -- helpers
    @property
    def tok(self):
        return self.toks[self.pos]

    def error(self, msg, expected=(), tok=None):
        tok = tok or self.tok
        return ParseError(msg, _span(self.full, tok.start, tok.end), expected)

    def at(self, text):
        t = self.tok
        return t.kind == "sym" and t.text == text

    def at_kw(self, kw):
        t = self.tok
        return t.kind == "ident" and t.text.lower() == kw

    def eat(self, text):
        if not self.at(text):
            raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", [repr(text)])
        self.pos += 1

    def ident(self, what="identifier"):
        t = self.tok
        if t.kind != "ident" or t.text.lower() in KEYWORDS or t.text[0].isdigit() and not t.text.isalnum():
            raise self.error(f"unexpected {t.text or 'end of input'!r}", [what])
        self.pos += 1
        return t.text

    def expect_eof(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}", ["end of input"])

    def enter(self):
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error("nesting too deep")

    # -- terms
    def term(self):
        self.enter()
        name = self.ident("term")
        if self.at("("):
            self.pos += 1
            args = [self.term()]
            while self.at(","):
                self.pos += 1
                args.append(self.term())
            self.eat(")")
            self.depth -= 1
            return App(name, tuple(args))
        self.depth -= 1
        if name in self.bound or name in self.free:
            return Var(name)
        return Const(name)

    def atom_args(self):
        if not self.at("("):
            return ()
        self.pos += 1
        args = [self.term()]
        while self.at(","):
            self.pos += 1
            args.append(self.term())
        self.eat(")")
        return tuple(args)

    # -- formulas
    def formula(self):
        self.enter()
        left = self.disj()
        if self.at("->"):
            self.pos += 1
            left = Imp(left, self.formula())
        self.depth -= 1
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.pos += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        self.enter()
        t = self.tok
        try:
            if t.kind == "ident":
                low = t.text.lower()
                if low in ("forall", "exists"):
                    self.pos += 1
                    var = self.ident("variable")
                    self.eat(".")
                    self.bound.append(var)
                    body = self.formula()
                    self.bound.pop()
                    return (Forall if low == "forall" else Exists)(var, body)
                if low == "top":
                    self.pos += 1
                    return TOP
                if low == "bot":
                    self.pos += 1
                    return BOT
                name = self.ident()
                return Atom(name, self.atom_args())
            if self.at("~"):
                self.pos += 1
                name = self.ident("atom")
                return NegAtom(name, self.atom_args())
            if self.at("["):
                self.pos += 1
                inner = self.formula()
                self.eat("]")
                return Frozen(inner)
            if self.at("("):
                self.pos += 1
                inner = self.formula()
                self.eat(")")
                return inner
            raise self.error(f"unexpected {t.text or 'end of input'!r}",
                             ["formula", "'('", "'['", "'~'", "forall", "exists", "top", "bot"])
        finally:
            self.depth -= 1

    def sequent(self):
        ctx = []
        if not self.at("|-"):
            ctx.append(self.formula())
            while self.at(","):
                self.pos += 1
                ctx.append(self.formula())
        self.eat("|-")
        goal = self.formula()
        return ctx, goal


def _decode(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", SourceSpan(1, 1, exc.start, exc.end))
    return text


def parse_formula(text, free_vars=frozenset()) -> Formula:
    """Parse one formula; identifiers in ``free_vars`` are free variables."""
    text = _decode(text)
    p = _Parser(text, free_vars)
    f = p.formula()
    p.expect_eof()
    return rectify(f)


def parse_sequent(text, free_vars=frozenset()) -> Sequent:
    text = _decode(text)
    p = _Parser(text, free_vars)
    ctx, goal = p.sequent()
    p.expect_eof()
    return Sequent([rectify(f) for f in ctx], rectify(goal))


def parse_term(text, free_vars=frozenset()):
    text = _decode(text)
    p = _Parser(text, free_vars)
    t = p.term()
    p.expect_eof()
    return t


# ---------------------------------------------------------------------------
# Rectification and printing

def _names(f, acc):
    if isinstance(f, (Atom, NegAtom)):
        for a in f.args:
            _term_names(a, acc)
    elif isinstance(f, (And, Or, Imp)):
        _names(f.left, acc)
        _names(f.right, acc)
    elif isinstance(f, (Forall, Exists)):
        _names(f.body, acc)
    elif isinstance(f, Frozen):
        _names(f.inner, acc)


def _term_names(t, acc):
    if isinstance(t, Const):
        acc.add(t.name)
    elif isinstance(t, App):
        acc.add(t.symbol)
        for a in t.args:
            _term_names(a, acc)


def rectify(f: Formula, avoid=None) -> Formula:
    """Rename bound variables apart from each other and from every other name."""
    used = set(free_vars(f))
    _names(f, used)
    if avoid:
        used |= set(avoid)
    return _rect(f, used)


def _rect(f, used):
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_rect(f.left, used), _rect(f.right, used))
    if isinstance(f, (Forall, Exists)):
        var = f.var
        body = f.body
        if var in used:
            new = fresh_name(var, used)
            body = subst(body, var, Var(new))
            var = new
        used.add(var)
        return type(f)(var, _rect(body, used))
    if isinstance(f, Frozen):
        return Frozen(_rect(f.inner, used))
    return f


def print_term(t) -> str:
    return str(t)


_PREC = {Imp: 1, Or: 2, And: 3}


def print_formula(f: Formula) -> str:
    return _pf(rectify(f), 0)


def _pf(f, level):
    if isinstance(f, Atom):
        if f.args:
            return f"{f.pred}({', '.join(print_term(a) for a in f.args)})"
        return f.pred
    if isinstance(f, NegAtom):
        if f.args:
            return f"~{f.pred}({', '.join(print_term(a) for a in f.args)})"
        return f"~{f.pred}"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Frozen):
        return f"[{_pf(f.inner, 0)}]"
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = f"{kw} {f.var}. {_pf(f.body, 0)}"
        return f"({s})" if level > 0 else s
    prec = _PREC[type(f)]
    op = {Imp: "->", Or: "|", And: "&"}[type(f)]
    if isinstance(f, Imp):
        s = f"{_pf(f.left, prec + 1)} -> {_pf(f.right, prec)}"
    else:
        s = f"{_pf(f.left, prec)} {op} {_pf(f.right, prec + 1)}"
    return f"({s})" if level > prec else s


def print_sequent(s: Sequent) -> str:
    ctx = ", ".join(_pf(rectify(f), 1) for f in s.context)
    goal = _pf(rectify(s.goal), 0)
    return f"{ctx} |- {goal}" if ctx else f"|- {goal}"


# ---------------------------------------------------------------------------
# Pushdown systems and automata

def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def _iter_lines(text):
    text = _decode(text)
    offset = 0
    for raw in text.split("\n"):
        line = raw.rstrip("\r")
        yield offset, line, text
        offset += len(raw) + 1


_DECLS = ("predicates", "symbols", "states", "alphabet", "final", "fsa")


def _apds_arg(p):
    """Parse a pushdown argument into its chain of identifiers."""
    chain = [p.ident("term")]
    while True:
        if p.at("("):
            p.pos += 1
            chain.extend(_apds_arg(p))
            p.eat(")")
            return chain
        if p.tok.kind == "ident":
            chain.append(p.ident("term"))
            continue
        return chain


def _apds_atom(p):
    pred = p.ident("predicate")
    start = p.tok
    p.eat("(")
    args = [_apds_arg(p)]
    while p.at(","):
        p.pos += 1
        args.append(_apds_arg(p))
    p.eat(")")
    return pred, args, start


def parse_apds_atom(text) -> Atom:
    """Parse a closed query such as ``S(a b)``: S applied to a(b(eps))."""
    text = _decode(text)
    p = _Parser(text)
    pred = p.ident("predicate")
    p.eat("(")
    syms = []
    while p.tok.kind == "ident":
        syms.append(p.ident("symbol"))
    p.eat(")")
    p.expect_eof()
    if syms and syms[-1] == "eps":
        syms.pop()
    if "eps" in syms:
        raise ParseError("eps may only end a word", _span(text, 0, len(text)))
    return Atom(pred, (word(syms),))


def print_apds_atom(a: Atom) -> str:
    syms = word_symbols(a.args[0])
    return f"{a.pred}({' '.join(syms) if syms else 'eps'})"


def _classify(head, prems, tok, full):
    from .apds import ApdsRule

    def kerr(msg):
        return KindError(msg, _span(full, tok.start, tok.end))

    hpred, hargs, _ = head
    for _, args, _ in [head] + prems:
        if len(args) != 1:
            raise kerr("pushdown predicates are unary")
    harg = hargs[0]
    if harg == ["eps"]:
        if prems:
            raise kerr("a rule concluding Q(eps) has no premises")
        return ApdsRule("eps", hpred, ())
    if len(harg) == 2 and harg[1] != "eps":
        sym, var = harg
        if all(a[0] == [var] for _, a, _ in prems):
            return ApdsRule("push", hpred, tuple(q for q, _, _ in prems), sym)
        raise kerr(f"premises of a push rule must all be applied to {var}")
    if len(harg) == 1:
        var = harg[0]
        if var == "eps":
            raise kerr("bad head")
        if prems and len(prems[0][1][0]) == 2 and prems[0][1][0][1] == var:
            sym = prems[0][1][0][0]
            if all(a[0] == [var] for _, a, _ in prems[1:]):
                return ApdsRule("elim", hpred, tuple(q for q, _, _ in prems), sym)
            raise kerr(f"side premises of an elimination must be applied to {var}")
        if all(a[0] == [var] for _, a, _ in prems):
            return ApdsRule("neutral", hpred, tuple(q for q, _, _ in prems))
        raise kerr("rule matches no pushdown rule shape")
    raise kerr("rule matches no pushdown rule shape")


def parse_apds(text):
    """Parse a pushdown system, or an automaton when the file starts with ``fsa:``."""
    from .apds import ApdsSystem, Fsa

    preds, syms, rules = None, None, []
    fsa = None
    names = set()
    for offset, line, full in _iter_lines(text):
        body = _strip_comment(line)
        if not body.strip():
            continue
        p = _Parser(body, base=offset, full=full)
        first = p.tok
        if first.kind == "ident" and first.text in _DECLS and p.toks[1].text == ":":
            p.pos += 2
            words = []
            while p.tok.kind == "ident":
                words.append(p.ident())
            p.expect_eof()
            if first.text == "fsa":
                if fsa is not None or rules:
                    raise p.error("misplaced fsa: header", tok=first)
                fsa = {"states": [], "alphabet": [], "final": [], "trans": []}
            elif first.text in ("predicates", "symbols"):
                if fsa is not None:
                    raise p.error(f"{first.text}: not allowed in an automaton", tok=first)
                if first.text == "predicates":
                    preds = words
                else:
                    syms = words
            else:
                if fsa is None:
                    raise p.error(f"{first.text}: only allowed after fsa:", tok=first)
                fsa[first.text] = words
            continue
        if fsa is not None:
            src = p.ident("state")
            sym = p.ident("symbol")
            p.eat("->")
            dst = p.ident("state")
            p.expect_eof()
            fsa["trans"].append((src, sym, dst))
            continue
        name = None
        if first.kind == "ident" and p.toks[1].text == ":":
            name = p.ident("rule name")
            p.pos += 1
        head = _apds_atom(p)
        prems = []
        if p.at("<-"):
            p.pos += 1
            if not p.at("."):
                prems.append(_apds_atom(p))
                while p.at(","):
                    p.pos += 1
                    prems.append(_apds_atom(p))
        p.eat(".")
        p.expect_eof()
        rule = _classify(head, prems, first, full)
        if name is not None:
            if name in names:
                raise p.error(f"duplicate rule name {name}", tok=first)
            names.add(name)
            rule = rule.renamed(name)
        rules.append(rule)
    if fsa is not None:
        try:
            return Fsa(fsa["states"], fsa["alphabet"], fsa["trans"], fsa["final"])
        except ValueError as exc:
            raise ParseError(str(exc), _span(_decode(text), 0, 1)) from None
    try:
        return ApdsSystem.build(rules, predicates=preds, symbols=syms)
    except ValueError as exc:
        raise ParseError(str(exc), _span(_decode(text), 0, 1)) from None


def print_apds(system, flagged=()) -> str:
    lines = [f"predicates: {' '.join(sorted(system.predicates))}",
             f"symbols: {' '.join(sorted(system.symbols))}"]
    for r in system.rules:
        s = f"{r.name}: {r.render()}"
        if r.name in flagged:
            s += "  # sat"
        lines.append(s)
    return "\n".join(lines) + "\n"


def print_fsa(m) -> str:
    lines = ["fsa:",
             f"states: {' '.join(m.states)}",
             f"alphabet: {' '.join(m.alphabet)}",
             f"final: {' '.join(m.final)}"]
    for src, sym, dst in m.transition_list():
        lines.append(f"{src} {sym} -> {dst}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Finite models

def parse_fdl_model(text):
    from .fdl import FdlModel

    domain = None
    relations = {}
    for offset, line, full in _iter_lines(text):
        body = _strip_comment(line)
        if not body.strip():
            continue
        p = _Parser(body, base=offset, full=full)
        first = p.tok
        if first.kind == "ident" and first.text == "domain":
            p.pos += 1
            p.eat(":")
            if domain is not None:
                raise p.error("domain declared twice", tok=first)
            domain = []
            while p.tok.kind == "ident":
                domain.append(p.ident("constant"))
            p.expect_eof()
            if not domain:
                raise p.error("empty domain", tok=first)
            if len(set(domain)) != len(domain):
                raise p.error("repeated domain element", tok=first)
            continue
        if first.kind == "ident" and first.text == "rel":
            if domain is None:
                raise p.error("rel before domain", tok=first)
            p.pos += 1
            pred = p.ident("predicate")
            p.eat("/")
            atok = p.tok
            if atok.kind != "ident" or not atok.text.isdigit():
                raise p.error("expected arity", ["arity"])
            arity = int(atok.text)
            p.pos += 1
            p.eat(":")
            if (pred, arity) in relations:
                raise p.error(f"relation {pred}/{arity} declared twice", tok=first)
            if any(q == pred for q, _ in relations):
                raise p.error(f"predicate {pred} declared with two arities", tok=first)
            tuples = set()
            while p.at("("):
                start = p.tok
                p.pos += 1
                row = []
                if not p.at(")"):
                    row.append(p.ident("constant"))
                    while p.at(","):
                        p.pos += 1
                        row.append(p.ident("constant"))
                p.eat(")")
                if len(row) != arity:
                    raise p.error(f"tuple has {len(row)} elements, {pred} has arity {arity}", tok=start)
                for c in row:
                    if c not in domain:
                        raise p.error(f"constant {c} not in domain", tok=start)
                tuples.add(tuple(row))
            p.expect_eof()
            relations[(pred, arity)] = tuples
            continue
        raise p.error(f"unexpected {first.text!r}", ["domain", "rel"], tok=first)
    if domain is None:
        raise ParseError("missing domain", _span(_decode(text), 0, 1))
    return FdlModel(domain, relations)


def print_fdl_model(model) -> str:
    lines = [f"domain: {' '.join(model.domain)}"]
    for (pred, k) in sorted(model.relations):
        rows = sorted(model.relations[(pred, k)])
        body = " ".join(f"({', '.join(r)})" for r in rows)
        lines.append(f"rel {pred}/{k}: {body}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Proofs

def _print_conclusion(c) -> str:
    if isinstance(c, Sequent):
        return print_sequent(c)
    return print_apds_atom(c)


def _record_head(inst) -> str:
    parts = [inst.rule_id]
    if inst.principal is not None:
        parts.append(f"[{_pf(rectify(inst.principal), 0)}]")
    if inst.witness is not None:
        parts.append(f"witness={print_term(inst.witness)}")
    if inst.fresh_var is not None:
        parts.append(f"fresh={inst.fresh_var}")
    return " ".join(parts)


def print_proof(proof, style: str = "records") -> str:
    """Render a proof as indented records (machine format) or an inference-bar tree."""
    if style == "records":
        return _print_records(proof)
    if style in ("text", "tree"):
        return "\n".join(_tree(proof)) + "\n"
    raise ValueError(f"unknown proof style {style!r}")


def _print_records(proof) -> str:
    from .proof import proof_vars

    lines = []
    if isinstance(proof.conclusion, Sequent):
        names = proof_vars(proof)
        if names:
            lines.append(f"vars: {' '.join(sorted(names))}")
    stack = [(0, proof)]
    while stack:
        depth, n = stack.pop()
        lines.append(f"{'  ' * depth}{_record_head(n.rule)} :: {_print_conclusion(n.conclusion)}")
        for p in reversed(n.premises):
            stack.append((depth + 1, p))
    return "\n".join(lines) + "\n"


def _tree(proof):
    """Lines of an inference-bar rendering; premises side by side above a bar."""
    concl = _print_conclusion(proof.conclusion)
    label = " " + proof.rule.rule_id
    blocks = [_tree(p) for p in proof.premises]
    if blocks:
        height = max(len(b) for b in blocks)
        widths = [max(len(l) for l in b) for b in blocks]
        padded = [[" " * w] * (height - len(b)) + [l.ljust(w) for l in b] for b, w in zip(blocks, widths)]
        above = ["   ".join(row[i] for row in padded).rstrip() for i in range(height)]
    else:
        above = []
    width = max([len(concl)] + [len(l) for l in above])
    bar = "-" * width + label
    indent = (width - len(concl)) // 2
    return above + [bar, " " * indent + concl]


def parse_proof(text, table, check: bool = True):
    """Parse indented records.  Syntax problems raise :class:`ParseError`;
    with ``check`` a well-formed file that is not a correct proof raises
    :class:`cutelim.proof.CheckError`."""
    from .proof import Proof, RuleInstance, check_proof

    apds = table.calculus == "APDS"
    free = set()
    entries = []  # (depth, instance, conclusion, offset)
    first = True
    for offset, line, full in _iter_lines(text):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        indent = len(line) - len(line.lstrip(" "))
        p = _Parser(line, base=offset, full=full)
        if first and p.tok.kind == "ident" and p.tok.text == "vars" and p.toks[1].text == ":":
            p.pos += 2
            while p.tok.kind == "ident":
                free.add(p.ident("variable"))
            p.expect_eof()
            first = False
            continue
        first = False
        if indent % 2:
            raise p.error("indentation must be a multiple of two spaces")
        rule_id = p.ident("rule name")
        principal = witness = fresh = None
        if p.at("["):
            p.pos += 1
            p.free = set(free)
            principal = rectify(p.formula())
            p.eat("]")
        if p.tok.kind == "ident" and p.tok.text == "witness":
            p.pos += 1
            p.eat("=")
            p.free = set(free)
            witness = p.term()
        if p.tok.kind == "ident" and p.tok.text == "fresh":
            p.pos += 1
            p.eat("=")
            fresh = p.ident("variable")
        sep = p.tok
        p.eat("::")
        rest = line[sep.end - offset:]
        try:
            if apds:
                concl = parse_apds_atom(rest)
            else:
                concl = parse_sequent(rest, free)
        except ParseError as exc:
            shift = sep.end
            sp = exc.span
            raise ParseError(exc.message, _span(full, shift + sp.start, shift + sp.end), exc.expected) from None
        entries.append((indent // 2, RuleInstance(rule_id, principal, witness, fresh), concl, offset, full))
    if not entries:
        raise ParseError("empty proof", _span(_decode(text), 0, 1))
    if entries[0][0] != 0:
        raise ParseError("root must not be indented", _span(entries[0][4], entries[0][3], entries[0][3] + 1))

    # rebuild the tree: open[i] is the unfinished node at depth i
    open_ = []

    def close():
        inst, concl, kids = open_.pop()
        node = Proof(inst, concl, tuple(kids))
        if open_:
            open_[-1][2].append(node)
        return node

    root = None
    for depth, inst, concl, offset, full in entries:
        if depth > len(open_):
            raise ParseError("indentation skips a level", _span(full, offset, offset + 1))
        if depth == 0 and root is not None:
            raise ParseError("more than one root", _span(full, offset, offset + 1))
        while len(open_) > depth:
            close()
        open_.append((inst, concl, []))
        if root is None:
            root = True
    proof = None
    while open_:
        proof = close()
    if check:
        check_proof(proof, table)
    return proof
