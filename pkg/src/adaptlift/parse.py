"""Recursive-descent parser from Java-ish source to the typed syntax tree.

Snippets are often free-standing statements, so parsing retries under
synthetic wrappers: compilation unit first, then method body (statement
sequence), then class body (member sequence). Wrapper nodes are flagged
synthetic and carry zero-length spans.
"""

from __future__ import annotations

from typing import Optional

from .lex import COMMENT, IDENTIFIER, KEYWORD, LITERAL, Token, tokenize
from .tree import Draft, SyntaxTree

PRIMITIVES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double"}
)

MODIFIER_WORDS = frozenset(
    """public private protected static final abstract synchronized native
    transient volatile strictfp default""".split()
)

ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="})

WrapMode = str  # one of: auto, none, method, class


class ParseError(Exception):
    def __init__(self, message: str, offset: int, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.offset = offset
        self.line = line
        self.column = column


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return line, offset - last_nl


class _Parser:
    def __init__(self, tokens: list[Token], text: str):
        self.toks = tokens
        self.text = text
        self.i = 0
        self.n = len(tokens)

    # --- token utilities -------------------------------------------------

    def lx(self, k: int = 0) -> Optional[str]:
        j = self.i + k
        return self.toks[j].lexeme if j < self.n else None

    def cls(self, k: int = 0) -> Optional[str]:
        j = self.i + k
        return self.toks[j].cls if j < self.n else None

    def tok(self, k: int = 0) -> Optional[Token]:
        j = self.i + k
        return self.toks[j] if j < self.n else None

    def at_end(self) -> bool:
        return self.i >= self.n

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, lexeme: str) -> Optional[Token]:
        if self.lx() == lexeme:
            return self.advance()
        return None

    def expect(self, lexeme: str) -> Token:
        if self.lx() == lexeme:
            return self.advance()
        self.fail(f"expected {lexeme!r}, found {self.lx()!r}")

    def fail(self, message: str):
        offset = self.toks[self.i].start if self.i < self.n else len(self.text)
        line, col = _line_col(self.text, offset)
        raise ParseError(message, offset, line, col)

    def adjacent(self, k: int) -> bool:
        """Tokens i+k-1 and i+k touch with no gap (for > > reassembly)."""
        a, b = self.tok(k - 1), self.tok(k)
        return a is not None and b is not None and a.end == b.start

    def gt_shape(self) -> tuple[str, int]:
        """Classify a '>' run at the cursor: >, >=, >>, >>=, >>>, >>>=."""
        run = 1
        while self.lx(run) == ">" and self.adjacent(run):
            run += 1
        run = min(run, 3)
        if self.lx(run) == "=" and self.adjacent(run):
            return ">" * run + "=", run + 1
        return ">" * run, run

    def span_from(self, start_tok: Token) -> tuple[int, int]:
        return start_tok.start, self.toks[self.i - 1].end

    # --- draft helpers ---------------------------------------------------

    def leaf(self, label: str, t: Token) -> Draft:
        return Draft(label, t.start, t.end, [], value=t.lexeme)

    def op_leaf(self, first: Token, ntok: int = 1) -> Draft:
        last = self.toks[self.i - 1] if ntok > 1 else first
        return Draft("Operator", first.start, last.end, [], value=self.text[first.start : last.end])

    # --- compilation unit / members --------------------------------------

    def compilation_unit(self) -> Draft:
        start = self.toks[0].start if self.n else 0
        children: list[Draft] = []
        if self.lx() == "package":
            kw = self.advance()
            name = self.dotted_name_leaf()
            semi = self.expect(";")
            children.append(Draft("PackageDeclaration", kw.start, semi.end, [name]))
        while self.lx() == "import":
            kw = self.advance()
            self.accept("static")
            name = self.dotted_name_leaf(allow_star=True)
            semi = self.expect(";")
            children.append(Draft("ImportDeclaration", kw.start, semi.end, [name]))
        while not self.at_end():
            children.append(self.type_declaration())
        end = self.toks[self.n - 1].end if self.n else 0
        return Draft("CompilationUnit", start, end, children)

    def dotted_name_leaf(self, allow_star: bool = False) -> Draft:
        first = self.tok()
        if self.cls() != IDENTIFIER:
            self.fail("expected name")
        self.advance()
        while self.lx() == "." and (
            self.cls(1) == IDENTIFIER or (allow_star and self.lx(1) == "*")
        ):
            self.advance()
            self.advance()
        s, e = first.start, self.toks[self.i - 1].end
        return Draft("Name", s, e, [], value=self.text[s:e])

    def modifiers_and_annotations(self) -> list[Draft]:
        out: list[Draft] = []
        while True:
            if self.lx() == "@" and self.lx(1) != "interface":
                out.append(self.annotation())
            elif self.lx() in MODIFIER_WORDS and not (
                self.lx() == "default" and self.lx(1) == ":"
            ):
                t = self.advance()
                out.append(self.leaf("Modifier", t))
            else:
                return out

    def annotation(self) -> Draft:
        at = self.expect("@")
        name = self.dotted_name_leaf()
        children = [name]
        if self.lx() == "(":
            children.append(self.arguments(annotation=True))
        s, e = at.start, self.toks[self.i - 1].end
        return Draft("Annotation", s, e, children)

    def type_declaration(self) -> Draft:
        start_tok = self.tok()
        if start_tok is None:
            self.fail("expected type declaration")
        mods = self.modifiers_and_annotations()
        if self.lx() not in ("class", "interface", "enum"):
            self.fail("expected class, interface or enum")
        return self.class_declaration(mods, start_tok)

    def class_declaration(self, mods: list[Draft], start_tok: Token) -> Draft:
        kind = self.advance().lexeme
        name = self.leaf("Name", self.advance()) if self.cls() == IDENTIFIER else self.fail(
            "expected type name"
        )
        children = mods + [name]
        if self.lx() == "<":
            children.append(self.type_parameters())
        if self.accept("extends"):
            children.append(self.parse_type())
            while self.accept(","):  # interface may extend several
                children.append(self.parse_type())
        if self.accept("implements"):
            children.append(self.parse_type())
            while self.accept(","):
                children.append(self.parse_type())
        self.expect("{")
        if kind == "enum":
            children.extend(self.enum_body())
        while self.lx() != "}":
            if self.at_end():
                self.fail("unterminated class body")
            children.append(self.member())
        self.expect("}")
        s, e = self.span_from(start_tok)
        return Draft("ClassDeclaration", s, e, children)

    def enum_body(self) -> list[Draft]:
        out: list[Draft] = []
        while self.cls() == IDENTIFIER:
            t = self.advance()
            kids = [self.leaf("Name", t)]
            if self.lx() == "(":
                kids.append(self.arguments())
            s, e = t.start, self.toks[self.i - 1].end
            out.append(Draft("EnumConstant", s, e, kids))
            if not self.accept(","):
                break
        self.accept(";")
        return out

    def type_parameters(self) -> Draft:
        lt = self.expect("<")
        kids = []
        while self.lx() != ">":
            kids.append(self.parse_type(bound_ok=True))
            if not self.accept(","):
                break
        self.expect(">")
        s, e = lt.start, self.toks[self.i - 1].end
        return Draft("TypeParameters", s, e, kids)

    def member(self) -> Draft:
        start_tok = self.tok()
        mods = self.modifiers_and_annotations()
        if self.lx() in ("class", "interface", "enum"):
            return self.class_declaration(mods, start_tok)
        if self.lx() == "{":  # initializer block (maybe preceded by static)
            blk = self.block()
            return blk
        type_params = None
        if self.lx() == "<":
            type_params = self.type_parameters()
        # constructor: Name (
        if self.cls() == IDENTIFIER and self.lx(1) == "(":
            name = self.leaf("Name", self.advance())
            return self.method_rest(start_tok, mods, type_params, None, name)
        if self.lx() == "void":
            ret: Optional[Draft] = self.leaf("SimpleType", self.advance())
        else:
            ret = self.try_type()
            if ret is None:
                self.fail("expected member declaration")
        if self.cls() != IDENTIFIER:
            self.fail("expected member name")
        name = self.leaf("Name", self.advance())
        if self.lx() == "(":
            return self.method_rest(start_tok, mods, type_params, ret, name)
        declarators = self.declarators(first_name=name)
        semi = self.expect(";")
        kids = mods + [ret] + declarators
        return Draft("VariableDeclaration", start_tok.start, semi.end, kids)

    def method_rest(
        self,
        start_tok: Token,
        mods: list[Draft],
        type_params: Optional[Draft],
        ret: Optional[Draft],
        name: Draft,
    ) -> Draft:
        params = self.parameters()
        kids = list(mods)
        if type_params is not None:
            kids.append(type_params)
        if ret is not None:
            kids.append(ret)
        kids.append(name)
        kids.append(params)
        if self.accept("throws"):
            kids.append(self.parse_type())
            while self.accept(","):
                kids.append(self.parse_type())
        if self.lx() == "{":
            kids.append(self.block())
        else:
            self.expect(";")
        s, e = self.span_from(start_tok)
        return Draft("MethodDeclaration", s, e, kids)

    def parameters(self) -> Draft:
        lp = self.expect("(")
        kids = []
        while self.lx() != ")":
            kids.append(self.parameter())
            if not self.accept(","):
                break
        rp = self.expect(")")
        return Draft("Parameters", lp.start, rp.end, kids)

    def parameter(self) -> Draft:
        start_tok = self.tok()
        mods = self.modifiers_and_annotations()
        ptype = self.try_type()
        if ptype is None:
            self.fail("expected parameter type")
        self.accept("...")
        if self.cls() != IDENTIFIER:
            self.fail("expected parameter name")
        name = self.leaf("Name", self.advance())
        kids = mods + [ptype, name]
        while self.lx() == "[":
            kids.append(self.empty_dimension())
        s, e = self.span_from(start_tok)
        return Draft("VariableDeclaration", s, e, kids)

    def empty_dimension(self) -> Draft:
        lb = self.expect("[")
        rb = self.expect("]")
        return Draft("Dimension", lb.start, rb.end, [])

    def declarators(self, first_name: Optional[Draft] = None) -> list[Draft]:
        out = []
        name = first_name
        while True:
            if name is None:
                if self.cls() != IDENTIFIER:
                    self.fail("expected variable name")
                name = self.leaf("Name", self.advance())
            kids = [name]
            while self.lx() == "[":
                kids.append(self.empty_dimension())
            if self.accept("="):
                kids.append(self.variable_initializer())
            s = name.start
            e = self.toks[self.i - 1].end if self.i else name.end
            e = max(e, kids[-1].end)
            out.append(Draft("Declarator", s, e, kids))
            name = None
            if not self.accept(","):
                return out

    def variable_initializer(self) -> Draft:
        if self.lx() == "{":
            return self.array_initializer()
        return self.expression()

    def array_initializer(self) -> Draft:
        lb = self.expect("{")
        kids = []
        while self.lx() != "}":
            kids.append(self.variable_initializer())
            if not self.accept(","):
                break
        rb = self.expect("}")
        return Draft("ArrayInitializer", lb.start, rb.end, kids)

    # --- types ------------------------------------------------------------

    def try_type(self, bound_ok: bool = False) -> Optional[Draft]:
        mark = self.i
        try:
            return self.parse_type(bound_ok=bound_ok)
        except ParseError:
            self.i = mark
            return None

    def parse_type(self, bound_ok: bool = False) -> Draft:
        start_tok = self.tok()
        if start_tok is None:
            self.fail("expected type")
        if start_tok.lexeme in PRIMITIVES:
            self.advance()
            base = self.leaf("SimpleType", start_tok)
        elif start_tok.cls == IDENTIFIER:
            self.advance()
            while self.lx() == "." and self.cls(1) == IDENTIFIER:
                self.advance()
                self.advance()
            s, e = start_tok.start, self.toks[self.i - 1].end
            base = Draft("SimpleType", s, e, [], value=self.text[s:e])
        else:
            self.fail("expected type")
        args: list[Draft] = []
        has_args = False
        if self.lx() == "<":
            has_args = True
            self.advance()
            while self.lx() != ">":
                args.append(self.type_argument())
                if not self.accept(","):
                    break
            if self.lx() != ">":
                self.fail("expected '>'")
            self.advance()
        if bound_ok and self.lx() == "extends":
            self.advance()
            args.append(self.parse_type())
            has_args = True
        dims: list[Draft] = []
        while self.lx() == "[" and self.lx(1) == "]":
            dims.append(self.empty_dimension())
        if not has_args and not dims:
            return base
        s = base.start
        e = self.toks[self.i - 1].end
        return Draft("Type", s, e, [base] + args + dims)

    def type_argument(self) -> Draft:
        if self.lx() == "?":
            q = self.advance()
            kids = []
            if self.lx() in ("extends", "super"):
                self.advance()
                kids.append(self.parse_type())
            s, e = q.start, self.toks[self.i - 1].end
            return Draft("Wildcard", s, e, kids)
        return self.parse_type()

    # --- statements ---------------------------------------------------------

    def block(self) -> Draft:
        lb = self.expect("{")
        stmts = []
        while self.lx() != "}":
            if self.at_end():
                self.fail("unterminated block")
            stmts.append(self.statement())
        rb = self.expect("}")
        return Draft("Block", lb.start, rb.end, stmts)

    def statement(self) -> Draft:
        lx = self.lx()
        if lx == "{":
            return self.block()
        if lx == ";":
            t = self.advance()
            return self.leaf("EmptyStatement", t)
        if lx == "if":
            return self.if_statement()
        if lx == "while":
            kw = self.advance()
            cond = self.paren_condition("LoopCondition")
            body = self.statement()
            s, e = self.span_from(kw)
            return Draft("WhileStatement", s, e, [cond, body])
        if lx == "do":
            kw = self.advance()
            body = self.statement()
            self.expect("while")
            cond = self.paren_condition("LoopCondition")
            semi = self.expect(";")
            return Draft("DoStatement", kw.start, semi.end, [body, cond])
        if lx == "for":
            return self.for_statement()
        if lx == "switch":
            return self.switch_statement()
        if lx == "try":
            return self.try_statement()
        if lx == "return":
            kw = self.advance()
            kids = [] if self.lx() == ";" else [self.expression()]
            semi = self.expect(";")
            return Draft("ReturnStatement", kw.start, semi.end, kids)
        if lx == "throw":
            kw = self.advance()
            expr = self.expression()
            semi = self.expect(";")
            return Draft("ThrowStatement", kw.start, semi.end, [expr])
        if lx in ("break", "continue"):
            kw = self.advance()
            kids = []
            if self.cls() == IDENTIFIER:
                kids.append(self.leaf("Name", self.advance()))
            semi = self.expect(";")
            label = "BreakStatement" if lx == "break" else "ContinueStatement"
            return Draft(label, kw.start, semi.end, kids)
        if lx == "synchronized" and self.lx(1) == "(":
            kw = self.advance()
            self.expect("(")
            expr = self.expression()
            self.expect(")")
            body = self.block()
            s, e = self.span_from(kw)
            return Draft("SynchronizedStatement", s, e, [expr, body])
        if lx == "assert":
            kw = self.advance()
            kids = [self.expression()]
            if self.accept(":"):
                kids.append(self.expression())
            semi = self.expect(";")
            return Draft("AssertStatement", kw.start, semi.end, kids)
        if self.cls() == IDENTIFIER and self.lx(1) == ":":
            name = self.leaf("Name", self.advance())
            self.expect(":")
            stmt = self.statement()
            return Draft("LabeledStatement", name.start, stmt.end, [name, stmt])
        decl = self.try_local_declaration()
        if decl is not None:
            return decl
        mods_mark = self.i
        mods = self.modifiers_and_annotations()
        if self.lx() in ("class", "interface", "enum"):
            start_tok = self.toks[mods_mark]
            return self.class_declaration(mods, start_tok)
        self.i = mods_mark
        expr = self.expression()
        semi = self.expect(";")
        expr.end = semi.end
        return expr

    def if_statement(self) -> Draft:
        kw = self.expect("if")
        cond = self.paren_condition()
        then = self.statement()
        kids = [cond, then]
        if self.accept("else"):
            kids.append(self.statement())
        s, e = self.span_from(kw)
        return Draft("IfStatement", s, e, kids)

    def paren_condition(self, label: str = "IfCondition") -> Draft:
        lp = self.expect("(")
        expr = self.expression()
        rp = self.expect(")")
        return Draft(label, lp.start, rp.end, [expr])

    def for_statement(self) -> Draft:
        kw = self.expect("for")
        lp = self.expect("(")
        # enhanced for: [mods] Type name : expr
        mark = self.i
        mods = self.modifiers_and_annotations()
        ftype = self.try_type()
        if ftype is not None and self.cls() == IDENTIFIER and self.lx(1) == ":":
            name = self.leaf("Name", self.advance())
            colon = self.expect(":")
            var = Draft(
                "VariableDeclaration",
                self.toks[mark].start,
                name.end,
                mods + [ftype, name],
            )
            it_start = self.tok()
            iterable = self.expression()
            rp = self.expect(")")
            cond = Draft("LoopCondition", it_start.start, iterable.end, [iterable])
            body = self.statement()
            s, e = self.span_from(kw)
            return Draft("ForEachStatement", s, e, [var, cond, body])
        self.i = mark
        kids: list[Draft] = []
        if self.lx() != ";":
            init_start = self.tok()
            decl = self.try_local_declaration(consume_semicolon=False)
            if decl is not None:
                kids.append(Draft("ForInit", init_start.start, decl.end, [decl]))
            else:
                exprs = [self.expression()]
                while self.accept(","):
                    exprs.append(self.expression())
                kids.append(Draft("ForInit", init_start.start, exprs[-1].end, exprs))
        self.expect(";")
        if self.lx() != ";":
            c_start = self.tok()
            cond = self.expression()
            kids.append(Draft("LoopCondition", c_start.start, cond.end, [cond]))
        self.expect(";")
        if self.lx() != ")":
            u_start = self.tok()
            ups = [self.expression()]
            while self.accept(","):
                ups.append(self.expression())
            kids.append(Draft("ForUpdate", u_start.start, ups[-1].end, ups))
        self.expect(")")
        body = self.statement()
        kids.append(body)
        s, e = self.span_from(kw)
        return Draft("ForStatement", s, e, kids)

    def switch_statement(self) -> Draft:
        kw = self.expect("switch")
        self.expect("(")
        selector = self.expression()
        self.expect(")")
        self.expect("{")
        kids: list[Draft] = [selector]
        while self.lx() != "}":
            if self.at_end():
                self.fail("unterminated switch")
            if self.lx() == "case":
                c = self.advance()
                expr = self.expression()
                colon = self.expect(":")
                kids.append(Draft("SwitchCase", c.start, colon.end, [expr]))
            elif self.lx() == "default" and self.lx(1) == ":":
                c = self.advance()
                colon = self.expect(":")
                kids.append(Draft("SwitchCase", c.start, colon.end, []))
            else:
                kids.append(self.statement())
        self.expect("}")
        s, e = self.span_from(kw)
        return Draft("SwitchStatement", s, e, kids)

    def try_statement(self) -> Draft:
        kw = self.expect("try")
        kids: list[Draft] = []
        if self.lx() == "(":
            self.advance()
            while self.lx() != ")":
                res_start = self.tok()
                mods = self.modifiers_and_annotations()
                rtype = self.parse_type()
                name = self.leaf("Name", self.advance()) if self.cls() == IDENTIFIER else self.fail(
                    "expected resource name"
                )
                self.expect("=")
                init = self.expression()
                s, e = res_start.start, init.end
                kids.append(
                    Draft("VariableDeclaration", s, e, mods + [rtype, name, init])
                )
                if not self.accept(";"):
                    break
            self.expect(")")
        kids.append(self.block())
        while self.lx() == "catch":
            ckw = self.advance()
            self.expect("(")
            p_start = self.tok()
            mods = self.modifiers_and_annotations()
            ctypes = [self.parse_type()]
            while self.accept("|"):
                ctypes.append(self.parse_type())
            if self.cls() != IDENTIFIER:
                self.fail("expected catch parameter name")
            pname = self.leaf("Name", self.advance())
            self.expect(")")
            param = Draft(
                "VariableDeclaration",
                p_start.start,
                pname.end,
                mods + ctypes + [pname],
            )
            cblock = self.block()
            kids.append(Draft("CatchClause", ckw.start, cblock.end, [param, cblock]))
        if self.lx() == "finally":
            fkw = self.advance()
            fblock = self.block()
            kids.append(Draft("FinallyBlock", fkw.start, fblock.end, [fblock]))
        s, e = self.span_from(kw)
        return Draft("TryStatement", s, e, kids)

    def try_local_declaration(self, consume_semicolon: bool = True) -> Optional[Draft]:
        mark = self.i
        start_tok = self.tok()
        if start_tok is None:
            return None
        try:
            mods = self.modifiers_and_annotations()
            vtype = self.parse_type()
            if self.cls() != IDENTIFIER:
                raise ParseError("not a declaration", start_tok.start, 0, 0)
            nxt = self.lx(1)
            if nxt not in ("=", ";", ",", "["):
                raise ParseError("not a declaration", start_tok.start, 0, 0)
            declarators = self.declarators()
            if consume_semicolon:
                semi = self.expect(";")
                end = semi.end
            else:
                end = declarators[-1].end
            kids = mods + [vtype] + declarators
            return Draft("VariableDeclaration", start_tok.start, end, kids)
        except ParseError:
            self.i = mark
            return None

    # --- expressions ---------------------------------------------------------

    def expression(self) -> Draft:
        lhs = self.ternary()
        op_tok = self.tok()
        if self.lx() in ASSIGN_OPS:
            t = self.advance()
            op = self.op_leaf(t)
        elif self.lx() == ">":
            shape, ntok = self.gt_shape()
            if shape in (">>=", ">>>="):
                first = self.tok()
                for _ in range(ntok):
                    self.advance()
                op = self.op_leaf(first, ntok)
            else:
                return lhs
        else:
            return lhs
        rhs = self.expression()
        return Draft("Assignment", lhs.start, rhs.end, [lhs, op, rhs])

    def ternary(self) -> Draft:
        cond = self.binary(0)
        if self.lx() == "?":
            self.advance()
            then = self.expression()
            self.expect(":")
            els = self.ternary()
            return Draft("Conditional", cond.start, els.end, [cond, then, els])
        return cond

    _LEVELS = (
        ("||",),
        ("&&",),
        ("|",),
        ("^",),
        ("&",),
        ("==", "!="),
        ("<", ">", "<=", ">=", "instanceof"),
        ("<<", ">>", ">>>"),
        ("+", "-"),
        ("*", "/", "%"),
    )

    def binary(self, level: int) -> Draft:
        if level >= len(self._LEVELS):
            return self.unary()
        ops = self._LEVELS[level]
        left = self.binary(level + 1)
        while True:
            lx = self.lx()
            if lx == "instanceof" and "instanceof" in ops:
                self.advance()
                t = self.parse_type()
                left = Draft("InstanceofExpression", left.start, t.end, [left, t])
                continue
            if lx == ">" and (">" in ops or ">>" in ops):
                shape, ntok = self.gt_shape()
                if shape in (">", ">=") and ">" in ops:
                    first = self.tok()
                    for _ in range(ntok):
                        self.advance()
                    op = self.op_leaf(first, ntok)
                elif shape in (">>", ">>>") and ">>" in ops:
                    first = self.tok()
                    for _ in range(ntok):
                        self.advance()
                    op = self.op_leaf(first, ntok)
                else:
                    return left
            elif lx in ops and lx != ">":
                # '|' must not swallow '||'; lexer already split correctly
                t = self.advance()
                op = self.op_leaf(t)
            else:
                return left
            right = self.binary(level + 1)
            left = Draft("InfixExpression", left.start, right.end, [left, op, right])

    def unary(self) -> Draft:
        lx = self.lx()
        if lx in ("+", "-", "!", "~", "++", "--"):
            t = self.advance()
            op = self.op_leaf(t)
            operand = self.unary()
            return Draft("PrefixExpression", t.start, operand.end, [op, operand])
        if lx == "(":
            cast = self.try_cast()
            if cast is not None:
                return cast
        return self.postfix()

    def try_cast(self) -> Optional[Draft]:
        mark = self.i
        lp = self.expect("(")
        ctype = self.try_type()
        if ctype is None or self.lx() != ")":
            self.i = mark
            return None
        self.advance()
        nxt = self.tok()
        if nxt is None:
            self.i = mark
            return None
        primitive = ctype.label == "SimpleType" and ctype.value in PRIMITIVES
        ok_start = (
            nxt.cls in (IDENTIFIER, LITERAL)
            or nxt.lexeme in ("(", "new", "this", "super", "!", "~")
            or (primitive and nxt.lexeme in ("+", "-", "++", "--"))
        )
        if not ok_start:
            self.i = mark
            return None
        try:
            operand = self.unary()
        except ParseError:
            self.i = mark
            return None
        return Draft("Cast", lp.start, operand.end, [ctype, operand])

    def arguments(self, annotation: bool = False) -> Draft:
        lp = self.expect("(")
        kids = []
        while self.lx() != ")":
            if annotation and self.lx() == "{":
                kids.append(self.array_initializer())
            else:
                kids.append(self.expression())
            if not self.accept(","):
                break
        rp = self.expect(")")
        return Draft("Arguments", lp.start, rp.end, kids)

    def postfix(self) -> Draft:
        node = self.primary()
        while True:
            lx = self.lx()
            if lx == "." and self.cls(1) == IDENTIFIER and self.lx(2) == "(":
                self.advance()
                name = self.leaf("Name", self.advance())
                args = self.arguments()
                node = Draft(
                    "MethodInvocation", node.start, args.end, [node, name, args]
                )
            elif lx == "." and (self.cls(1) == IDENTIFIER or self.lx(1) in ("this", "class")):
                self.advance()
                name = self.leaf("Name", self.advance())
                node = Draft("FieldAccess", node.start, name.end, [node, name])
            elif lx == "[" and self.lx(1) != "]":
                self.advance()
                idx = self.expression()
                rb = self.expect("]")
                node = Draft("ArrayAccess", node.start, rb.end, [node, idx])
            elif lx == "::":
                self.advance()
                t = self.advance()
                name = self.leaf("Name", t)
                node = Draft("MethodReference", node.start, name.end, [node, name])
            elif lx in ("++", "--"):
                t = self.advance()
                op = self.op_leaf(t)
                node = Draft("PostfixExpression", node.start, op.end, [node, op])
            else:
                return node

    def primary(self) -> Draft:
        t = self.tok()
        if t is None:
            self.fail("expected expression")
        if t.cls == LITERAL:
            self.advance()
            return self.leaf("Literal", t)
        if t.lexeme == "(":
            lam = self.try_lambda_parens()
            if lam is not None:
                return lam
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if t.lexeme == "new":
            return self.creation()
        if t.lexeme in ("this", "super"):
            self.advance()
            node: Draft = self.leaf("Name", t)
            if self.lx() == "(":
                args = self.arguments()
                node = Draft("MethodInvocation", t.start, args.end, [node, args])
            return node
        if t.cls == IDENTIFIER:
            if self.lx(1) == "->":
                self.advance()
                name = self.leaf("Name", t)
                self.expect("->")
                body = self.lambda_body()
                return Draft("Lambda", t.start, body.end, [name, body])
            return self.name_chain()
        self.fail(f"unexpected token {t.lexeme!r}")

    def name_chain(self) -> Draft:
        parts = [self.leaf("Name", self.advance())]
        while self.lx() == "." and self.cls(1) == IDENTIFIER and self.lx(2) != "(":
            self.advance()
            parts.append(self.leaf("Name", self.advance()))
        receiver: Optional[Draft]
        if self.lx() == "." and self.cls(1) == IDENTIFIER and self.lx(2) == "(":
            if len(parts) == 1:
                receiver = parts[0]
            else:
                receiver = Draft(
                    "QualifiedName", parts[0].start, parts[-1].end, parts
                )
            self.advance()
            name = self.leaf("Name", self.advance())
            args = self.arguments()
            return Draft(
                "MethodInvocation", receiver.start, args.end, [receiver, name, args]
            )
        if self.lx() == "(":
            # local call: last part is the method name
            name = parts[-1]
            args = self.arguments()
            if len(parts) == 1:
                return Draft("MethodInvocation", name.start, args.end, [name, args])
            prefix = parts[:-1]
            receiver = (
                prefix[0]
                if len(prefix) == 1
                else Draft("QualifiedName", prefix[0].start, prefix[-1].end, prefix)
            )
            return Draft(
                "MethodInvocation", receiver.start, args.end, [receiver, name, args]
            )
        if len(parts) == 1:
            return parts[0]
        return Draft("QualifiedName", parts[0].start, parts[-1].end, parts)

    def try_lambda_parens(self) -> Optional[Draft]:
        # '(' ... ')' '->'
        depth = 0
        k = 0
        while True:
            lx = self.lx(k)
            if lx is None:
                return None
            if lx == "(":
                depth += 1
            elif lx == ")":
                depth -= 1
                if depth == 0:
                    break
            k += 1
            if k > 200:
                return None
        if self.lx(k + 1) != "->":
            return None
        lp = self.expect("(")
        params: list[Draft] = []
        while self.lx() != ")":
            if self.cls() == IDENTIFIER and self.lx(1) in (",", ")"):
                params.append(self.leaf("Name", self.advance()))
            else:
                params.append(self.parameter())
            if not self.accept(","):
                break
        self.expect(")")
        self.expect("->")
        body = self.lambda_body()
        return Draft("Lambda", lp.start, body.end, params + [body])

    def lambda_body(self) -> Draft:
        if self.lx() == "{":
            return self.block()
        return self.expression()

    def creation(self) -> Draft:
        kw = self.expect("new")
        ctype = self.parse_type()
        if self.lx() == "(":
            args = self.arguments()
            kids = [ctype, args]
            end = args.end
            if self.lx() == "{":
                lb = self.advance()
                members = []
                while self.lx() != "}":
                    if self.at_end():
                        self.fail("unterminated anonymous class body")
                    members.append(self.member())
                rb = self.expect("}")
                kids.append(Draft("AnonymousClass", lb.start, rb.end, members))
                end = rb.end
            return Draft("ClassInstanceCreation", kw.start, end, kids)
        if self.lx() == "[":
            dims = []
            while self.lx() == "[":
                lb = self.advance()
                if self.lx() == "]":
                    rb = self.advance()
                    dims.append(Draft("Dimension", lb.start, rb.end, []))
                else:
                    size = self.expression()
                    rb = self.expect("]")
                    dims.append(Draft("Dimension", lb.start, rb.end, [size]))
            kids = [ctype] + dims
            end = dims[-1].end
            if self.lx() == "{":
                init = self.array_initializer()
                kids.append(init)
                end = init.end
            return Draft("ArrayCreation", kw.start, end, kids)
        if self.lx() == "{" and ctype.label == "Type":
            # new int[]{...}: parse_type already consumed the empty dims
            init = self.array_initializer()
            return Draft("ArrayCreation", kw.start, init.end, [ctype, init])
        self.fail("expected '(' or '[' after new")

    # --- wrap-mode entry points -------------------------------------------

    def statements_until_eof(self) -> list[Draft]:
        out = []
        while not self.at_end():
            out.append(self.statement())
        if not out:
            self.fail("no statements")
        return out

    def members_until_eof(self) -> list[Draft]:
        out = []
        while not self.at_end():
            out.append(self.member())
        if not out:
            self.fail("no members")
        return out


def _wrap_chain(inner: list[Draft], levels: tuple[str, ...]) -> Draft:
    node_children = inner
    draft = None
    for label in reversed(levels):
        draft = Draft(label, 0, 0, node_children, synthetic=True)
        node_children = [draft]
    assert draft is not None
    return draft


def _attach_comments(root: Draft, comments: tuple[Token, ...]) -> None:
    for c in comments:
        node = root
        descended = True
        while descended:
            descended = False
            for child in node.children:
                if child.label == "Comment":
                    continue
                if child.synthetic and child.children:
                    node = child
                    descended = True
                    break
                if (
                    not child.synthetic
                    and child.children
                    and child.start <= c.start
                    and c.end <= child.end
                ):
                    node = child
                    descended = True
                    break
        idx = len(node.children)
        for k, child in enumerate(node.children):
            if not child.synthetic and child.start >= c.start:
                idx = k
                break
        node.children.insert(
            idx, Draft("Comment", c.start, c.end, [], value=c.lexeme)
        )


def parse_snippet(text: str, wrap: WrapMode = "auto") -> SyntaxTree:
    """Parse source text into a SyntaxTree whose spans index the original text.

    wrap=auto tries a compilation unit, then a method body (statement
    sequence), then a class body; synthetic wrappers are flagged and carry
    zero-length spans. Raises ParseError when every mode fails.
    """
    if not text:
        raise ParseError("empty snippet", 0, 1, 1)
    stream = tokenize(text)
    code = [t for t in stream.tokens if t.cls != COMMENT]
    comments = stream.comments()

    if wrap == "auto":
        modes = ("none", "method", "class")
    elif wrap in ("none", "method", "class"):
        modes = (wrap,)
    else:
        raise ValueError(f"unknown wrap mode {wrap!r}")

    errors: list[ParseError] = []
    for mode in modes:
        parser = _Parser(list(code), text)
        try:
            if mode == "none":
                root = parser.compilation_unit()
            elif mode == "method":
                stmts = parser.statements_until_eof()
                root = _wrap_chain(
                    stmts,
                    ("CompilationUnit", "ClassDeclaration", "MethodDeclaration", "Block"),
                )
            else:
                members = parser.members_until_eof()
                root = _wrap_chain(members, ("CompilationUnit", "ClassDeclaration"))
        except ParseError as err:
            errors.append(err)
            continue
        _attach_comments(root, comments)
        return SyntaxTree.from_draft(root, text)

    best = max(errors, key=lambda e: e.offset)
    raise best
