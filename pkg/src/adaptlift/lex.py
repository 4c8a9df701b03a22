"""Java lexer producing a classified, span-preserving token stream.

Token classes follow the measurement convention used by the corpus pipeline:
keywords, delimiters and comments are structural and excluded from snippet
size; identifiers, literals and operators are the countable payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

WORD_LITERALS = frozenset({"true", "false", "null"})

DELIMITERS = frozenset({"(", ")", "{", "}", "[", "]", ";", ",", ".", "..."})

# '>' is always lexed alone so that nested generics close cleanly; the parser
# reassembles shift/relational operators from adjacent tokens.
MULTI_OPERATORS = (
    "<<=",
    "->",
    "::",
    "++",
    "--",
    "<<",
    "+=",
    "-=",
    "*=",
    "/=",
    "%=",
    "&=",
    "|=",
    "^=",
    "==",
    "!=",
    "<=",
    "&&",
    "||",
)

SINGLE_OPERATORS = frozenset("+-*/%=!<>&|^~?:@")

KEYWORD = "keyword"
IDENTIFIER = "identifier"
LITERAL = "literal"
OPERATOR = "operator"
DELIMITER = "delimiter"
COMMENT = "comment"

COUNTABLE_CLASSES = frozenset({IDENTIFIER, LITERAL, OPERATOR})


@dataclass(frozen=True)
class Token:
    lexeme: str
    cls: str
    start: int
    end: int

    def __repr__(self) -> str:  # compact for test diffs
        return f"Token({self.lexeme!r}, {self.cls}, {self.start}:{self.end})"


@dataclass(frozen=True)
class TokenStream:
    """Ordered tokens over `text`; spans are disjoint and sorted, so the
    original text is recoverable from the tokens plus the inter-token gaps."""

    tokens: tuple[Token, ...]
    text: str

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def pairs(self) -> list[tuple[str, str]]:
        return [(t.lexeme, t.cls) for t in self.tokens]

    def without_comments(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.cls != COMMENT)

    def comments(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.cls == COMMENT)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c in "_$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c in "_$"


def _scan_number(text: str, i: int) -> int:
    n = len(text)
    j = i
    if text[j] == "0" and j + 1 < n and text[j + 1] in "xXbB":
        j += 2
        while j < n and (text[j].isalnum() or text[j] == "_"):
            j += 1
        return j
    while j < n and (text[j].isdigit() or text[j] == "_"):
        j += 1
    if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
        j += 1
        while j < n and (text[j].isdigit() or text[j] == "_"):
            j += 1
    if j < n and text[j] in "eE":
        k = j + 1
        if k < n and text[k] in "+-":
            k += 1
        if k < n and text[k].isdigit():
            j = k
            while j < n and text[j].isdigit():
                j += 1
    if j < n and text[j] in "fFdDlL":
        j += 1
    return j


def _scan_quoted(text: str, i: int, quote: str) -> int:
    n = len(text)
    j = i + 1
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == quote:
            return j + 1
        j += 1
    return n  # unterminated: consume the rest


def tokenize(text: str) -> TokenStream:
    """Deterministic lexing of Java-ish source.

    Never raises: characters outside the language become single-character
    operator tokens.
    """
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            j = text.find("\n", i)
            j = n if j < 0 else j
            tokens.append(Token(text[i:j], COMMENT, i, j))
            i = j
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "*":
            j = text.find("*/", i + 2)
            j = n if j < 0 else j + 2
            tokens.append(Token(text[i:j], COMMENT, i, j))
            i = j
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            if word in WORD_LITERALS:
                cls = LITERAL
            elif word in KEYWORDS:
                cls = KEYWORD
            else:
                cls = IDENTIFIER
            tokens.append(Token(word, cls, i, j))
            i = j
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = _scan_number(text, i)
            tokens.append(Token(text[i:j], LITERAL, i, j))
            i = j
            continue
        if c in "\"'":
            j = _scan_quoted(text, i, c)
            tokens.append(Token(text[i:j], LITERAL, i, j))
            i = j
            continue
        if text.startswith("...", i):
            tokens.append(Token("...", DELIMITER, i, i + 3))
            i += 3
            continue
        matched = False
        for op in MULTI_OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token(op, OPERATOR, i, i + len(op)))
                i += len(op)
                matched = True
                break
        if matched:
            continue
        if c in DELIMITERS:
            tokens.append(Token(c, DELIMITER, i, i + 1))
            i += 1
            continue
        # '>' and everything else, including unlexable characters
        tokens.append(Token(c, OPERATOR, i, i + 1))
        i += 1
    return TokenStream(tuple(tokens), text)


def measured_token_count(stream: TokenStream) -> int:
    """Snippet size with comments, keywords and delimiters excluded."""
    return sum(1 for t in stream.tokens if t.cls in COUNTABLE_CLASSES)


def countable_lexemes(stream: TokenStream) -> list[str]:
    return [t.lexeme for t in stream.tokens if t.cls in COUNTABLE_CLASSES]
