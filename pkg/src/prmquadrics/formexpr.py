"""Parsing and rendering of quadratic-form expressions.

Grammar (whitespace insignificant, LL(1) recursive descent):

    form        :=  [sign] term (sign term)*
    term        :=  [coefficient '*'] variable ( '^' '2' | '*' variable )
    coefficient :=  INT | '(' zpoly ')'
    zpoly       :=  [sign] zterm (sign zterm)*
    zterm       :=  INT ['*' zpow] | zpow
    zpow        :=  'z' ['^' INT]

Variables are X0..XN.  Integer coefficients reduce mod p; parenthesized
polynomials in z denote extension-field elements.  Repeated monomials
accumulate.  The bare expression "0" is accepted as the zero form (it is
what the renderer emits for it); every other term must have degree exactly
2.
"""

from __future__ import annotations

from .gf import Field
from .quadric import QuadraticForm, _monomial_index, monomials


class FormParseError(Exception):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FormSyntaxError(FormParseError):
    pass


class UnknownVariable(FormParseError):
    pass


class NonHomogeneous(FormParseError):
    pass


class FieldLiteralInvalid(FormParseError):
    pass


_SYMBOLS = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET", "(": "LPAREN", ")": "RPAREN"}


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((_SYMBOLS[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise FormSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field, n: int):
        self.field = field
        self.n = n
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.advance()
        if tok[0] != kind:
            raise FormSyntaxError(f"expected {what}, found {tok[1]!r}", tok[2])
        return tok

    # -- whole forms ---------------------------------------------------

    def parse_form(self) -> QuadraticForm:
        # Lone "0" renders the zero form; accept it back.
        if (
            self.tokens[0][0] == "INT"
            and int(self.tokens[0][1]) == 0
            and self.tokens[1][0] == "END"
        ):
            return QuadraticForm(
                self.field, self.n, (0,) * len(monomials(self.n))
            )
        field = self.field
        coeffs = [0] * len(monomials(self.n))
        idx = _monomial_index(self.n)
        sign = 1
        tok = self.peek()
        if tok[0] in ("PLUS", "MINUS"):
            self.advance()
            sign = -1 if tok[0] == "MINUS" else 1
        while True:
            c, (i, j) = self.parse_term()
            if sign < 0:
                c = field.neg(c)
            k = idx[(i, j) if i <= j else (j, i)]
            coeffs[k] = field.add(coeffs[k], c)
            tok = self.advance()
            if tok[0] == "END":
                break
            if tok[0] == "PLUS":
                sign = 1
            elif tok[0] == "MINUS":
                sign = -1
            else:
                raise FormSyntaxError(
                    f"expected '+', '-' or end of input, found {tok[1]!r}", tok[2]
                )
        return QuadraticForm(self.field, self.n, tuple(coeffs))

    def parse_term(self) -> tuple[int, tuple[int, int]]:
        tok = self.peek()
        coeff = 1
        if tok[0] == "INT":
            self.advance()
            coeff = self.field.from_int(int(tok[1]))
            nxt = self.peek()
            if nxt[0] == "NAME":
                raise FormSyntaxError(
                    "expected '*' between coefficient and variable", nxt[2]
                )
            if nxt[0] != "STAR":
                raise NonHomogeneous(
                    "constant term: every term must have degree 2", tok[2]
                )
            self.advance()
        elif tok[0] == "LPAREN":
            coeff = self.parse_field_literal()
            self.expect("STAR", "'*' after a coefficient")
        i = self.parse_variable()
        tok = self.peek()
        if tok[0] == "CARET":
            self.advance()
            exp = self.expect("INT", "an exponent")
            if int(exp[1]) != 2:
                raise NonHomogeneous(
                    f"exponent {exp[1]}: every term must have degree 2", exp[2]
                )
            j = i
        elif tok[0] == "STAR":
            self.advance()
            j = self.parse_variable()
        else:
            raise NonHomogeneous(
                "degree-1 term: every term must have degree 2", tok[2]
            )
        tok = self.peek()
        if tok[0] in ("STAR", "CARET"):
            raise NonHomogeneous(
                "degree exceeds 2 in this term", tok[2]
            )
        return coeff, (i, j)

    def parse_variable(self) -> int:
        tok = self.advance()
        if tok[0] != "NAME":
            raise FormSyntaxError(f"expected a variable, found {tok[1]!r}", tok[2])
        name = tok[1]
        if not (name.startswith("X") and name[1:].isdigit()):
            raise UnknownVariable(f"unknown variable {name!r}", tok[2])
        k = int(name[1:])
        if k > self.n:
            raise UnknownVariable(
                f"variable {name} exceeds the ambient X0..X{self.n}", tok[2]
            )
        return k

    # -- extension-field literals ----------------------------------------

    def parse_field_literal(self) -> int:
        lp = self.expect("LPAREN", "'('")
        field = self.field
        if field.e == 1:
            raise FieldLiteralInvalid(
                "parenthesized literals need an extension field", lp[2]
            )
        value = 0
        sign = 1
        tok = self.peek()
        if tok[0] in ("PLUS", "MINUS"):
            self.advance()
            sign = -1 if tok[0] == "MINUS" else 1
        while True:
            v = self.parse_zterm()
            if sign < 0:
                v = field.neg(v)
            value = field.add(value, v)
            tok = self.advance()
            if tok[0] == "RPAREN":
                break
            if tok[0] == "PLUS":
                sign = 1
            elif tok[0] == "MINUS":
                sign = -1
            else:
                raise FieldLiteralInvalid(
                    f"expected '+', '-' or ')' in field literal, found {tok[1]!r}",
                    tok[2],
                )
        return value

    def parse_zterm(self) -> int:
        field = self.field
        tok = self.advance()
        if tok[0] == "INT":
            c = field.from_int(int(tok[1]))
            if self.peek()[0] == "STAR":
                self.advance()
                return field.mul(c, self.parse_zpow())
            return c
        if tok[0] == "NAME" and tok[1] == "z":
            self.pos -= 1
            return self.parse_zpow()
        raise FieldLiteralInvalid(
            f"expected an integer or z in field literal, found {tok[1]!r}", tok[2]
        )

    def parse_zpow(self) -> int:
        tok = self.advance()
        if tok[0] != "NAME" or tok[1] != "z":
            raise FieldLiteralInvalid(
                f"expected z in field literal, found {tok[1]!r}", tok[2]
            )
        z = self.field.p  # the polynomial-basis generator encodes as p
        if self.peek()[0] == "CARET":
            self.advance()
            exp = self.advance()
            if exp[0] != "INT":
                raise FieldLiteralInvalid("expected an exponent after '^'", exp[2])
            return self.field.pow(z, int(exp[1]))
        return z


def parse_form(text: str, field: Field, n: int) -> QuadraticForm:
    """Parse an expression into a form on P^n over the given field."""
    return _Parser(text, field, n).parse_form()


def render_form(form: QuadraticForm) -> str:
    """Canonical rendering; parse_form(render_form(F)) reproduces F."""
    field = form.field
    parts = []
    for (i, j), c in zip(monomials(form.ambient), form.coeffs):
        if not c:
            continue
        mono = f"X{i}^2" if i == j else f"X{i}*X{j}"
        if c == 1:
            parts.append(mono)
        elif field.e == 1:
            parts.append(f"{c}*{mono}")
        else:
            parts.append(f"({field.render(c)})*{mono}")
    return " + ".join(parts) if parts else "0"
