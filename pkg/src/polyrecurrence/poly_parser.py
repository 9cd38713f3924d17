# Polyrecurrence
#
# Copyright 2026 The Polyrecurrence Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Module poly_parser
==================

Recursive descent parser for the polynomial input language::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ('-' | '+')? base ('^' nat)?
    base     := var | rational | '(' expr ')'
    rational := int ('/' posint)?

Division is only accepted by a nonzero constant, so ``n*(n-1)/2`` is valid while ``n/n`` is not.
Implicit multiplication is rejected. All arithmetic is exact.

.. autoclass:: PolynomialParser
   :members:

.. autofunction:: parse_poly
.. autofunction:: render
"""
from __future__ import annotations

from string import digits as DIGITS
from typing import List, Optional, Sequence

from polyrecurrence.exceptions import PolynomialParseError
from polyrecurrence.polynomial import IntPoly


class Token:
    """ A lexical token with its kind, text and start position. """
    NUMBER = 'number'
    NAME = 'name'
    OPERATOR = 'operator'
    LEFT_PAREN = '('
    RIGHT_PAREN = ')'
    END = 'end'

    def __init__(self, kind: str, text: str, position: int) -> None:
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self) -> str:
        return f'Token({self.kind!r}, {self.text!r}, {self.position})'


def tokenize(text: str) -> List[Token]:
    """ Split `text` into tokens.

    :raises PolynomialParseError: on characters outside the input language.
    """
    tokens: List[Token] = []
    index = 0
    while index < len(text):
        char = text[index]
        if char.isspace():
            index += 1
        elif char in DIGITS:
            start = index
            while index < len(text) and text[index] in DIGITS:
                index += 1
            if index < len(text) and (text[index].isalpha() or text[index] == '_'):
                raise PolynomialParseError('Implicit multiplication is not allowed', index)
            if index < len(text) and text[index] == '.':
                raise PolynomialParseError('Decimal numbers are not allowed, write a/b', index)
            tokens.append(Token(Token.NUMBER, text[start:index], start))
        elif char.isascii() and (char.isalpha() or char == '_'):
            start = index
            while index < len(text) and text[index].isascii() and (text[index].isalnum() or text[index] == '_'):
                index += 1
            tokens.append(Token(Token.NAME, text[start:index], start))
        elif char in '+-*/^':
            tokens.append(Token(Token.OPERATOR, char, index))
            index += 1
        elif char in '()':
            tokens.append(Token(char, char, index))
            index += 1
        else:
            raise PolynomialParseError(f'Unexpected character {char!r}', index)
    tokens.append(Token(Token.END, '', len(text)))
    return tokens


class PolynomialParser:
    """ Parser for a single polynomial expression over a fixed list of variables.

    :param variables: the declared variable names, in coordinate order.
    """

    def __init__(self, variables: Sequence[str]) -> None:
        if not variables:
            raise PolynomialParseError('No variables declared', 0)
        self._variables = list(variables)
        self._tokens: List[Token] = []
        self._index = 0

    def parse(self, text: str) -> IntPoly:
        """ Parse `text` into a canonical polynomial.

        :raises PolynomialParseError: on syntax errors, unknown variables and invalid exponents.
        """
        self._tokens = tokenize(text)
        self._index = 0
        if self._peek().kind == Token.END:
            raise PolynomialParseError('Empty expression', 0)
        result = self._expression()
        token = self._peek()
        if token.kind != Token.END:
            raise PolynomialParseError(f'Unexpected {token.text!r}', token.position)
        return result

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self._peek()
        if token.kind == kind and (text is None or token.text == text):
            return self._advance()
        return None

    def _expression(self) -> IntPoly:
        result = self._term()
        while True:
            if self._accept(Token.OPERATOR, '+'):
                result = result + self._term()
            elif self._accept(Token.OPERATOR, '-'):
                result = result - self._term()
            else:
                return result

    def _term(self) -> IntPoly:
        result = self._factor()
        while True:
            if self._accept(Token.OPERATOR, '*'):
                result = result * self._factor()
            elif self._peek().kind == Token.OPERATOR and self._peek().text == '/':
                position = self._advance().position
                divisor = self._factor()
                if not divisor.is_constant():
                    raise PolynomialParseError('Division by a non-constant expression', position)
                if divisor.is_zero():
                    raise PolynomialParseError('Division by zero', position)
                result = result / divisor.constant_term()
            elif self._peek().kind in (Token.NAME, Token.NUMBER, Token.LEFT_PAREN):
                token = self._peek()
                raise PolynomialParseError(f'Implicit multiplication before {token.text!r} is not allowed',
                                           token.position)
            else:
                return result

    def _factor(self) -> IntPoly:
        if self._accept(Token.OPERATOR, '-'):
            return -self._factor()
        if self._accept(Token.OPERATOR, '+'):
            return self._factor()
        base = self._base()
        caret = self._accept(Token.OPERATOR, '^')
        if caret is None:
            return base
        token = self._peek()
        if token.kind != Token.NUMBER:
            raise PolynomialParseError('Exponent must be a nonnegative integer', token.position)
        self._advance()
        if self._peek().kind == Token.OPERATOR and self._peek().text == '^':
            raise PolynomialParseError('Chained exponents are not allowed', self._peek().position)
        return base ** int(token.text)

    def _base(self) -> IntPoly:
        token = self._peek()
        if token.kind == Token.NUMBER:
            self._advance()
            return IntPoly.constant(int(token.text), self._variables)
        if token.kind == Token.NAME:
            self._advance()
            if token.text not in self._variables:
                raise PolynomialParseError(f'Unknown variable {token.text!r}', token.position)
            return IntPoly.variable(token.text, self._variables)
        if self._accept(Token.LEFT_PAREN):
            inner = self._expression()
            closing = self._peek()
            if closing.kind != Token.RIGHT_PAREN:
                raise PolynomialParseError("Expected ')'", closing.position)
            self._advance()
            return inner
        if token.kind == Token.END:
            raise PolynomialParseError('Unexpected end of expression', token.position)
        raise PolynomialParseError(f'Unexpected {token.text!r}', token.position)


def parse_poly(text: str, variables: Sequence[str]) -> IntPoly:
    """ Parse a polynomial expression.

    :param text: the expression, for example ``"(n^2-5)*(n^2-41)*(n^2-205)"``.
    :param variables: declared variable names.

    :raises PolynomialParseError: with the character position of the problem.
    :return: the canonical polynomial.
    """
    return PolynomialParser(variables).parse(text)


def render(p: IntPoly) -> str:
    """ Text form of `p` that :func:`parse_poly` maps back to `p`. """
    return p.render()
