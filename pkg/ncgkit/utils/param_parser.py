"""
Parameter Parser Utility
Handles parsing of theta, tau, SL(2, Z) and phase parameters given on the command line
"""

import re
import logging
from fractions import Fraction
from typing import Optional, Tuple, Union

from ..errors import ParseError
from ..nctorus.quadratic import QuadIrr
from ..nctorus.sl2 import SL2Mat

logger = logging.getLogger(__name__)


class ParamParser:
    """Utility class for parsing numeric parameters."""

    def __init__(self):
        """Initialize the parameter parser."""
        number = r'([+-]?\d+)'
        self.quadratic_patterns = [
            # (p + s*sqrt(D))/q
            re.compile(r'^\(\s*' + number + r'\s*([+-])\s*(\d*)\s*\*?\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*(\d+))?$'),
            # s*sqrt(D) alone, optionally over q
            re.compile(r'^()\s*()([+-]?\d*)\s*\*?\s*sqrt\(\s*(\d+)\s*\)\s*(?:/\s*(\d+))?$'),
        ]
        self.separator = re.compile(r'[,\s]+')

    def parse_rational(self, text: str) -> Fraction:
        """Parse '3', '-1/3' or a finite decimal like '0.3' into an exact Fraction."""
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"not a rational number: {text!r}", str(e))

    def parse_theta(self, text: str) -> Union[QuadIrr, Fraction]:
        """
        Parse theta as a quadratic irrationality or a rational.

        Args:
            text: '(p + s*sqrt(D))/q', 's*sqrt(D)/q' or a rational like '1/3'

        Returns:
            QuadIrr for irrational input, Fraction otherwise
        """
        cleaned = text.strip()
        for pattern in self.quadratic_patterns:
            match = pattern.match(cleaned)
            if not match:
                continue
            p_raw, sign, s_raw, d_raw, q_raw = match.groups()
            p = int(p_raw) if p_raw else 0
            if s_raw in ('', '+', None):
                s = 1
            elif s_raw == '-':
                s = -1
            else:
                s = int(s_raw)
            if sign == '-':
                s = -s
            q = int(q_raw) if q_raw else 1
            if q == 0:
                raise ParseError(f"zero denominator in theta {text!r}")
            theta = QuadIrr(p, s, q, int(d_raw))
            logger.debug(f"Parsed theta {text!r} as {theta}")
            return theta
        if 'sqrt' in cleaned:
            raise ParseError(f"theta must look like '(p + s*sqrt(D))/q', got {text!r}")
        return self.parse_rational(cleaned)

    def parse_pair(self, text: str) -> Tuple[Fraction, Fraction]:
        parts = [p for p in self.separator.split(text.strip()) if p]
        if len(parts) != 2:
            raise ParseError(f"expected two numbers 're,im', got {text!r}")
        return self.parse_rational(parts[0]), self.parse_rational(parts[1])

    def parse_sl2(self, text: str) -> SL2Mat:
        """Parse 'a,b,c,d' (brackets allowed) into an SL(2, Z) matrix."""
        cleaned = text.replace('[', ' ').replace(']', ' ')
        parts = [p for p in self.separator.split(cleaned.strip()) if p]
        if len(parts) != 4:
            raise ParseError(f"expected four integers 'a,b,c,d', got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError as e:
            raise ParseError(f"matrix entries must be integers: {text!r}", str(e))
        if a * d - b * c != 1:
            raise ParseError(f"determinant of {text!r} is {a * d - b * c}, expected 1")
        return SL2Mat(a, b, c, d)

    def parse_phi(self, text: str) -> Tuple[Fraction, Fraction, Fraction]:
        """Parse three rationals 'phi1,phi2,phi3'; a single value is repeated."""
        parts = [p for p in self.separator.split(text.strip()) if p]
        if len(parts) == 1:
            parts = parts * 3
        if len(parts) != 3:
            raise ParseError(f"expected three rationals for phi, got {text!r}")
        return tuple(self.parse_rational(p) for p in parts)


_parser: Optional[ParamParser] = None


def _default_parser() -> ParamParser:
    global _parser
    if _parser is None:
        _parser = ParamParser()
    return _parser


def parse_theta(text: str) -> Union[QuadIrr, Fraction]:
    return _default_parser().parse_theta(text)


def parse_tau(text: str) -> Tuple[Fraction, Fraction]:
    """'re,im' as exact decimals; the sign of the imaginary part is checked by the caller."""
    return _default_parser().parse_pair(text)


def parse_sl2(text: str) -> SL2Mat:
    return _default_parser().parse_sl2(text)


def parse_phi(text: str) -> Tuple[Fraction, Fraction, Fraction]:
    return _default_parser().parse_phi(text)


def parse_rational(text: str) -> Fraction:
    return _default_parser().parse_rational(text)
