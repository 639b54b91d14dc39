"""
Factored integers as printed in group orders: 2^18*3^6*5^3*7*11*23.
"""

from typing import Dict

from sympy import factorint

from .errors import ParseError


def parse_factored(text: str, source: str = "") -> int:
    """Read an integer given plainly or as a product of prime powers."""
    text = text.replace("·", "*").replace(" ", "")
    if not text:
        raise ParseError("Empty integer", source=source)
    value = 1
    for factor in text.split("*"):
        base, _, exponent = factor.partition("^")
        try:
            value *= int(base) ** (int(exponent) if exponent else 1)
        except ValueError:
            raise ParseError(f"Malformed factored integer {text!r}", source=source) from None
    return value


def factorization(n: int) -> Dict[int, int]:
    return {int(p): int(e) for p, e in sorted(factorint(n).items())}


def format_factored(n: int) -> str:
    if n == 1:
        return "1"
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorization(n).items())
