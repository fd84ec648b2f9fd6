from __future__ import annotations

from typing import Iterable

from .laurent import LaurentPoly


def term(coeff: LaurentPoly, label: str) -> str:
    if coeff == 1:
        return label
    if coeff == -1:
        return "-" + label
    if coeff.is_monomial():
        return f"{coeff}·{label}"
    return f"({coeff})·{label}"


def join(terms: Iterable[str]) -> str:
    out = ""
    for t in terms:
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"
