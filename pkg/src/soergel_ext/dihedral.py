"""Elements of the dihedral group W_m as canonical reduced words over {s, t}.

Reduced words alternate in color.  For finite m the longest element has two
reduced words; the one starting with ``s`` is canonical.  ``m=None`` is the
infinite dihedral group.
"""

from __future__ import annotations

from typing import Iterable, Optional


def _other(c: str) -> str:
    return "t" if c == "s" else "s"


def alternating(start: str, length: int) -> str:
    out = []
    c = start
    for _ in range(length):
        out.append(c)
        c = _other(c)
    return "".join(out)


def _canon(start: str, length: int, m: Optional[int]) -> str:
    if m is not None and length == m:
        start = "s"
    return alternating(start, length)


def right_mul(w: str, c: str, m: Optional[int]) -> str:
    """Reduced word of w*c."""
    n = len(w)
    if n == 0:
        return c
    if m is not None and n == m:
        # longest element: pick the reduced word ending in c and drop it
        start = c if m % 2 else _other(c)
        return alternating(start, m - 1)
    if w[-1] == c:
        return w[:-1]
    return _canon(w[0], n + 1, m)


def left_mul(c: str, w: str, m: Optional[int]) -> str:
    return inverse(right_mul(inverse(w, m), c, m), m)


def inverse(w: str, m: Optional[int]) -> str:
    if not w:
        return w
    return _canon(w[-1], len(w), m)


def evaluate(letters: Iterable[str], m: Optional[int]) -> str:
    w = ""
    for c in letters:
        w = right_mul(w, c, m)
    return w


def multiply(x: str, y: str, m: Optional[int]) -> str:
    return evaluate(list(x) + list(y), m)


def elements(m: int) -> list[str]:
    """All 2m elements, sorted by length then word."""
    out = [""]
    for k in range(1, m):
        out += [alternating("s", k), alternating("t", k)]
    out.append(alternating("s", m))
    return out


def bruhat_leq(y: str, w: str) -> bool:
    """Bruhat order in a dihedral group: shorter elements lie below, equal length only if equal."""
    return len(y) < len(w) or y == w
