"""Independent reference computations used as test oracles.

Nothing here imports ``kinv``; polynomials are plain ``{exponent: int}`` dicts.
"""

from __future__ import annotations

import itertools


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _pow(p: dict, n: int) -> dict:
    out = {0: 1}
    for _ in range(n):
        out = _mul(out, p)
    return out


def _find(parent: list, i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _loops(strands: int, letters: list[int], state: tuple[bool, ...]) -> int:
    """Circles of the smoothed closed braid; ``True`` means the identity smoothing."""
    m = len(letters)
    node = lambda layer, p: (layer % m if m else 0) * strands + p  # closure glues layer m to 0
    size = max(m, 1) * strands
    parent = list(range(size))

    def join(u, v):
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv

    if m == 0:
        return strands
    for k, g in enumerate(letters):
        i = abs(g) - 1
        for p in range(strands):
            if p not in (i, i + 1):
                join(node(k, p), node(k + 1, p))
        if state[k]:
            join(node(k, i), node(k + 1, i))
            join(node(k, i + 1), node(k + 1, i + 1))
        else:
            join(node(k, i), node(k, i + 1))
            join(node(k + 1, i), node(k + 1, i + 1))
    return len({_find(parent, u) for u in range(size)})


def kauffman_bracket(strands: int, letters: list[int]) -> dict:
    """Bracket of the braid closure in ``A``, normalized so a single circle is 1.

    At a positive crossing the identity smoothing carries ``A``; at a
    negative one it carries ``A^-1``.
    """
    d = {2: -1, -2: -1}
    total: dict = {}
    for state in itertools.product((True, False), repeat=len(letters)):
        e = 0
        for g, ident in zip(letters, state):
            e += (1 if ident else -1) * (1 if g > 0 else -1)
        term = _mul({e: 1}, _pow(d, _loops(strands, letters, state) - 1))
        total = _add(total, term)
    return total


def jones_in_a(strands: int, letters: list[int]) -> dict:
    """Writhe-normalized bracket ``(-A^3)^-w <K>``; invariant of the closed braid."""
    w = sum(1 if g > 0 else -1 for g in letters)
    sign = -1 if w % 2 else 1
    return _mul({-3 * w: sign}, kauffman_bracket(strands, letters))
