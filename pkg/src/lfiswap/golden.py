"""Reference tables for the five-valued and three-valued matrices, and checks against them.

The five-valued tables are written in condensed form: each cell says whether
the output set is the designated set ``D`` or its complement ``ND``.
"""

from __future__ import annotations

from .swap import condensed, m5, m5_values
from .twist import HALF, lfi1_matrix, lfi1_values

M5_ORDER = ("T", "t", "t0", "F", "f0")
_D5 = ("D", "D", "D", "D", "D")
_N5 = ("ND", "ND", "ND", "ND", "ND")
_DDDNN = ("D", "D", "D", "ND", "ND")

M5_BINARY = {
    "and": {"T": _DDDNN, "t": _DDDNN, "t0": _DDDNN, "F": _N5, "f0": _N5},
    "or": {"T": _D5, "t": _D5, "t0": _D5, "F": _DDDNN, "f0": _DDDNN},
    "imp": {"T": _DDDNN, "t": _DDDNN, "t0": _DDDNN, "F": _D5, "f0": _D5},
}
M5_UNARY = {
    "neg": {"T": "ND", "t": "D", "t0": "ND", "F": "D", "f0": "D"},
    "cons": {"T": "D", "t": "ND", "t0": "ND", "F": "D", "f0": "ND"},
}

LFI1_ORDER = ("1", HALF, "0")
LFI1_BINARY = {
    "and": {"1": ("1", HALF, "0"), HALF: (HALF, HALF, "0"), "0": ("0", "0", "0")},
    "or": {"1": ("1", "1", "1"), HALF: ("1", HALF, HALF), "0": ("1", HALF, "0")},
    "imp": {"1": ("1", HALF, "0"), HALF: ("1", HALF, "0"), "0": ("1", "1", "1")},
}
LFI1_UNARY = {
    "neg": {"1": "0", HALF: HALF, "0": "1"},
    "cons": {"1": "1", HALF: "0", "0": "1"},
}


def m5_mismatches(matrix=None) -> list[str]:
    """Cells where ``matrix`` (default M5) disagrees with the reference tables."""
    M = matrix if matrix is not None else m5()
    v = m5_values()
    bad = []
    for op, rows in M5_BINARY.items():
        for x, row in rows.items():
            for y, want in zip(M5_ORDER, row):
                got = condensed(M, M.apply(op, v[x], v[y]))
                if got != want:
                    bad.append(f"{x} {op} {y}: expected {want}, got {got}")
    for op, col in M5_UNARY.items():
        for x, want in col.items():
            got = condensed(M, M.apply(op, v[x]))
            if got != want:
                bad.append(f"{op} {x}: expected {want}, got {got}")
    return bad


def lfi1_mismatches(matrix=None) -> list[str]:
    M = matrix if matrix is not None else lfi1_matrix()
    v = lfi1_values()
    name = {p: n for n, p in v.items()}
    bad = []
    for op, rows in LFI1_BINARY.items():
        for x, row in rows.items():
            for y, want in zip(LFI1_ORDER, row):
                got = name.get(M.apply(op, v[x], v[y]))
                if got != want:
                    bad.append(f"{x} {op} {y}: expected {want}, got {got}")
    for op, col in LFI1_UNARY.items():
        for x, want in col.items():
            got = name.get(M.apply(op, v[x]))
            if got != want:
                bad.append(f"{op} {x}: expected {want}, got {got}")
    return bad
