"""A small library of manifold data files.

The standard examples have the obvious pi_1, pi_2 and w2.  Two are toy
stand-ins: ``enriques_like`` keeps the pi_1 and the spin type of an
Enriques surface but replaces pi_2 = Z^22 by Z^2 with the deck swap, and
``q8pair`` is the almost-spin class on Z/2 x Z/2 whose frame bundle has
fundamental group Q8.
"""

from __future__ import annotations

import copy

# Q8 over Z/2 x Z/2 = {1, x, y, xy} with lifts 1, i, j, k: omega(g, h) = 1
# exactly when lift(g) lift(h) = -lift(gh).
Q8_COCYCLE = [
    [0, 0, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
    [0, 0, 1, 1],
]

KLEIN_TABLE = [[a ^ b for b in range(4)] for a in range(4)]


def _m_conn_s3s1(rank: int = 2) -> dict:
    return {
        "name": "m_conn_s3s1",
        "notes": f"M # S3 x S1 with M spin; c the S1 factor; pi2 truncated to Z^{rank} with trivial action",
        "pi1": {"kind": "self_centralizing_z", "label": "pi1 M * Z"},
        "pi2": {"generators": rank},
        "w2": {"kind": "spin"},
    }


BUILTINS: dict[str, dict] = {
    "s4": {
        "name": "s4",
        "notes": "the 4-sphere",
        "pi1": {"kind": "trivial"},
        "pi2": {"generators": 0},
        "w2": {"kind": "spin"},
    },
    "s1xs3": {
        "name": "s1xs3",
        "notes": "S1 x S3",
        "pi1": {"kind": "fg_abelian", "rank": 1, "torsion": []},
        "pi2": {"generators": 0},
        "w2": {"kind": "spin"},
    },
    "cp2": {
        "name": "cp2",
        "notes": "complex projective plane; the line has odd self-intersection",
        "pi1": {"kind": "trivial"},
        "pi2": {"generators": 1},
        "w2": {"kind": "totally_nonspin", "w2s": [1]},
    },
    "s2xs2": {
        "name": "s2xs2",
        "notes": "S2 x S2, even intersection form",
        "pi1": {"kind": "trivial"},
        "pi2": {"generators": 2},
        "w2": {"kind": "spin"},
    },
    "t4": {
        "name": "t4",
        "notes": "the 4-torus",
        "pi1": {"kind": "fg_abelian", "rank": 4, "torsion": []},
        "pi2": {"generators": 0},
        "w2": {"kind": "spin"},
    },
    "enriques_like": {
        "name": "enriques_like",
        "notes": "pi1 = Z/2, spin universal cover, w2 != 0; pi2 truncated to Z^2 with the deck swap",
        "pi1": {"kind": "fg_abelian", "rank": 0, "torsion": [2]},
        "pi2": {"generators": 2, "action": {"0": [[0, 1], [1, 0]]}},
        "w2": {"kind": "almost_spin_abelian", "ext_bits": [1], "pairing": [[0]]},
    },
    "q8pair": {
        "name": "q8pair",
        "notes": "pi1 = Z/2 x Z/2 with the almost-spin class of Q8",
        "pi1": {"kind": "finite_table", "table": KLEIN_TABLE, "names": ["1", "x", "y", "xy"]},
        "pi2": {"generators": 0},
        "w2": {"kind": "almost_spin_cocycle", "omega": Q8_COCYCLE},
    },
    "m_conn_s3s1": _m_conn_s3s1(),
}

DEFAULT_CIRCLES = {
    "s4": "trivial",
    "s1xs3": "vec:1",
    "cp2": "trivial",
    "s2xs2": "trivial",
    "t4": "vec:1,0,0,0",
    "enriques_like": "vec:1",
    "q8pair": "x",
    "m_conn_s3s1": "c",
}


def names() -> list[str]:
    return list(BUILTINS)


def builtin(name: str, pi2_rank: int | None = None) -> dict:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    if name == "m_conn_s3s1" and pi2_rank is not None:
        return _m_conn_s3s1(pi2_rank)
    return copy.deepcopy(BUILTINS[name])
