"""JSON helpers; exact rationals travel as "num/den" strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .exact_linalg import Matrix

SCHEMA = "spinor-lab/1"


def scalar_to_json(x):
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    raise TypeError(f"cannot serialize {type(x)}")


def scalar_from_json(s):
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return int(s)


def matrix_to_json(m: Matrix):
    return [[scalar_to_json(x) for x in row] for row in m.data]


def matrix_from_json(rows) -> Matrix:
    return Matrix([[scalar_from_json(x) for x in row] for row in rows])


def dump(payload: dict, path):
    payload = {"schema": SCHEMA, **payload}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load(path) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("schema") != SCHEMA:
        raise ValueError(f"unexpected schema in {path}")
    return payload
