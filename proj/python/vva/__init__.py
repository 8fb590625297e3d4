"""Exact optimal-auction LPs, dual certificates and virtual values.

Instances are dicts in the instance file format (or paths to such files).
Rationals come back as ``fractions.Fraction``; documents come back as dicts
whose rational entries are strings such as ``"3/4"``.
"""

import json
from fractions import Fraction
from os import PathLike
from typing import Union

from . import _core
from ._core import VvaError

__all__ = [
    "VvaError",
    "error_code",
    "validate",
    "generate",
    "solve",
    "drev",
    "brev",
    "srev",
    "verify",
    "virtual_values",
    "characterize",
    "posted_price",
    "menu_grid",
]

InstanceLike = Union[dict, str, PathLike]


def _text(instance: InstanceLike) -> str:
    if isinstance(instance, dict):
        return json.dumps(instance)
    with open(instance, encoding="utf-8") as f:
        return f.read()


def error_code(exc: VvaError) -> str:
    """The error code name carried by a VvaError, e.g. ``"NonUnitMass"``."""
    return str(exc).split(":", 1)[0]


def validate(instance: InstanceLike, augment_zero: bool = False) -> dict:
    return json.loads(_core.validate(_text(instance), augment_zero))


def generate(buyers=1, items=1, support_size=2, max_value=3, denominator=1, iid=True, correlated=False, seed=0) -> dict:
    return json.loads(
        _core.generate(buyers, items, support_size, max_value, denominator, iid, correlated, seed)
    )


def solve(instance: InstanceLike, form: str = "ds", augment_zero: bool = False, rule: str = "bland") -> dict:
    """Certificate document for the DS ("ds") or Bayesian ("bic") program."""
    return json.loads(_core.solve(_text(instance), form, augment_zero, rule))


def drev(instance: InstanceLike, augment_zero: bool = False) -> Fraction:
    return Fraction(solve(instance, "ds", augment_zero)["objective"])


def brev(instance: InstanceLike, augment_zero: bool = False) -> Fraction:
    return Fraction(solve(instance, "bic", augment_zero)["objective"])


def srev(instance: InstanceLike, augment_zero: bool = False) -> Fraction:
    return Fraction(_core.srev(_text(instance), augment_zero))


def verify(certificate: dict) -> list:
    """Problems found in a certificate; empty when it checks out."""
    return _core.verify(json.dumps(certificate))


def virtual_values(instance: InstanceLike, form: str = "ds", min_flow: bool = False, augment_zero: bool = False) -> dict:
    return json.loads(_core.virtual_values(_text(instance), form, min_flow, augment_zero))


def characterize(instance: InstanceLike, augment_zero: bool = False) -> dict:
    return json.loads(_core.characterize(_text(instance), augment_zero))


def posted_price(values, probs) -> Fraction:
    return Fraction(_core.posted_price([str(Fraction(v)) for v in values], [str(Fraction(p)) for p in probs]))


def menu_grid(instance: InstanceLike, k: int, augment_zero: bool = False) -> Fraction:
    return Fraction(_core.menu_grid(_text(instance), k, augment_zero))
