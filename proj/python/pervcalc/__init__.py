"""Exact perverse-sheaf computations on curve germs.

Objects and morphisms round-trip through the same JSON files the
``pervcalc`` command line reads and writes.
"""

import json

from ._core import (
    GalleryError,
    InputError,
    Morphism,
    Object,
    UnsupportedRingError,
    classify,
    factor,
    find_isomorphism,
    gallery,
    gallery_names,
    run_cli,
    validate_morphism,
    validate_object,
)
from . import _core

__all__ = [
    "GalleryError",
    "InputError",
    "Morphism",
    "Object",
    "UnsupportedRingError",
    "characteristic_cycle",
    "check",
    "classify",
    "factor",
    "find_isomorphism",
    "gallery",
    "gallery_names",
    "hom",
    "run_cli",
    "stalk",
    "support",
    "validate",
    "validate_morphism",
    "validate_object",
    "vanishing_cycles",
]


def validate(x):
    """None when valid, else a dict with the failing axiom."""
    if isinstance(x, Morphism):
        return validate_morphism(x)
    return validate_object(x)


def stalk(obj, at="origin"):
    """Stalk cohomology at "origin" or "branch:i" (1-based) as {degree: module}."""
    report = json.loads(_core._stalk(obj, at))
    return {int(k): v for k, v in report["groups"].items()}


def support(obj):
    return json.loads(_core._support(obj))


def characteristic_cycle(obj):
    return json.loads(_core._characteristic_cycle(obj))


def vanishing_cycles(obj):
    return json.loads(_core._vanishing_cycles(obj))


def hom(source, target):
    """(module record, list of generating morphisms)."""
    module, generators = _core._hom(source, target)
    return json.loads(module), generators


def check(suite="all", trials=1000, seed=0, ring="q", max_dim=6):
    """Runs a seeded property suite and returns the report as a dict."""
    return json.loads(_core._check(suite, trials, seed, ring, max_dim))
