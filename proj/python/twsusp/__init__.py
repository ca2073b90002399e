"""Twisted suspension workbench: exact topology and positive Ricci neck certificates."""

import json

from ._twsusp import TwsuspError, snf
from . import _twsusp

__all__ = ["TwsuspError", "snf", "homology", "suspend", "plumb", "gon", "standard_gon", "certify", "profile_csv"]


def homology(expr):
    return json.loads(_twsusp.homology_json(expr))


def suspend(expr, euler="0"):
    return json.loads(_twsusp.homology_json(expr, euler))


def plumb(text):
    return json.loads(_twsusp.plumb_json(text))


def gon(labels, n=0):
    return json.loads(_twsusp.gon_json([list(l) for l in labels], n))


def standard_gon(l):
    return json.loads(_twsusp.standard_gon_json(l))


def _config_text(n, s0, ric_min, sections):
    lines = ["[certify]", f"n = {n}", f"s0 = {s0!r}", f"ric_min = {ric_min!r}"]
    for name, entries in sections.items():
        lines.append(f"[{name}]")
        lines.extend(f"{k} = {v}" for k, v in entries.items())
    return "\n".join(lines) + "\n"


def certify(n, s0, ric_min=1.0, **sections):
    """Keyword arguments are config sections, e.g. warp={"step": 5e-4}."""
    return json.loads(_twsusp.certify_json(_config_text(n, s0, ric_min, sections)))


def profile_csv(n, s0, ric_min=1.0, **sections):
    return _twsusp.profile_csv(_config_text(n, s0, ric_min, sections))
