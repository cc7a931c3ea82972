"""Exact residue computations for the spectral Einstein functional.

Densities are dicts with ``terms`` (a list of ``(deg_a0, deg_b0, re, im)`` with
Fraction coefficients), ``ab_power`` and ``text``; each stands for
``core * (a0 b0)^ab_power * Vol(S^{n-1})``. Vectors are strings such as ``"e1"``
or ``"1/2,0,3,0"``, or sequences of numbers.
"""

import json
from fractions import Fraction

from . import _wres

__all__ = [
    "verify",
    "einstein",
    "metric",
    "part",
    "part_names",
    "sphere_average",
    "random_riemann",
    "einstein_tensor",
    "sphere_volume",
    "evaluate",
]


def _terms(raw):
    return [(da, db, Fraction(rn, rd), Fraction(im, idn)) for da, db, rn, rd, im, idn in json.loads(raw)]


def _density(d):
    return {"terms": _terms(d["terms"]), "ab_power": d["ab_power"], "text": d["text"]}


def _vec(x):
    if isinstance(x, str):
        return x
    return ",".join(str(Fraction(c)) for c in x)


def verify(dim=4, seeds=(1,), curvature="random", u=None, v=None, threads=0):
    """Run every check for the given seeds; returns the parsed JSON report."""
    text = _wres.verify(dim, list(seeds), curvature,
                        None if u is None else _vec(u), None if v is None else _vec(v), threads)
    return json.loads(text)


def einstein(dim, u, v, curvature="random", seed=1):
    out = _wres.einstein(dim, _vec(u), _vec(v), curvature, seed)
    return {k: (_density(x) if isinstance(x, dict) else x) for k, x in out.items()}


def metric(dim, u, v, curvature="random", seed=1):
    return _density(_wres.metric(dim, _vec(u), _vec(v), curvature, seed))


def part(name, dim, u, v, curvature="random", seed=1):
    out = _wres.part(name, dim, _vec(u), _vec(v), curvature, seed)
    return {k: (_density(x) if isinstance(x, dict) else x) for k, x in out.items()}


def part_names():
    return list(_wres.part_names())


def sphere_average(dim, alpha):
    return Fraction(_wres.sphere_average(dim, list(alpha)))


def random_riemann(dim, seed):
    """Random curvature tensor in the JSON schema accepted as ``curvature``."""
    return _wres.random_riemann(dim, seed)


def einstein_tensor(riemann_json, u, v):
    return Fraction(_wres.einstein_tensor(riemann_json, _vec(u), _vec(v)))


def sphere_volume(dim):
    return _wres.sphere_volume(dim)


def evaluate(density, a0, b0):
    """Exact real coefficient of Vol(S^{n-1}) at numeric a0, b0."""
    a0, b0 = Fraction(a0), Fraction(b0)
    re = sum((c * a0**da * b0**db for da, db, c, _ in density["terms"]), Fraction(0))
    return re * (a0 * b0) ** density["ab_power"]
