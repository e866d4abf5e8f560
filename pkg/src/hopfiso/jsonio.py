"""JSON encoding of data, families and group-algebra elements.

Formats::

    group      {"factors": [9, 3]}
    element    {"exp": [1, 1]}            (a bare list is accepted too)
    character  {"exp": [3, 1]}
    datum      {"group": ..., "g": [...], "chi": [...], "conductor": 9}
    mu         {"entries": {"1,3": "1 + z^2"}}
    bundle     {"datum": ..., "mu": ...}  or  {"datum": ..., "mus": [...]}

Scalars are written as polynomials in ``z = zeta_L``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .datum import CartanDatum, build_datum
from .errors import InputError, StructuralError
from .groups import FiniteAbelianGroup, GroupAlgebraElement, GroupHomomorphism
from .params import ParamFamily
from .scalars import format_scalar, parse_scalar


def _exp(obj: Any, what: str) -> list[int]:
    if isinstance(obj, dict):
        obj = obj.get("exp")
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise InputError(f"{what}: expected an integer exponent list, got {obj!r}")
    return obj


def group_from_json(obj: Any) -> FiniteAbelianGroup:
    factors = obj.get("factors") if isinstance(obj, dict) else obj
    if not isinstance(factors, list) or not factors or not all(isinstance(m, int) and m >= 1 for m in factors):
        raise InputError(f"group: expected a list of positive cyclic orders, got {factors!r}")
    return FiniteAbelianGroup(tuple(factors))


def datum_from_json(obj: Any) -> CartanDatum:
    if not isinstance(obj, dict):
        raise InputError("datum must be a JSON object")
    for key in ("group", "g", "chi"):
        if key not in obj:
            raise InputError(f"datum is missing {key!r}")
    G = group_from_json(obj["group"])
    try:
        g = [G.element(_exp(x, f"g_{k + 1}")) for k, x in enumerate(obj["g"])]
        chi = [G.character(_exp(x, f"chi_{k + 1}")) for k, x in enumerate(obj["chi"])]
    except (ValueError, TypeError, StructuralError) as exc:
        raise InputError(str(exc)) from exc
    return build_datum(G, g, chi, obj.get("conductor"))


def datum_to_json(d: CartanDatum) -> dict:
    out = {
        "group": {"factors": list(d.group.factors)},
        "g": [{"exp": list(x.exp)} for x in d.g],
        "chi": [{"exp": list(c.exp)} for c in d.chi],
    }
    if d.L != d.group.exponent:
        out["conductor"] = d.L
    return out


def _root_key(key: str, n: int) -> tuple[int, int]:
    try:
        i, j = (int(p) for p in key.split(","))
    except ValueError:
        raise InputError(f"bad root key {key!r}; expected 'i,j'") from None
    if not 1 <= i < j <= n + 1:
        raise InputError(f"({i},{j}) is not a positive root of A_{n}")
    return i, j


def mu_from_json(obj: Any, d: CartanDatum) -> ParamFamily:
    entries = obj.get("entries", {}) if isinstance(obj, dict) else None
    if not isinstance(entries, dict):
        raise InputError("mu must be an object with an 'entries' map")
    vals = {}
    for key, text in entries.items():
        root = _root_key(key, d.n)
        try:
            vals[root] = parse_scalar(d.ctx, str(text))
        except ValueError as exc:
            raise InputError(f"mu[{key}]: {exc}") from exc
    return ParamFamily(d.n, d.ctx, vals)


def mu_to_json(mu: ParamFamily) -> dict:
    return {"entries": {f"{i},{j}": format_scalar(v) for (i, j), v in sorted(mu.items()) if v}}


def group_algebra_to_json(x: GroupAlgebraElement) -> list[dict]:
    return [{"g": list(g.exp), "c": format_scalar(c)} for g, c in sorted(x.terms.items(), key=lambda t: t[0].exp)
            if c]


def hom_to_json(phi: GroupHomomorphism) -> list[list[int]]:
    return [list(img.exp) for img in phi.images]


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_bundle(path: str | Path) -> tuple[CartanDatum, ParamFamily | None, list[ParamFamily] | None]:
    """Datum plus optional ``mu`` and ``mus`` from one file (a bare datum is allowed)."""
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise InputError(f"{path}: top level must be an object")
    dobj = obj.get("datum", obj)
    d = datum_from_json(dobj)
    mu = mu_from_json(obj["mu"], d) if "mu" in obj else None
    mus = None
    if "mus" in obj:
        if not isinstance(obj["mus"], list):
            raise InputError("'mus' must be a list")
        mus = [mu_from_json(m, d) for m in obj["mus"]]
    return d, mu, mus


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
