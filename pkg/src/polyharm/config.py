"""JSON configuration parsing with key-path error messages, and output helpers."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .evolution import HyperbolicTime, ParabolicTime, SpaceTimeSolution
from .modes import Affine, ExpBasisFactor, Hyperbolic, LastFactor, Oscillatory
from .separable import SeparableSolution


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def _require_keys(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise ConfigError(_join(path, key), "unknown key")
    for key in required:
        if key not in obj:
            raise ConfigError(_join(path, key), "missing required key")


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _number(obj, key, path, positive=False, default=None):
    if key not in obj:
        if default is None:
            raise ConfigError(_join(path, key), "missing required key")
        return default
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ConfigError(_join(path, key), f"expected a finite number, got {val!r}")
    if positive and not val > 0:
        raise ConfigError(_join(path, key), f"must be > 0, got {val!r}")
    return float(val)


def _int(obj, key, path, minimum=None):
    val = obj.get(key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(_join(path, key), f"expected an integer, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigError(_join(path, key), f"must be >= {minimum}, got {val}")
    return val


def _numbers(obj, key, path):
    vals = obj.get(key, [])
    if not isinstance(vals, list):
        raise ConfigError(_join(path, key), "expected a list of numbers")
    for i, v in enumerate(vals):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(_join(_join(path, key), i), f"expected a finite number, got {v!r}")
    return [float(v) for v in vals]


def parse_mode(obj, path):
    _require_keys(obj, path, ["variant"], ["omega", "mu", "a", "b"])
    variant = obj["variant"]
    if variant == "osc":
        _require_keys(obj, path, ["variant", "omega"], ["a", "b"])
        return Oscillatory(_number(obj, "omega", path, positive=True),
                           _number(obj, "a", path, default=1.0), _number(obj, "b", path, default=0.0))
    if variant == "hyp":
        _require_keys(obj, path, ["variant", "mu"], ["a", "b"])
        return Hyperbolic(_number(obj, "mu", path, positive=True),
                          _number(obj, "a", path, default=1.0), _number(obj, "b", path, default=0.0))
    if variant == "affine":
        _require_keys(obj, path, ["variant"], ["a", "b"])
        return Affine(_number(obj, "a", path, default=1.0), _number(obj, "b", path, default=0.0))
    raise ConfigError(_join(path, "variant"), f"expected osc|hyp|affine, got {variant!r}")


def parse_modes(obj, key, path):
    modes = obj.get(key)
    if not isinstance(modes, list) or not modes:
        raise ConfigError(_join(path, key), "expected a non-empty list of mode descriptors")
    return [parse_mode(md, _join(_join(path, key), i)) for i, md in enumerate(modes)]


def parse_last(obj, path, K_default, n_default):
    _require_keys(obj, path, [], ["K", "n", "c", "d", "q", "f", "basis", "overcount"])
    K = _number(obj, "K", path, default=K_default) if "K" in obj else K_default
    n = _int(obj, "n", path, minimum=1) if "n" in obj else n_default
    overcount = obj.get("overcount", False)
    if not isinstance(overcount, bool):
        raise ConfigError(_join(path, "overcount"), "expected true or false")
    basis = obj.get("basis", "trig")
    try:
        if basis == "trig":
            for bad in ("q", "f"):
                if bad in obj:
                    raise ConfigError(_join(path, bad), "only valid with basis 'exp'")
            return LastFactor(K, n, _numbers(obj, "c", path), _numbers(obj, "d", path),
                              overcount=overcount)
        if basis == "exp":
            for bad in ("c", "d"):
                if bad in obj:
                    raise ConfigError(_join(path, bad), "only valid with basis 'trig'")
            return ExpBasisFactor(K, n, _numbers(obj, "q", path), _numbers(obj, "f", path),
                                  overcount=overcount)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(_join(path, "basis"), f"expected trig|exp, got {basis!r}")


def parse_solution(obj) -> SeparableSolution:
    _require_keys(obj, "", ["n", "modes", "last"])
    n = _int(obj, "n", "", minimum=1)
    modes = parse_modes(obj, "modes", "")
    ksum = float(sum(md.lam for md in modes))
    last = parse_last(obj["last"], "last", ksum, n)
    try:
        return SeparableSolution(tuple(modes), last, n)
    except ValueError as exc:
        raise ConfigError("last", str(exc)) from None


def parse_spacetime(obj, kind: str) -> SpaceTimeSolution:
    if kind == "parabolic":
        _require_keys(obj, "", ["n", "modes", "alpha"], ["A", "k"])
    elif kind == "hyperbolic":
        _require_keys(obj, "", ["n", "modes", "beta"], ["C", "D", "k"])
    else:
        raise ConfigError("type", f"expected parabolic|hyperbolic, got {kind!r}")
    n = _int(obj, "n", "", minimum=1)
    modes = parse_modes(obj, "modes", "")
    k_expected = float(sum(md.lam for md in modes)) ** n
    # an explicit k that disagrees is kept so verification can flag it
    k = _number(obj, "k", "") if "k" in obj else k_expected
    if kind == "parabolic":
        time = ParabolicTime(_number(obj, "alpha", ""), k, _number(obj, "A", "", default=1.0))
    else:
        beta = _number(obj, "beta", "")
        if beta < 0:
            raise ConfigError("beta", "must be >= 0")
        time = HyperbolicTime(beta, k, _number(obj, "C", "", default=1.0),
                              _number(obj, "D", "", default=0.0))
    return SpaceTimeSolution(tuple(modes), time, n, check=False)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path} is not valid JSON: {exc}") from None


# --------------------------------------------------------------------------
# output


def format_float(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON with floats written to 17 significant digits."""
    return _encode(obj, indent, 0)


def write_csv(path, header, columns):
    cols = [np.asarray(c, dtype=float).ravel() for c in columns]
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(format_float(float(v)) for v in row) + "\n")


def build_hash() -> str:
    """Digest of the package sources, identifying the exact build."""
    digest = hashlib.sha256()
    for p in sorted(Path(__file__).parent.glob("*.py")):
        digest.update(p.name.encode())
        digest.update(p.read_bytes())
    return digest.hexdigest()[:12]


def version_string() -> str:
    return f"{__version__}+{build_hash()}"
