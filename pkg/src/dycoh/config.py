"""Job configuration: schema validation, defaults, overrides and backend construction.

Every problem with the input is raised as :class:`ConfigError` carrying a
JSON pointer to the offending field, so the command line can report it
precisely and exit with status 2.
"""

from __future__ import annotations

import copy
import hashlib
import json
import re
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .backend import DEFAULT_MEMORY_CAP, ComplexBackend
from .groups import FiniteGroup, make_group
from .hopf import (
    HopfBackend,
    convolution_yd,
    dual_group_algebra,
    group_algebra,
    hopf_from_arrays,
    regular_yd,
    sweedler,
    trivial_yd,
    yd_from_arrays,
)
from .linalg import GF, QQ, Field
from .vecg import (
    VecGBackend,
    coefficient_from_matrices,
    convolution_coefficient,
    grouplike_coefficient,
    skew_primitive_coefficient,
    unit_coefficient,
)

DEFAULTS = {"field": "Q", "max_degree": 3, "seed": 0, "samples": 10, "memory_cap": DEFAULT_MEMORY_CAP}

# order and degree caps; beyond these the dense exact computations stop being practical
GROUP_CAP = {"rationals": 8, "prime-field": 12}
HOPF_DIM_CAP = 8
DEGREE_CAP = {"vec_g": 4, "hopf": 3}


class ConfigError(ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.message = message
        self.pointer = pointer or "/"

    def __str__(self) -> str:
        return f"{self.pointer}: {self.message}"


def schema() -> dict:
    text = resources.files("dycoh").joinpath("data/config.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path)


def parse_field(desc, pointer: str = "/field") -> Field:
    if isinstance(desc, dict):
        if desc.get("kind") == "rationals":
            return QQ
        p = desc.get("characteristic")
        if p is None:
            raise ConfigError("prime-field needs a characteristic", pointer + "/characteristic")
        try:
            return GF(int(p))
        except ValueError as exc:
            raise ConfigError(str(exc), pointer + "/characteristic") from None
    text = str(desc).strip()
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"F(\d+)|GF\((\d+)\)", text)
    if not m:
        raise ConfigError(f"unknown field {text!r}; use Q, F<p> or GF(<p>)", pointer)
    try:
        return GF(int(m.group(1) or m.group(2)))
    except ValueError as exc:
        raise ConfigError(str(exc), pointer) from None


def _scalars(fld: Field, data, pointer: str):
    """Nested lists of JSON scalars -> nested lists of exact field elements."""
    if isinstance(data, list):
        return [_scalars(fld, x, f"{pointer}/{i}") for i, x in enumerate(data)]
    try:
        return fld.parse(data)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc), pointer) from None


@dataclass
class JobConfig:
    raw: dict
    field: Field
    backend_kind: str
    max_degree: int
    seed: int
    samples: int
    memory_cap: int
    _backend: ComplexBackend | None = field(default=None, repr=False)

    @property
    def digest(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()

    def backend(self) -> ComplexBackend:
        if self._backend is None:
            self._backend = build_backend(self)
        return self._backend


def load_config(source, overrides: dict | None = None) -> JobConfig:
    """Validate a config (path, JSON text or dict), apply defaults and overrides."""
    if isinstance(source, dict):
        raw = copy.deepcopy(source)
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc.strerror or exc}", "") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object", "")
    for key, val in (overrides or {}).items():
        if val is not None:
            raw[key] = val
    for key, val in DEFAULTS.items():
        raw.setdefault(key, val)

    validator = jsonschema.Draft202012Validator(schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(raw))
    if err is not None:
        raise ConfigError(err.message, _pointer(err.absolute_path))

    fld = parse_field(raw["field"])
    kind = raw["backend"]
    if raw["max_degree"] > DEGREE_CAP[kind]:
        raise ConfigError(f"max_degree {raw['max_degree']} exceeds the {kind} cap of {DEGREE_CAP[kind]}", "/max_degree")
    return JobConfig(raw, fld, kind, raw["max_degree"], raw["seed"], raw["samples"], raw["memory_cap"])


def _group(desc, fld: Field, pointer: str) -> FiniteGroup:
    try:
        grp = make_group(desc)
    except (KeyError, ValueError, IndexError) as exc:
        raise ConfigError(f"invalid group: {exc}", pointer) from None
    cap = GROUP_CAP[fld.kind]
    if grp.order > cap:
        raise ConfigError(f"group of order {grp.order} exceeds the cap of {cap} over {fld}", pointer)
    return grp


def build_backend(cfg: JobConfig) -> ComplexBackend:
    raw, fld = cfg.raw, cfg.field
    coef = raw.get("coefficient", {"preset": "unit" if cfg.backend_kind == "vec_g" else "trivial"})
    try:
        if cfg.backend_kind == "vec_g":
            return VecGBackend(_vecg_coefficient(raw["group"], coef, fld), memory_cap=cfg.memory_cap)
        hd, grp = _hopf_data(raw["hopf"], fld)
        return HopfBackend(hd, _yd(coef, hd, grp, fld), memory_cap=cfg.memory_cap)
    except ConfigError:
        raise
    except (ValueError, IndexError, KeyError) as exc:
        where = "/coefficient" if "coefficient" in raw else ("/group" if cfg.backend_kind == "vec_g" else "/hopf")
        raise ConfigError(str(exc), where) from None


def _vecg_coefficient(gdesc, coef: dict, fld: Field):
    grp = _group(gdesc, fld, "/group")
    preset = coef.get("preset")
    try:
        if preset == "unit":
            return unit_coefficient(grp, fld)
        if preset == "convolution":
            return convolution_coefficient(grp, fld)
        if preset == "grouplike":
            for i, x in enumerate(coef["support"]):
                if isinstance(x, str) and x not in grp.names:
                    raise ConfigError(f"{x!r} is not an element of the group", f"/coefficient/support/{i}")
                if isinstance(x, int) and x >= grp.order:
                    raise ConfigError(f"index {x} out of range", f"/coefficient/support/{i}")
            return grouplike_coefficient(grp, fld, coef["support"])
        if preset == "skew_primitive":
            chi = coef.get("character")
            if chi is not None:
                chi = _scalars(fld, chi, "/coefficient/character")
            return skew_primitive_coefficient(grp, fld, chi)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc), "/coefficient") from None
    return coefficient_from_matrices(
        grp,
        fld,
        coef["grade_dims"],
        _scalars(fld, coef["action"], "/coefficient/action"),
        _scalars(fld, coef["comul"], "/coefficient/comul"),
        _scalars(fld, coef["counit"], "/coefficient/counit"),
    )


def _hopf_data(desc: dict, fld: Field):
    preset = desc.get("preset")
    grp = None
    try:
        if preset in ("group_algebra", "dual_group_algebra"):
            grp = _group(desc["group"], fld, "/hopf/group")
            hd = group_algebra(grp, fld) if preset == "group_algebra" else dual_group_algebra(grp, fld)
        elif preset == "sweedler":
            hd = sweedler(fld)
        else:
            hd = hopf_from_arrays(
                fld,
                _scalars(fld, desc["mult"], "/hopf/mult"),
                _scalars(fld, desc["unit"], "/hopf/unit"),
                _scalars(fld, desc["comul"], "/hopf/comul"),
                _scalars(fld, desc["counit"], "/hopf/counit"),
                _scalars(fld, desc["antipode"], "/hopf/antipode"),
            )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc), "/hopf") from None
    if hd.dim > HOPF_DIM_CAP:
        raise ConfigError(f"Hopf algebra of dimension {hd.dim} exceeds the cap of {HOPF_DIM_CAP}", "/hopf")
    return hd, (grp if preset == "group_algebra" else None)


def _yd(coef: dict, hd, grp, fld: Field):
    preset = coef.get("preset")
    if preset == "trivial":
        return trivial_yd(hd)
    if preset == "regular":
        return regular_yd(hd)
    if preset == "convolution":
        if grp is None:
            raise ConfigError("the convolution coefficient needs hopf.preset = group_algebra", "/coefficient/preset")
        return convolution_yd(grp, hd)
    return yd_from_arrays(
        hd,
        _scalars(fld, coef["action"], "/coefficient/action"),
        _scalars(fld, coef["coaction"], "/coefficient/coaction"),
        _scalars(fld, coef["comul"], "/coefficient/comul"),
        _scalars(fld, coef["counit"], "/coefficient/counit"),
    )
