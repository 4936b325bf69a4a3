"""Grid configuration, loaded from INI files."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path

from .qarith import LaurentPoly, parse_laurent


@dataclass(frozen=True)
class GridConfig:
    n_max: int = 6
    ell_min: int = -2
    ell_max: int = 2
    mu_max: int = 20
    module_n_max: int = 5
    oracle_lambda_max: int = 8
    lattice_extra: int = 12
    poly_n_max: int = 12
    poly_ell_min: int = -4
    poly_ell_max: int = 4
    genk_lambda_max: int = 12
    genk_kappas: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ells(self) -> range:
        return range(self.ell_min, self.ell_max + 1)

    @property
    def poly_ells(self) -> range:
        return range(self.poly_ell_min, self.poly_ell_max + 1)

    def kappa_values(self) -> list[tuple[str, LaurentPoly]]:
        return [(s, parse_laurent(s)) for s in self.genk_kappas]

    def lattice_cap(self, n: int, ell: int) -> int:
        return n + 2 * abs(ell) + self.lattice_extra

    def with_overrides(self, **kw) -> "GridConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["genk_kappas"] = list(self.genk_kappas)
        return out


def _apply(cfg: GridConfig, parser: configparser.ConfigParser) -> GridConfig:
    kw = {}
    if parser.has_section("grid"):
        for key, value in parser.items("grid"):
            if key not in {f.name for f in fields(GridConfig)}:
                raise ValueError(f"unknown grid key {key!r}")
            kw[key] = int(value)
    if parser.has_section("genk"):
        sec = parser["genk"]
        if "lambda_max" in sec:
            kw["genk_lambda_max"] = sec.getint("lambda_max")
        if "kappas" in sec:
            kw["genk_kappas"] = tuple(line.strip() for line in sec["kappas"].splitlines() if line.strip())
    return replace(cfg, **kw)


def load_config(path: str | Path | None = None) -> GridConfig:
    """Defaults from the packaged default.ini, then the optional file on top."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.read_string(resources.files("idp").joinpath("default.ini").read_text())
    cfg = _apply(GridConfig(), parser)
    if path is not None:
        extra = configparser.ConfigParser(inline_comment_prefixes=("#",))
        if not extra.read(path):
            raise FileNotFoundError(path)
        cfg = _apply(cfg, extra)
    return cfg
