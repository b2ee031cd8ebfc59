#--------------------------------------------------------------------------------------------------#
# registry.py                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Registry of domains, encoders and approximators, addressed from the command line as              #
# "name:key=value,key=value" (e.g. "grid:width=8,height=8", "mlp:hidden=400-200")                  #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.22: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from xube.approx import MLP, MLPSpec, TabularApprox
from xube.errors import ConfigError
from xube.grid import GridDomain
from xube.sliding_tile import SlidingTile

#--------------------------------------------------------------------------------------------------#
# Argument parsing                                                                                 #
#--------------------------------------------------------------------------------------------------#
@dataclass(frozen=True)
class Param:
    type: Callable[[str], Any]
    default: Any
    help: str = ""


def parse_named_args(text: str) -> tuple[str, dict[str, str]]:
    """'grid:width=8,height=4' -> ('grid', {'width': '8', 'height': '4'})"""
    name, _, rest = text.strip().partition(":")
    if not name:
        raise ConfigError(f"missing name in {text!r}")
    args = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq or not key.strip():
            raise ConfigError(f"argument {item!r} in {text!r} is not key=value")
        key = key.strip()
        if key in args:
            raise ConfigError(f"duplicate argument {key!r} in {text!r}")
        args[key] = value.strip()
    return name, args


def _convert(owner: str, params: dict[str, Param], args: dict[str, str]) -> dict[str, Any]:
    unknown = set(args) - set(params)
    if unknown:
        raise ConfigError(f"{owner} has no argument(s) {', '.join(sorted(unknown))}; "
                          f"expected {', '.join(params) or 'none'}")
    out = {}
    for key, p in params.items():
        if key not in args:
            out[key] = p.default
            continue
        try:
            out[key] = p.type(args[key])
        except ValueError as e:
            raise ConfigError(f"{owner}: bad value {args[key]!r} for {key}") from e
    return out


def _hidden(text: str) -> tuple[int, ...]:
    return tuple(int(s) for s in text.split("-") if s) if text else ()


#--------------------------------------------------------------------------------------------------#
# Registry                                                                                         #
#--------------------------------------------------------------------------------------------------#
@dataclass
class Entry:
    name: str
    factory: Callable
    params: dict[str, Param] = field(default_factory=dict)
    help: str = ""

    def usage(self) -> str:
        if not self.params:
            return "no arguments"
        return ", ".join(f"{k}={p.default} ({p.help})" if p.help else f"{k}={p.default}"
                         for k, p in self.params.items())


class Registry:

    def __init__(self):
        self.domains: dict[str, Entry] = {}
        self.encoders: list[tuple[str, str, Callable]] = []
        self.approximators: dict[str, Entry] = {}

    def register_domain(self, name, factory, params=None, help=""):
        if name in self.domains:
            raise ConfigError(f"domain {name!r} is already registered")
        self.domains[name] = Entry(name, factory, params or {}, help)

    def register_encoder(self, domain_name: str, arch: str, factory: Callable) -> None:
        self.encoders.append((domain_name, arch, factory))

    def register_approx(self, name, factory, params=None, help=""):
        if name in self.approximators:
            raise ConfigError(f"approximator {name!r} is already registered")
        self.approximators[name] = Entry(name, factory, params or {}, help)

    def get_domain(self, text: str):
        name, args = parse_named_args(text)
        if name not in self.domains:
            raise ConfigError(f"unknown domain {name!r}; registered: {', '.join(self.domains)}")
        entry = self.domains[name]
        return entry.factory(**_convert(f"domain {name}", entry.params, args))

    def get_encoder(self, domain, arch_text: str):
        """First registered encoder for (domain name, architecture)."""
        arch, _ = parse_named_args(arch_text)
        for dom_name, enc_arch, factory in self.encoders:
            if dom_name in (domain.name, "*") and enc_arch == arch:
                return factory(domain)
        raise ConfigError(f"no encoder registered for domain {domain.name!r} and architecture {arch!r}")

    def get_approx(self, arch_text: str, input_dim: int, out_dim: int):
        name, args = parse_named_args(arch_text)
        if name not in self.approximators:
            raise ConfigError(f"unknown architecture {name!r}; registered: {', '.join(self.approximators)}")
        entry = self.approximators[name]
        return entry.factory(input_dim, out_dim, **_convert(f"architecture {name}", entry.params, args))


def _make_mlp(input_dim, out_dim, hidden, optimizer, seed):
    spec = MLPSpec((input_dim, *hidden, out_dim))
    return MLP(spec, rng=np.random.default_rng(seed), optimizer=optimizer)


def default_registry() -> Registry:
    reg = Registry()
    reg.register_domain("stp3", lambda: SlidingTile(3), help="3x3 sliding-tile puzzle (8-puzzle)")
    reg.register_domain("stp4", lambda: SlidingTile(4), help="4x4 sliding-tile puzzle (15-puzzle)")
    reg.register_domain("grid", GridDomain, {
        "width"              : Param(int, 8, "columns"),
        "height"             : Param(int, 8, "rows"),
        "obstacle_density"   : Param(float, 0.0, "blocked fraction in [0, 0.4]"),
        "max_terrain_weight" : Param(int, 1, "terrain weights 1..max"),
        "seed"               : Param(int, 0, "map seed"),
    }, help="weighted 4-connected grid")

    # any domain with a default encoder
    reg.register_encoder("*", "mlp", lambda d: d.default_encoder())
    reg.register_encoder("*", "table", lambda d: d.default_encoder())

    reg.register_approx("mlp", _make_mlp, {
        "hidden"    : Param(_hidden, (400, 200), "hidden sizes, '-' separated"),
        "optimizer" : Param(str, "adam", "adam or sgd"),
        "seed"      : Param(int, 0, "initialisation seed"),
    }, help="fully connected network, rectifier hidden layers")
    reg.register_approx("table", lambda input_dim, out_dim: TabularApprox(out_dim),
                        help="exact lookup table (small domains)")
    return reg


REGISTRY = default_registry()
