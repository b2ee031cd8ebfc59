#--------------------------------------------------------------------------------------------------#
# algospec.py                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Algorithm-spec strings, e.g. "graph_q.10B_0.5W" = BWQS with batch size 10 and weight 0.5         #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.20: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
import re
from dataclasses import dataclass, fields

import numpy as np

from xube.errors import AlgoSpecError

#--------------------------------------------------------------------------------------------------#
# Grammar                                                                                          #
#--------------------------------------------------------------------------------------------------#
FAMILIES = {
    # family      : head
    "graph_v"     : "v",
    "graph_q"     : "q",
    "beam_v"      : "v",
    "beam_q"      : "q",
    "rollout"     : None,
    "sup_fwd_v"   : "v",
    "sup_rev_v"   : "v",
    "sup_fwd_q"   : "q",
    "sup_rev_q"   : "q",
}
PARAM_ORDER = "BWETIS"
INT_PARAMS = "BIS"
_PARAM_RE = re.compile(r"^([0-9]+(?:\.[0-9]*)?|\.[0-9]+)([A-Za-z])$")


@dataclass(frozen=True)
class AlgoSpec:
    family: str
    B: int = 1                        # batch size / beam width
    W: float = 1.0                    # path-cost weight (lambda)
    E: float = 0.0                    # random pop / random edge probability
    T: float = 0.0                    # Boltzmann temperature
    I: int = 10000                    # max search iterations
    S: int = 0                        # random-walk steps

    @property
    def head(self) -> str | None:
        return FAMILIES[self.family]

    @property
    def is_supervised(self) -> bool:
        return self.family.startswith("sup_")

    def render(self) -> str:
        return render_algo(self)

    def __str__(self):
        return render_algo(self)


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return np.format_float_positional(value, trim="-")


def parse_algo(spec: str) -> AlgoSpec:
    """
    Parse an algorithm-spec string

    Parameters
    ----------
    spec: `str`
        family, optionally followed by "." and "_"-separated parameters, each a decimal number
        followed by one of the letters B, W, E, T, I, S

    Returns
    -------
    algo: `AlgoSpec`
        parameters not given keep their defaults
    """
    text = spec.strip()
    if not text:
        raise AlgoSpecError("empty algorithm spec", token="")
    family, sep, rest = text.partition(".")
    if family not in FAMILIES:
        raise AlgoSpecError(f"unknown algorithm family {family!r}; expected one of "
                            f"{', '.join(FAMILIES)}", token=family)
    if sep and not rest:
        raise AlgoSpecError(f"empty parameter list in {spec!r}", token=".")

    params = {}
    for token in rest.split("_") if rest else []:
        m = _PARAM_RE.match(token)
        if m is None:
            raise AlgoSpecError(f"malformed parameter {token!r} in {spec!r}", token=token)
        number, letter = m.groups()
        if letter not in PARAM_ORDER:
            raise AlgoSpecError(f"unknown parameter letter {letter!r} in {spec!r}", token=token)
        if letter in params:
            raise AlgoSpecError(f"duplicate parameter {letter!r} in {spec!r}", token=token)
        if letter in INT_PARAMS:
            if "." in number:
                raise AlgoSpecError(f"parameter {letter} must be an integer in {spec!r}", token=token)
            params[letter] = int(number)
        else:
            params[letter] = float(number)
    return AlgoSpec(family, **params)


def render_algo(algo: AlgoSpec) -> str:
    """Inverse of parse_algo. Parameters equal to their default are omitted."""
    defaults = {f.name: f.default for f in fields(AlgoSpec) if f.name != "family"}
    parts = [f"{_fmt(getattr(algo, k))}{k}" for k in PARAM_ORDER if getattr(algo, k) != defaults[k]]
    return algo.family + ("." + "_".join(parts) if parts else "")
