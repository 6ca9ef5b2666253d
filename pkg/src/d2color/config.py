"""Run configuration shared by the CLI commands.

Settings arrive from a key=value file (one pair per line, # comments) via
--config, and individual flags override file values.  Synthesis guards are
module constants rather than configuration: the general-family enumeration
refuses bounds beyond 7 vertices or 8 edges (see gadgets.GENERAL_VERTEX_GUARD
and gadgets.GENERAL_EDGE_GUARD), independent of anything set here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass(frozen=True)
class RunConfig:
    """Knobs honored by the command-line layer.

    solve_node_budget: abort exhaustive search after this many decisions,
    reported as a distinct budget outcome, never as UNSAT.  None means
    unbounded.  brute_force_edge_guard and nae_var_guard bound the two
    exhaustive oracles.  gadget_data_dir overrides where certify-gadget
    style commands look for packaged gadget files.  report_witnesses and
    cert_details select optional report sections (partition and peel order
    in props output, per-scenario detail lines in certification output).
    """

    solve_node_budget: int | None = None
    brute_force_edge_guard: int = 16
    nae_var_guard: int = 24
    gadget_data_dir: str | None = None
    report_witnesses: bool = False
    cert_details: bool = True

    def __post_init__(self) -> None:
        if self.solve_node_budget is not None and self.solve_node_budget < 1:
            raise ValueError("solve_node_budget must be positive")
        if self.brute_force_edge_guard < 1:
            raise ValueError("brute_force_edge_guard must be positive")
        if self.nae_var_guard < 1:
            raise ValueError("nae_var_guard must be positive")
        if self.gadget_data_dir is not None and not os.path.isdir(self.gadget_data_dir):
            raise ValueError(f"gadget_data_dir {self.gadget_data_dir!r} "
                             "is not a directory")


_BOOL_WORDS = {"true": True, "yes": True, "1": True,
               "false": False, "no": False, "0": False}


def parse_config_text(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse key=value lines into a RunConfig on top of ``base``."""
    known = {f.name: f for f in fields(RunConfig)}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, "
                             f"got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in known:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, val, lineno)
    if base is not None:
        merged = {f.name: getattr(base, f.name) for f in fields(RunConfig)}
        merged.update(values)
        values = merged
    return RunConfig(**values)  # type: ignore[arg-type]


def _coerce(key: str, val: str, lineno: int) -> object:
    if key in ("solve_node_budget", "gadget_data_dir") and val.lower() == "none":
        return None
    if key in ("solve_node_budget", "brute_force_edge_guard", "nae_var_guard"):
        try:
            return int(val)
        except ValueError:
            raise ValueError(f"config line {lineno}: {key} needs an integer, "
                             f"got {val!r}") from None
    if key in ("report_witnesses", "cert_details"):
        low = val.lower()
        if low not in _BOOL_WORDS:
            raise ValueError(f"config line {lineno}: {key} needs a boolean, "
                             f"got {val!r}")
        return _BOOL_WORDS[low]
    return val


def load_config(path: str, base: RunConfig | None = None) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), base=base)
