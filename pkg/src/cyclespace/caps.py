"""Size limits shared by the expensive operations.

Limits can be overridden with the ``CYCLESPACE_CAPS`` environment variable,
a comma separated list such as ``max_vertices=300,max_group=2000000``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import SizeCapExceeded

ENV_VAR = "CYCLESPACE_CAPS"


@dataclass(frozen=True)
class Caps:
    max_vertices: int = 256  # automorphism search
    max_graph_vertices: int = 4096  # family constructors
    max_group: int = 10**6  # closure enumeration
    enumerate_limit: int = 10**4  # averaging path of the commutant solver
    max_torus_n: int = 7
    max_lp_size: int = 200_000  # rows * columns of a simplex tableau

    @classmethod
    def from_env(cls, environ=None, **overrides) -> Caps:
        environ = os.environ if environ is None else environ
        values = {}
        raw = environ.get(ENV_VAR, "").strip()
        names = {f.name for f in dataclasses.fields(cls)}
        if raw:
            for item in raw.split(","):
                key, _, val = item.partition("=")
                key = key.strip()
                if key not in names:
                    raise ValueError(f"unknown cap {key!r} in {ENV_VAR}")
                values[key] = int(val)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


DEFAULT_CAPS = Caps()


def check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise SizeCapExceeded(f"{what} = {value} exceeds cap {limit}")
