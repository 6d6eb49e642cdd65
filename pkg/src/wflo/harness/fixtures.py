"""Reference data shipped with the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    return json.loads(resources.files("wflo.data").joinpath(name).read_text())


def optimal_layouts_l4() -> list[str]:
    """The 79 degenerate optimal layouts at ``l_grid = 4``, site 1 leftmost."""
    return list(_load("optimal_layouts_l4.json")["layouts"])


def cobyla_cvar_samples(which: str = "initial_36") -> list[float]:
    """Per-run powers of the COBYLA-CVaR (alpha 0.25) campaign at ``l_grid = 4``.

    ``which`` is ``"initial_36"`` or ``"extended_284"``.
    """
    return list(_load("cobyla_cvar025_samples.json")[which])
