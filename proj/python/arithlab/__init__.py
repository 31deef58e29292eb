"""Python access to the arithlab core.

`run_command` mirrors the command-line tool and returns the parsed JSON report
together with the exit code. The remaining functions call the native code
directly and return plain Python values.
"""

from __future__ import annotations

import json
from typing import Any

from ._core import (
    SCHEMA_VERSION,
    ArithlabError,
    classify_form,
    count_points,
    detect_relation,
    expand_branch,
    p_curvature_status,
    run,
    splitting_density,
)

__all__ = [
    "SCHEMA_VERSION",
    "ArithlabError",
    "classify_form",
    "count_points",
    "detect_relation",
    "expand_branch",
    "p_curvature_status",
    "run",
    "run_command",
    "splitting_density",
]


def run_command(*args: str) -> tuple[int, dict[str, Any]]:
    """Runs a subcommand such as ``run_command("hasse", "--curve", "[0,0,0,-1,0]", "--p", "5")``."""
    code, out, _err = run([str(a) for a in args])
    return code, json.loads(out)
