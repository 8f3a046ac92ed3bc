"""Exact checks and searches for product decompositions in finite groups."""

import json

from ._prodlab import (
    Error,
    __version__,
    character_degrees,
    class_sizes,
    count_rank,
    criterion_count,
    dimension,
    gamma,
    group_order,
    mn_character,
    rank_census,
    run,
    run_criterion,
    virtual_degree,
    witten_zeta,
)


def report(*args):
    """Runs a command and returns (exit code, parsed JSON report)."""
    code, out, err = run([str(a) for a in args])
    if code not in (0, 1):
        raise Error(err.strip())
    return code, json.loads(out)


__all__ = [
    "Error",
    "__version__",
    "character_degrees",
    "class_sizes",
    "count_rank",
    "criterion_count",
    "dimension",
    "gamma",
    "group_order",
    "mn_character",
    "rank_census",
    "report",
    "run",
    "run_criterion",
    "virtual_degree",
    "witten_zeta",
]
