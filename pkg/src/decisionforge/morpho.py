"""Morphological charts: counting, enumerating, and selecting combinations.

A chart decomposes a design problem into columns (one per subproblem), each
holding the known solution fragments.  A concept is one fragment from every
column; the space of concepts is the cartesian product of the columns.
Enumeration order is deterministic -- columns vary last-to-first, fragments
in listed order -- so tests and users can rely on prefixes.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Optional

from .errors import MorphError
from .model import Concept, MorphChart


def combination_count(chart: MorphChart) -> int:
    """Number of distinct full selections: the product of the column sizes."""
    count = 1
    for column in chart.columns:
        count *= len(column.fragments)
    return count


def enumerate_concepts(
    chart: MorphChart,
    limit: Optional[int] = None,
    exclude: Iterable[str] = (),
) -> Iterator[dict[str, str]]:
    """Stream selections in lexicographic column-then-fragment order.

    ``exclude`` lists fragment labels to drop wherever they occur -- the
    usual case is pruning a placeholder like "None" out of every column that
    offers it.  ``limit`` truncates the stream after that many selections.
    """
    if limit is not None and limit < 0:
        raise MorphError(f"limit must be non-negative, got {limit}")
    excluded = set(exclude)
    pools = [
        [label for label in column.fragments if label not in excluded]
        for column in chart.columns
    ]
    if limit == 0 or any(not pool for pool in pools):
        return
    names = [column.name for column in chart.columns]
    yielded = 0
    for combo in itertools.product(*pools):
        yield dict(zip(names, combo))
        yielded += 1
        if limit is not None and yielded >= limit:
            return


def define_concept(
    chart: MorphChart,
    name: str,
    selection: Mapping[str, str],
    concept_id: Optional[str] = None,
) -> Concept:
    """Validate a selection against the chart and wrap it as a concept.

    The selection must name every column exactly once, using fragment labels
    the chart actually offers.
    """
    columns = {column.name: column.fragments for column in chart.columns}
    for column_name in selection:
        if column_name not in columns:
            raise MorphError(
                f"selection names column {column_name!r} which chart "
                f"{chart.id!r} does not have"
            )
    missing = [column.name for column in chart.columns if column.name not in selection]
    if missing:
        raise MorphError(
            f"missing column {', '.join(repr(m) for m in missing)} in selection "
            f"for chart {chart.id!r}"
        )
    for column in chart.columns:
        label = selection[column.name]
        if label not in column.fragments:
            raise MorphError(
                f"unknown fragment {label!r} in column {column.name!r} of chart "
                f"{chart.id!r}"
            )
    ordered = {column.name: selection[column.name] for column in chart.columns}
    return Concept(
        id=concept_id if concept_id is not None else name,
        name=name,
        chart_id=chart.id,
        selection=ordered,
    )
