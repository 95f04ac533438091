"""Timeline view algebra: mixed-granularity cuts, drill-down, roll-up, windows.

A ViewCut is a chronological, disjoint, exact cover of [0, T) by dyadic
intervals, one pixel-bar each.  Drilling replaces a bar by its children;
rolling up replaces the exact child set of one parent by that parent.  Every
mutation revalidates the cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from graphpix.analytics.ordering import OrderingSpec
from graphpix.dyngraph import IntervalId, children, level_count, max_level
from graphpix.render import CapacityError


class ViewError(ValueError):
    """Invalid view mutation (reported as a conflict by the service)."""


@dataclass
class ViewCut:
    """Current timeline cover shown as pixel-bars, plus display settings."""

    dataset: str
    intervals: list[IntervalId]
    cap: int
    method: str = ""
    ordering: OrderingSpec = field(default_factory=OrderingSpec)
    selected: set[int] = field(default_factory=set)
    window: Optional[tuple[int, int]] = None


def validate_cover(intervals: Sequence[IntervalId], T: int) -> None:
    """Chronological, pairwise disjoint, exact cover of [0, T)."""
    if not intervals:
        raise ViewError("view holds no intervals")
    cursor = 0
    for iv in intervals:
        if not iv.is_valid(T):
            raise ViewError(f"interval (level={iv.level}, start={iv.start}) invalid for T={T}")
        if iv.t0() != cursor:
            raise ViewError(f"cover broken at step {cursor}")
        cursor = iv.t1(T)
    if cursor != T:
        raise ViewError(f"cover ends at {cursor}, expected {T}")


def default_view(dataset: str, T: int, cap: int, method: str = "") -> ViewCut:
    """Uniform cut at the medium zoom level when everything fits the cap,
    otherwise at the finest level that does fit."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    lmax = max_level(T)
    if T <= cap:
        level = -(-lmax // 2)
    else:
        level = next(L for L in range(lmax + 1) if level_count(T, L) <= cap)
    intervals = [IntervalId(level, s) for s in range(level_count(T, level))]
    view = ViewCut(dataset=dataset, intervals=intervals, cap=cap, method=method)
    validate_cover(view.intervals, T)
    return view


def drill(view: ViewCut, bar: int, T: int) -> ViewCut:
    """Replace the bar's interval in place by its children."""
    if not (0 <= bar < len(view.intervals)):
        raise ViewError(f"bar {bar} out of range")
    iv = view.intervals[bar]
    if iv.level == 0:
        raise ViewError("already finest granularity")
    kids = children(iv, T)
    if len(view.intervals) - 1 + len(kids) > view.cap:
        raise CapacityError(len(view.intervals) - 1 + len(kids), view.cap)
    intervals = view.intervals[:bar] + kids + view.intervals[bar + 1:]
    validate_cover(intervals, T)
    return replace(view, intervals=intervals, selected=set())


def rollup(view: ViewCut, bars: Sequence[int], T: int) -> ViewCut:
    """Replace a contiguous run matching one parent's exact child set by the parent."""
    positions = sorted(set(bars))
    if not positions:
        raise ViewError("no bars selected")
    if positions != list(range(positions[0], positions[-1] + 1)):
        raise ViewError("selected bars must be contiguous")
    for p in positions:
        if not (0 <= p < len(view.intervals)):
            raise ViewError(f"bar {p} out of range")
    run = [view.intervals[p] for p in positions]
    parent = run[0].parent()
    expected = children(parent, T)
    if run != expected:
        raise ViewError(
            "selection not parent-aligned; nearest parent covers steps "
            f"[{parent.t0()}, {parent.t1(T)})"
        )
    intervals = view.intervals[: positions[0]] + [parent] + view.intervals[positions[-1] + 1:]
    validate_cover(intervals, T)
    return replace(view, intervals=intervals, selected=set())


def set_window(view: ViewCut, t0: Optional[int], t1: Optional[int], T: int) -> ViewCut:
    """Filter the visible period without altering the cut; None/None clears."""
    if t0 is None and t1 is None:
        return replace(view, window=None)
    if t0 is None or t1 is None or not (0 <= t0 < t1 <= T):
        raise ViewError(f"window must satisfy 0 <= t0 < t1 <= {T}")
    return replace(view, window=(t0, t1))


def visible_positions(view: ViewCut, T: int) -> list[int]:
    """Bar positions inside the active window (all bars when no window)."""
    if view.window is None:
        return list(range(len(view.intervals)))
    t0, t1 = view.window
    return [
        p for p, iv in enumerate(view.intervals)
        if iv.t0() < t1 and iv.t1(T) > t0
    ]
