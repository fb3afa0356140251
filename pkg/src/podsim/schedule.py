"""Broadcast schedules: which belief levels an institution sends each tick.

The three experiment conditions are *single* (one level for the whole
run), *split* (one level, then another after a switch tick), and
*gradual* (a staircase stepping down one level per fixed interval).  An
explicit tick->levels map covers anything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from podsim.contagion import BELIEF_MAX, BELIEF_MIN


def _check_level(level: int, field: str) -> None:
    if not BELIEF_MIN <= int(level) <= BELIEF_MAX:
        raise ValueError(f"{field} must be a belief level in [0, 6], got {level}")


@dataclass(frozen=True)
class SingleSchedule:
    level: int = 6

    def __post_init__(self):
        _check_level(self.level, "level")


@dataclass(frozen=True)
class SplitSchedule:
    first: int = 6
    second: int = 0
    switch_tick: int = 50

    def __post_init__(self):
        _check_level(self.first, "first")
        _check_level(self.second, "second")
        if self.switch_tick < 1:
            raise ValueError(f"switch_tick must be >= 1, got {self.switch_tick}")


@dataclass(frozen=True)
class GradualSchedule:
    start: int = 6
    end: int = 0
    interval: int = 10

    def __post_init__(self):
        _check_level(self.start, "start")
        _check_level(self.end, "end")
        if self.interval < 1:
            raise ValueError(f"interval must be >= 1, got {self.interval}")
        if self.end > self.start:
            raise ValueError("gradual schedule steps downward: need end <= start")


@dataclass(frozen=True)
class ExplicitSchedule:
    """Explicit tick -> list-of-levels map; ticks absent from the map error."""

    levels_by_tick: Mapping[int, Sequence[int]]

    def __post_init__(self):
        for t, levels in self.levels_by_tick.items():
            for level in levels:
                _check_level(level, f"levels_by_tick[{t}]")


Schedule = Union[SingleSchedule, SplitSchedule, GradualSchedule, ExplicitSchedule]


def schedule_levels(schedule: Schedule, t: int) -> list[int]:
    """Belief levels broadcast at tick t (ticks are 1-based)."""
    if t < 1:
        raise ValueError(f"tick must be >= 1, got {t}")
    if isinstance(schedule, SingleSchedule):
        return [schedule.level]
    if isinstance(schedule, SplitSchedule):
        return [schedule.first if t <= schedule.switch_tick else schedule.second]
    if isinstance(schedule, GradualSchedule):
        return [max(schedule.end, schedule.start - (t - 1) // schedule.interval)]
    if isinstance(schedule, ExplicitSchedule):
        if t not in schedule.levels_by_tick:
            raise ValueError(f"explicit schedule has no entry for tick {t}")
        return [int(level) for level in schedule.levels_by_tick[t]]
    raise TypeError(f"not a schedule: {schedule!r}")
