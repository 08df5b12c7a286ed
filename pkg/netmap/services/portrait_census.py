"""Enumeration of NET dynamic portraits of a given degree up to isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool
from typing import Iterator, List, Sequence, Set, Tuple

from loguru import logger

from netmap.services.errors import UsageError
from netmap.services.portrait import DynamicPortrait, PortraitKey, canonical_key, portrait_from_key

_SELF_MAPS: Tuple[Tuple[int, ...], ...] = tuple(product(range(4), repeat=4))
_WEIGHTS: Tuple[Tuple[int, ...], ...] = tuple(product((1, 2), repeat=4))


@dataclass(frozen=True)
class PortraitCensus:
    degree: int
    keys: Tuple[PortraitKey, ...]

    @property
    def count(self) -> int:
        return len(self.keys)

    def representatives(self) -> List[DynamicPortrait]:
        return [portrait_from_key(key) for key in self.keys]


def _bounded_compositions(total: int, caps: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Tuples c with sum total and 0 <= c[i] <= caps[i]."""
    if len(caps) == 1:
        if 0 <= total <= caps[0]:
            yield (total,)
        return
    tail_room = sum(caps[1:])
    for first in range(max(0, total - tail_room), min(caps[0], total) + 1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + rest


def _fully_postcritical(f: Sequence[int], critical_values: Set[int]) -> bool:
    seen: Set[int] = set()
    frontier = list(critical_values)
    while frontier:
        x = frontier.pop()
        if x not in seen:
            seen.add(x)
            frontier.append(f[x])
    return len(seen) == 4


def _census_chunk(task: Tuple[int, Sequence[Tuple[int, ...]]]) -> Set[PortraitKey]:
    degree, maps = task
    keys: Set[PortraitKey] = set()
    for f in maps:
        for w in _WEIGHTS:
            base = [0] * 4
            for y in range(4):
                base[f[y]] += w[y]
            if max(base) > degree:
                continue
            remaining = 2 * degree - 2 - w.count(2)
            if remaining < 0:
                continue
            caps = [(degree - base[x]) // 2 for x in range(4)]
            named_values = {f[y] for y in range(4) if w[y] == 2}
            weight_one_targets = {f[y] for y in range(4) if w[y] == 1}
            for c in _bounded_compositions(remaining, caps):
                values = named_values | {x for x in range(4) if c[x]}
                if not _fully_postcritical(f, values):
                    continue
                full = sum(
                    1
                    for x in values
                    if base[x] + 2 * c[x] == degree and x not in weight_one_targets
                )
                if full == 3 and degree % 4:
                    continue
                keys.add(canonical_key(f, w, c))
    return keys


def enumerate_portraits(degree: int, workers: int = 1) -> PortraitCensus:
    """Isomorphism classes of NET portraits of the given degree.

    Each class is encoded by its canonical key. With ``workers > 1`` the self
    maps of the postcritical set are split across a process pool and the key
    sets are merged before sorting.
    """
    if degree < 2:
        raise UsageError("degree must be at least 2")
    logger.debug("Enumerating portraits", degree=degree, workers=workers)
    if workers > 1:
        size = -(-len(_SELF_MAPS) // (workers * 4))
        tasks = [(degree, _SELF_MAPS[i:i + size]) for i in range(0, len(_SELF_MAPS), size)]
        with Pool(processes=workers) as pool:
            keys = set().union(*pool.map(_census_chunk, tasks))
    else:
        keys = _census_chunk((degree, _SELF_MAPS))
    census = PortraitCensus(degree, tuple(sorted(keys)))
    logger.info("Portraits enumerated", degree=degree, count=census.count)
    return census
