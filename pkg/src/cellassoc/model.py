"""Locally connected network topology and the cell-association data model.

Indices are 1-based throughout. Mobile terminal (MT) ``i`` hears base
stations (BSs) ``i-L .. i``; BS ``j`` reaches MTs ``j .. j+L``. Index sets are
``frozenset`` values; use :func:`ordered` when a canonical sequence is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

IndexSet = frozenset


class StructureError(ValueError):
    """Malformed input, as opposed to a constraint violation."""


@dataclass(frozen=True)
class NetworkConfig:
    K: int
    L: int
    Nc: int

    def __post_init__(self):
        for name in ("K", "L", "Nc"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")

    @property
    def users(self) -> range:
        return range(1, self.K + 1)


def _check_index(idx: int, cfg: NetworkConfig, what: str) -> None:
    if not 1 <= idx <= cfg.K:
        raise IndexError(f"{what} index {idx} outside [1, {cfg.K}]")


def mt_neighbors(i: int, cfg: NetworkConfig) -> IndexSet:
    """BSs heard by MT ``i``: ``{i-L, ..., i}`` clipped to ``[1, K]``."""
    _check_index(i, cfg, "MT")
    return frozenset(range(max(1, i - cfg.L), i + 1))


def bs_neighbors(j: int, cfg: NetworkConfig) -> IndexSet:
    """MTs reached by BS ``j``: ``{j, ..., j+L}`` clipped to ``[1, K]``."""
    _check_index(j, cfg, "BS")
    return frozenset(range(j, min(cfg.K, j + cfg.L) + 1))


def coverage(bss: Iterable[int], cfg: NetworkConfig) -> IndexSet:
    """Union of :func:`bs_neighbors` over a set of BSs."""
    out: set[int] = set()
    for j in bss:
        out.update(bs_neighbors(j, cfg))
    return frozenset(out)


def ordered(s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(s)))


@dataclass(frozen=True)
class CellAssociation:
    """Per-user BS sets; ``assoc[i]`` is C_i for 1-based user ``i``."""

    sets: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @classmethod
    def from_lists(cls, lists: Sequence[Iterable[int]]) -> "CellAssociation":
        return cls(tuple(frozenset(s) for s in lists))

    @classmethod
    def empty(cls, K: int) -> "CellAssociation":
        return cls((frozenset(),) * K)

    def __getitem__(self, i: int) -> frozenset:
        if i < 1:
            raise IndexError(i)
        return self.sets[i - 1]

    def __len__(self) -> int:
        return len(self.sets)

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(ordered(s) for s in self.sets)


class Violation(NamedTuple):
    user: int
    size: int
    out_of_range: tuple[int, ...]


def validate_association(assoc: CellAssociation, cfg: NetworkConfig) -> list[Violation]:
    """Return the users breaking ``|C_i| <= Nc`` or naming a BS outside ``[1, K]``.

    An empty list means the association is valid. A length mismatch is a
    :class:`StructureError`, not a violation.
    """
    if len(assoc) != cfg.K:
        raise StructureError(f"association has {len(assoc)} entries, expected K={cfg.K}")
    report = []
    for i, c in enumerate(assoc.sets, start=1):
        bad = tuple(sorted(j for j in c if not 1 <= j <= cfg.K))
        if len(c) > cfg.Nc or bad:
            report.append(Violation(i, len(c), bad))
    return report
