"""Uniform tensor-product grids and their text form ``name=start:stop:count``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GridSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """Tensor grid with ``counts[i]`` nodes ``origin[i] + k * spacing[i]``."""

    origin: tuple
    spacing: tuple
    counts: tuple
    names: tuple = ()

    def __post_init__(self):
        origin = tuple(float(v) for v in self.origin)
        spacing = tuple(float(v) for v in self.spacing)
        counts = tuple(int(v) for v in self.counts)
        if not (len(origin) == len(spacing) == len(counts)) or not origin:
            raise GridSpecError("origin, spacing and counts must have equal non-zero length")
        if any(not s > 0 for s in spacing):
            raise GridSpecError(f"spacing must be positive, got {spacing}")
        if any(c < 1 for c in counts):
            raise GridSpecError(f"counts must be >= 1, got {counts}")
        names = tuple(self.names) or tuple(f"x{i + 1}" for i in range(len(origin)))
        if len(names) != len(origin):
            raise GridSpecError("one name per axis required")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "names", names)

    @property
    def ndim(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    def axes(self) -> list[np.ndarray]:
        return [o + s * np.arange(c) for o, s, c in zip(self.origin, self.spacing, self.counts)]

    def points(self) -> np.ndarray:
        """All nodes as an ``(size, ndim)`` array, last axis varying fastest."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([g.ravel() for g in mesh], axis=-1)

    def to_dict(self) -> dict:
        return {"names": list(self.names), "origin": list(self.origin),
                "spacing": list(self.spacing), "counts": list(self.counts)}

    @classmethod
    def from_dict(cls, d) -> "Grid":
        return cls(d["origin"], d["spacing"], d["counts"], tuple(d.get("names", ())))


def parse_grid(spec: str) -> Grid:
    """Parse ``"x1=-2:2:41,x2=0:4:41"``; each axis is ``start:stop:count``."""
    origin, spacing, counts, names = [], [], [], []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, rng = part.partition("=")
        if not sep:
            raise GridSpecError(f"axis {part!r} is not of the form name=start:stop:count")
        fields = rng.split(":")
        if len(fields) != 3:
            raise GridSpecError(f"axis {name!r}: expected start:stop:count, got {rng!r}")
        try:
            start, stop, count = float(fields[0]), float(fields[1]), int(fields[2])
        except ValueError as exc:
            raise GridSpecError(f"axis {name!r}: {exc}") from None
        if count < 1:
            raise GridSpecError(f"axis {name!r}: count must be >= 1")
        if count == 1:
            if stop != start:
                raise GridSpecError(f"axis {name!r}: a single node needs start == stop")
            step = 1.0
        else:
            step = (stop - start) / (count - 1)
            if not step > 0:
                raise GridSpecError(f"axis {name!r}: stop must exceed start")
        names.append(name.strip())
        origin.append(start)
        spacing.append(step)
        counts.append(count)
    if not counts:
        raise GridSpecError("empty grid specification")
    return Grid(origin, spacing, counts, tuple(names))
