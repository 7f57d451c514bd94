"""TSPLIB-style instance and tour files, distance matrices, tour lengths.

File indices are 1-based on disk and 0-based everywhere inside the package;
the conversion happens here and only here.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class TsplibParseError(ValueError):
    """Malformed instance or tour text; the message names the offending line."""


class InvalidTourError(TsplibParseError):
    """Tour text that parses but is not a permutation of the expected cities."""


@dataclass(frozen=True)
class Instance:
    """A Euclidean city set.

    coords is an (n, 2) float array in file order; edge_weight_kind currently
    admits only the rounded 2D Euclidean metric (TSPLIB EUC_2D).
    """

    name: str
    dimension: int
    coords: np.ndarray
    edge_weight_kind: str = "EUC_2D"

    def __post_init__(self):
        if self.dimension < 2:
            raise TsplibParseError(f"dimension must be at least 2, got {self.dimension}")
        coords = np.asarray(self.coords, dtype=float)
        if coords.shape != (self.dimension, 2):
            raise TsplibParseError(
                f"coordinate array shape {coords.shape} does not match dimension {self.dimension}"
            )
        coords.setflags(write=False)  # shared read-only across concurrent runs
        object.__setattr__(self, "coords", coords)
        if self.edge_weight_kind != "EUC_2D":
            raise TsplibParseError(f"unsupported edge weight kind {self.edge_weight_kind!r}")


def parse_instance(text: str) -> Instance:
    """Parse TSPLIB instance text into an Instance.

    Requires DIMENSION, EDGE_WEIGHT_TYPE: EUC_2D and a NODE_COORD_SECTION
    with one "index x y" line per city, 1-based indices, terminated by an
    EOF keyword or the end of the text. Header keys not understood (COMMENT
    and friends) are ignored. Errors name the 1-based line number.
    """
    name = ""
    dimension: int | None = None
    weight_type: str | None = None
    coords: dict[int, tuple[float, float]] = {}
    in_coords = False
    done = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if done:
            raise TsplibParseError(f"line {lineno}: content after EOF keyword")
        if line == "EOF":
            done = True
            continue
        if not in_coords:
            if line == "NODE_COORD_SECTION":
                if dimension is None:
                    raise TsplibParseError(f"line {lineno}: NODE_COORD_SECTION before DIMENSION")
                in_coords = True
                continue
            key, _, value = line.partition(":")
            if not _:
                raise TsplibParseError(f"line {lineno}: expected 'KEY: value' header, got {line!r}")
            key = key.strip()
            value = value.strip()
            if key == "NAME":
                name = value
            elif key == "TYPE":
                if value != "TSP":
                    raise TsplibParseError(f"line {lineno}: TYPE is {value!r}, expected TSP")
            elif key == "DIMENSION":
                try:
                    dimension = int(value)
                except ValueError:
                    raise TsplibParseError(f"line {lineno}: DIMENSION is not an integer: {value!r}") from None
            elif key == "EDGE_WEIGHT_TYPE":
                weight_type = value
                if value != "EUC_2D":
                    raise TsplibParseError(f"line {lineno}: unsupported EDGE_WEIGHT_TYPE {value!r}")
            # other headers carry no information this package uses
            continue
        # coordinate line: "index x y"
        parts = line.split()
        if len(parts) != 3:
            raise TsplibParseError(f"line {lineno}: expected 'index x y', got {line!r}")
        try:
            idx = int(parts[0])
            x = float(parts[1])
            y = float(parts[2])
        except ValueError:
            raise TsplibParseError(f"line {lineno}: non-numeric coordinate line {line!r}") from None
        if not 1 <= idx <= dimension:
            raise TsplibParseError(f"line {lineno}: city index {idx} outside 1..{dimension}")
        if idx in coords:
            raise TsplibParseError(f"line {lineno}: duplicate city index {idx}")
        coords[idx] = (x, y)

    if dimension is None:
        raise TsplibParseError("missing DIMENSION header")
    if weight_type is None:
        raise TsplibParseError("missing EDGE_WEIGHT_TYPE header")
    if not in_coords:
        raise TsplibParseError("missing NODE_COORD_SECTION")
    if len(coords) != dimension:
        raise TsplibParseError(
            f"DIMENSION is {dimension} but NODE_COORD_SECTION has {len(coords)} cities"
        )
    ordered = np.array([coords[i] for i in range(1, dimension + 1)], dtype=float)
    return Instance(name=name, dimension=dimension, coords=ordered, edge_weight_kind=weight_type)


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def build_distance_matrix(inst: Instance) -> np.ndarray:
    """Pairwise distances as an (n, n) int64 array, read-only.

    Euclidean distance rounded to the nearest integer with ties going up
    (the rule under which berlin52's optimal tour measures exactly 7542).
    Symmetric with a zero diagonal by construction.
    """
    xy = inst.coords
    dx = xy[:, 0][:, None] - xy[:, 0][None, :]
    dy = xy[:, 1][:, None] - xy[:, 1][None, :]
    d = np.floor(np.sqrt(dx * dx + dy * dy) + 0.5).astype(np.int64)
    d.setflags(write=False)
    return d


def is_permutation(tour, n: int | None = None) -> bool:
    """True when tour is a permutation of 0..n-1 (n defaults to len(tour))."""
    t = np.asarray(tour)
    if t.ndim != 1 or t.size == 0 or not np.issubdtype(t.dtype, np.integer):
        return False
    size = t.size if n is None else n
    if t.size != size:
        return False
    if ((t < 0) | (t >= size)).any():
        return False
    seen = np.zeros(size, dtype=bool)
    seen[t] = True
    return bool(seen.all())


def tour_length(dm: np.ndarray, tour) -> int:
    """Length of the closed tour: consecutive hops plus the edge back home."""
    t = np.asarray(tour)
    n = dm.shape[0]
    if not is_permutation(t, n):
        raise ValueError(f"tour is not a permutation of 0..{n - 1}")
    return int(dm[t[:-1], t[1:]].sum() + dm[t[-1], t[0]])


def tour_lengths(dm: np.ndarray, tours) -> np.ndarray:
    """Closed-tour lengths for a batch, one tour per row. Rows assumed valid."""
    t = np.asarray(tours)
    return dm[t[:, :-1], t[:, 1:]].sum(axis=1) + dm[t[:, -1], t[:, 0]]


def parse_tour(text: str, dimension: int | None = None) -> np.ndarray:
    """City order from a TOUR_SECTION, converted to 0-based indices.

    The section holds 1-based indices terminated by -1. The result must be
    a permutation of 1..n where n is the declared DIMENSION header if
    present, else the number of indices read; a caller-supplied dimension
    is cross-checked against it. Violations raise InvalidTourError.
    """
    declared: int | None = None
    indices: list[int] = []
    in_tour = False
    terminated = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "EOF":
            continue
        if not in_tour:
            if line == "TOUR_SECTION":
                in_tour = True
                continue
            key, _, value = line.partition(":")
            if _ and key.strip() == "DIMENSION":
                try:
                    declared = int(value.strip())
                except ValueError:
                    raise TsplibParseError(f"line {lineno}: DIMENSION is not an integer") from None
            continue
        if terminated:
            raise TsplibParseError(f"line {lineno}: content after the -1 terminator")
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise TsplibParseError(f"line {lineno}: non-integer tour entry {token!r}") from None
            if value == -1:
                terminated = True
                break
            indices.append(value)

    if not in_tour:
        raise TsplibParseError("missing TOUR_SECTION")
    if not terminated:
        raise TsplibParseError("TOUR_SECTION not terminated by -1")

    n = declared if declared is not None else len(indices)
    if dimension is not None and n != dimension:
        raise InvalidTourError(f"tour has {n} cities, expected {dimension}")
    if len(indices) != n:
        raise InvalidTourError(f"tour lists {len(indices)} cities, expected {n}")
    seen = set()
    for value in indices:
        if not 1 <= value <= n:
            raise InvalidTourError(f"city index {value} outside 1..{n}")
        if value in seen:
            raise InvalidTourError(f"duplicate city index {value}")
        seen.add(value)
    return np.array(indices, dtype=np.int64) - 1


def load_tour(path: str | Path, dimension: int | None = None) -> np.ndarray:
    return parse_tour(Path(path).read_text(encoding="utf-8"), dimension=dimension)


def render_tour(tour, name: str = "tour") -> str:
    """TOUR_SECTION text for a 0-based city order; inverse of parse_tour."""
    t = np.asarray(tour)
    if not is_permutation(t):
        raise ValueError("cannot render a non-permutation as a tour")
    lines = [
        f"NAME: {name}",
        "TYPE: TOUR",
        f"DIMENSION: {t.size}",
        "TOUR_SECTION",
    ]
    lines.extend(str(int(city) + 1) for city in t)
    lines.append("-1")
    lines.append("EOF")
    return "\n".join(lines) + "\n"
