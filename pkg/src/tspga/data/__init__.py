"""Bundled TSPLIB fixtures.

berlin52 is the classical 52-city Berlin instance; its optimal tour has
length exactly 7542 under the rounded Euclidean metric, which doubles as a
checksum for both files.
"""

from pathlib import Path

_DATA_DIR = Path(__file__).resolve().parent

BERLIN52_TSP = _DATA_DIR / "berlin52.tsp"
BERLIN52_OPT_TOUR = _DATA_DIR / "berlin52.opt.tour"
