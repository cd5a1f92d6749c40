#!/usr/bin/env python3
"""Regenerate the problem files under fixtures/.

Coordinates mirror tests/support/fixtures.hpp; endpoints of sampled arcs
are written exactly so that touching disks stay touching.
"""
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def sampled_arc(c, r, start, stop, spacing, first, last):
    segments = math.ceil(r * (stop - start) / spacing)
    pts = [first]
    for k in range(1, segments):
        a = start + (stop - start) * k / segments
        pts.append([c[0] + r * math.cos(a), c[1] + r * math.sin(a)])
    pts.append(last)
    return pts


def polygon(k, r):
    return [[r * math.cos(2 * math.pi * i / k), r * math.sin(2 * math.pi * i / k)] for i in range(k)]


def write(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


s3 = math.sqrt(3.0)
write("trivial.json", {"epsilon": 1.0, "sets": {"A": [[0, 0]], "B": [[4, 0]]}})
write("peanut.json", {"epsilon": 1.0, "sets": {"A": [[0, 0], [1, 0]]}})
write("midway.json", {"sets": {"A": [[0, 0], [1, 0]], "B": [[7, 0], [7, 3]]}})
write("clusters.json", {"epsilon": 1.0, "sets": {"M": [[0, 0], [10, 0], [5, 9]]}})
write("unbounded_region.json",
      {"epsilon": 1.0, "sets": {"A": {"halfplane": {"normal": [0, 1], "offset": 0}}}})
(OUT / "unbounded_coordinate.json").write_text(
    '{\n  "epsilon": 1.0,\n  "sets": {"A": [[0, 0], [1e999, 0]]}\n}\n')
write("tangent_pair.json", {"epsilon": 1.0, "sets": {"A": [[0, 0], [2, 0]], "B": [[9, 0]]}})
write("ring.json", {"epsilon": 1.0, "sets": {"A": polygon(12, 3.0), "B": [[0, 0]]}})
write("bisector.json", {
    "epsilon": 1.0,
    "sets": {
        "A": sampled_arc((0, 0), 2.0, math.pi / 6, 2 * math.pi - math.pi / 6, 0.05, [s3, 1.0], [s3, -1.0]),
        "B": [[s3 - 0.125, 0.0], [s3 + 0.125, 0.0]],
    },
})
write("arc_chord.json", {
    "sets": {
        "A": [[0.0, 0.0], [s3, 0.0]],
        "B": sampled_arc((0, 0), 1.0, math.pi / 6, 2 * math.pi - math.pi / 6, 0.05, [s3 / 2, 0.5], [s3 / 2, -0.5]),
    },
})
