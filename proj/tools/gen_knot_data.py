#!/usr/bin/env python3
"""Regenerate data/knots.pd and data/links.pd from the KnotInfo/LinkInfo database.

Requires the `database_knotinfo` package. Output is committed; the library never
reads the network.
"""
import json
import sys
from pathlib import Path

from database_knotinfo import link_list

KNOTS = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"] + \
    [f"7_{i}" for i in range(1, 8)] + [f"8_{i}" for i in range(1, 22)]
LINKS = ["L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1",
         "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2"]

HEADER = """\
# Oriented PD codes, one diagram per line: name PD[X(a,b,c,d), ...] [; braid k: i j -i ...]
# convention: knotinfo-ccw
#   Each X lists its four edge labels starting at the incoming under-edge and
#   proceeding counterclockwise. Strand orientation follows the under-edge
#   order at each crossing (first entry in, third entry out) and is propagated
#   along each component; a component with no under-crossing is oriented so
#   that its labels increase (wrapping from its largest label to its smallest).
# source: {source}
"""


def fmt_pd(pd):
    return "PD[" + ", ".join("X(" + ",".join(str(v) for v in x) + ")" for x in pd) + "]"


def fmt_braid(strands, letters):
    return f"{strands}: " + " ".join(str(v) for v in letters)


def main(out_dir):
    out_dir = Path(out_dir)
    knots = {k["name"]: k for k in link_list()}
    lines = [HEADER.format(source="KnotInfo pd_notation / braid_notation")]
    for name in KNOTS:
        k = knots[name]
        pd = json.loads(k["pd_notation"])
        braid = json.loads(k["braid_notation"])
        strands = max(abs(v) for v in braid) + 1
        lines.append(f"{name} {fmt_pd(pd)} ; braid {fmt_braid(strands, braid)}")
    (out_dir / "knots.pd").write_text("\n".join(lines) + "\n")

    links = {}
    for k in link_list(proper_links=True):
        base, _, orient = k["name"].partition("{")
        if base in LINKS and orient.rstrip("}").replace("0", "").replace(",", "") == "":
            links[base] = k
    lines = [HEADER.format(source="LinkInfo pd_notation_vector / braid_notation, orientation {0} or {0,0}")]
    for name in LINKS:
        k = links[name]
        pd = json.loads(k["pd_notation_vector"].replace("{", "[").replace("}", "]"))
        braid = json.loads(k["braid_notation"].replace("{", "[").replace("}", "]"))
        lines.append(f"{name} {fmt_pd(pd)} ; braid {fmt_braid(braid[0], braid[1])}")
    (out_dir / "links.pd").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
