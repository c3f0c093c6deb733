#!/usr/bin/env python3
"""Convert e-ADARP archive instance files back to the classic Cordeau DARP layout.

The e-ADARP archive (ClaudiaBongiovanni/eADARP, first_set) embeds the original
Cordeau a-instances verbatim and appends electric-vehicle extras (artificial
depots, charging stations, battery data).  This strips the extras and emits the
classic format:

    K n T Q L
    id x y d q e l        (id 0 depot, 1..n pickups, n+1..2n deliveries, 2n+1 depot)

Usage: convert_eadarp.py <in_dir> <out_dir>
       (picks up *-0.7.txt, writes <name>.txt)
"""
import json
import pathlib
import re
import sys


def convert(src: pathlib.Path, dst: pathlib.Path) -> None:
    lines = [ln.split() for ln in src.read_text().splitlines() if ln.strip()]
    hdr = lines[0]
    k, n, horizon = int(hdr[0]), int(hdr[1]), int(hdr[6])

    # node rows follow the header: ids count up from 1, seven fields each
    nodes = {}
    row = 1
    while row < len(lines) and len(lines[row]) == 7 and lines[row][0] == str(row):
        f = lines[row]
        nodes[row] = (f[1], f[2], int(f[3]), int(f[4]), int(f[5]), int(f[6]))
        row += 1

    # footer (fixed order): origin id, dest id, artificial origins, artificial
    # dests, stations, ride times, capacities, ... (battery data ignored)
    foot = lines[row:]
    origin_id = int(foot[0][0])
    ride_times = {int(v) for v in foot[5]}
    caps = {int(v) for v in foot[6]}
    if len(foot[5]) != n or len(foot[6]) != k:
        raise SystemExit(f"{src}: footer shape mismatch")
    if len(ride_times) != 1 or len(caps) != 1:
        raise SystemExit(f"{src}: non-uniform ride time or capacity")
    ride, cap = ride_times.pop(), caps.pop()

    dep = nodes[origin_id]
    out = [f"{k} {n} {horizon} {cap} {ride}"]

    def fmt(i, node):
        x, y, d, q, e, l = node
        return f"{i:3d} {float(x):8.3f} {float(y):8.3f} {d:3d} {q:3d} {e:4d} {l:4d}"

    out.append(fmt(0, dep))
    for i in range(1, 2 * n + 1):
        out.append(fmt(i, nodes[i]))
    out.append(fmt(2 * n + 1, dep))
    dst.write_text("\n".join(out) + "\n")


def main() -> None:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        sys.exit(2)
    in_dir, out_dir = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    out_dir.mkdir(parents=True, exist_ok=True)
    for src in sorted(in_dir.glob("*-0.7.txt")):
        name = re.sub(r"-0\.7$", "", src.stem)
        convert(src, out_dir / f"{name}.txt")
        print(f"wrote {out_dir / (name + '.txt')}")


if __name__ == "__main__":
    main()
