#!/usr/bin/env python3
"""Writes a seeded 32x32 grid with 10% random obstacles and 25 random
scenario files in the movingai MAPF benchmark formats.

The published random-32-32-10 files are not vendored here; this generator
produces a stand-in with the same size, density and file layout. Optimal
lengths are exact 4-connected BFS distances.
"""

import argparse
import collections
import pathlib
import random

WIDTH = HEIGHT = 32
BLOCKED_FRACTION = 0.10
ENTRIES_PER_SCEN = 500
NUM_SCENARIOS = 25


def neighbors(cell, free):
    r, c = cell
    for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
        if (nr, nc) in free:
            yield nr, nc


def bfs(source, free):
    dist = {source: 0}
    queue = collections.deque([source])
    while queue:
        u = queue.popleft()
        for v in neighbors(u, free):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def make_map(rng):
    cells = [(r, c) for r in range(HEIGHT) for c in range(WIDTH)]
    blocked = set(rng.sample(cells, round(BLOCKED_FRACTION * WIDTH * HEIGHT)))
    free = {cell for cell in cells if cell not in blocked}
    # Scenario endpoints are drawn from the largest connected component.
    best = set()
    seen = set()
    for cell in sorted(free):
        if cell in seen:
            continue
        comp = set(bfs(cell, free))
        seen |= comp
        if len(comp) > len(best):
            best = comp
    return blocked, free, best


def write_map(path, blocked):
    lines = ["type octile", f"height {HEIGHT}", f"width {WIDTH}", "map"]
    for r in range(HEIGHT):
        lines.append("".join("@" if (r, c) in blocked else "." for c in range(WIDTH)))
    path.write_text("\n".join(lines) + "\n")


def write_scen(path, map_name, free, component, rng):
    cells = sorted(component)
    starts = rng.sample(cells, ENTRIES_PER_SCEN)
    goals = rng.sample(cells, ENTRIES_PER_SCEN)
    lines = ["version 1"]
    for (sr, sc), (gr, gc) in zip(starts, goals):
        d = bfs((gr, gc), free)[(sr, sc)]
        lines.append(f"{d // 4}\t{map_name}\t{WIDTH}\t{HEIGHT}\t{sc}\t{sr}\t{gc}\t{gr}\t{d:.8f}")
    path.write_text("\n".join(lines) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--seed", type=int, default=32321010)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    blocked, free, component = make_map(rng)
    map_name = "random-32-32-10.map"
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "scen").mkdir(exist_ok=True)
    write_map(args.out / map_name, blocked)
    for k in range(1, NUM_SCENARIOS + 1):
        write_scen(args.out / "scen" / f"random-32-32-10-random-{k}.scen", map_name, free, component, rng)
    print(f"{len(free)} free cells, largest component {len(component)}")


if __name__ == "__main__":
    main()
