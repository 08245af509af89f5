# src/topology/serialize.py
from __future__ import annotations

from typing import Dict, List

from src.common.files import PathLike, read_text, write_text
from src.topology.types import LinkKey, LinkQuality, Position, Topology

"""
Plain-text topology format for scenario replay.

    # key=value header comments (radio_range, side, seed, requested_seed, regenerations)
    N <id> <x> <y>
    L <i> <j> <fd> <rd> <cap>        one line per undirected link, i < j

Floats are written with repr() so a load reproduces the Topology exactly.
"""

_HEADER_KEYS = ("radio_range", "side", "seed", "requested_seed", "regenerations")


def link_lines(topology: Topology) -> List[str]:
    """The L records alone, one per undirected link in key order (golden-file comparisons)."""
    out = []
    for (i, j) in topology.undirected_links():
        q = topology.link(i, j)
        out.append(f"L {i} {j} {q.fd!r} {q.rd!r} {topology.capacity(i, j)!r}")
    return out


def dumps(topology: Topology) -> str:
    lines: List[str] = [
        f"# radio_range={topology.radio_range!r}",
        f"# side={topology.side!r}",
        f"# seed={topology.seed}",
        f"# requested_seed={topology.requested_seed}",
        f"# regenerations={topology.regenerations}",
    ]
    for i, pos in enumerate(topology.positions):
        lines.append(f"N {i} {pos.x!r} {pos.y!r}")
    lines.extend(link_lines(topology))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Topology:
    header: Dict[str, str] = {}
    nodes: Dict[int, Position] = {}
    links: Dict[LinkKey, LinkQuality] = {}
    caps: Dict[LinkKey, float] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                header[k.strip()] = v.strip()
            continue
        parts = line.split()
        try:
            if parts[0] == "N" and len(parts) == 4:
                nodes[int(parts[1])] = Position(float(parts[2]), float(parts[3]))
            elif parts[0] == "L" and len(parts) == 6:
                i, j = int(parts[1]), int(parts[2])
                if i == j:
                    raise ValueError("self-link")
                q = LinkQuality(fd=float(parts[3]), rd=float(parts[4]))
                links[(i, j)] = q
                links[(j, i)] = q.swapped()
                caps[(i, j)] = caps[(j, i)] = float(parts[5])
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (ValueError, IndexError) as e:
            raise ValueError(f"topology line {lineno}: {e}: {raw!r}") from e

    if sorted(nodes) != list(range(len(nodes))):
        raise ValueError("node ids must be dense in [0, N)")
    for (i, j) in links:
        if i not in nodes or j not in nodes:
            raise ValueError(f"link ({i},{j}) references an unknown node")

    missing = [k for k in _HEADER_KEYS[:2] if k not in header]
    if missing:
        raise ValueError(f"topology header missing {missing}")

    return Topology(
        positions=tuple(nodes[i] for i in range(len(nodes))),
        links=links,
        radio_range=float(header["radio_range"]),
        side=float(header["side"]),
        capacities=caps,
        seed=int(header.get("seed", 0)),
        requested_seed=int(header.get("requested_seed", header.get("seed", 0))),
        regenerations=int(header.get("regenerations", 0)),
    )


def save_topology(topology: Topology, path: PathLike) -> None:
    write_text(path, dumps(topology))


def load_topology(path: PathLike) -> Topology:
    return loads(read_text(path))
