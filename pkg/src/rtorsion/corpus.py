"""
Fixture corpus: JSON chain complexes shipped with the package.

Regenerate the files with ``python3 -m rtorsion.corpus``.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .chain_complex import BasedChainComplex, Ring, tensor_product
from .group_ring import GroupRingElement
from .spaces import (LensSpace, ball3_complex, interval_complex, lens_chain_complex,
                     point_complex, sphere2_complex)

LENS_PARAMS = [
    (2, (1,)), (2, (1, 1)),
    (3, (1,)), (3, (1, 1)), (3, (1, 2)), (3, (1, 1, 1)),
    (5, (1,)), (5, (1, 1)), (5, (1, 2)), (5, (1, 2, 3)),
    (7, (1,)), (7, (1, 1)), (7, (1, 2)), (7, (1, 3)), (7, (1, 2, 3)),
    (11, (1,)), (11, (1, 1)), (11, (1, 2)), (11, (1, 3)), (11, (2, 5, 7)),
]


def lens_fixture_name(p: int, q) -> str:
    return "lens_" + "_".join(str(x) for x in (p, *q))


def laurent_circle(N: int = 1) -> BasedChainComplex:
    """Equivariant ``N``-cell circle over ``Z[Z]``: ``d e_j = v_{j+1} - v_j``, the last edge wraps with ``sigma``."""
    ring = Ring("cyclic", 0)
    one = GroupRingElement.one(0)
    zero = GroupRingElement.zero(0)
    rows = [[zero] * N for _ in range(N)]
    for j in range(N):
        rows[j][j] = rows[j][j] - one
        nxt = (j + 1) % N
        rows[nxt][j] = rows[nxt][j] + (GroupRingElement.sigma(0, 1) if nxt == 0 else one)
    labels = [[f"v{j}" for j in range(N)], [f"e{j}" for j in range(N)]]
    return BasedChainComplex(ring, [N, N], [rows], labels)


def _corrupted() -> dict[str, dict]:
    return {
        # d_1 d_2 = identity
        "corrupt_d_squared": {"ring": {"type": "complex"}, "ranks": [2, 2, 2],
                              "boundaries": [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]},
        # d_1 has the wrong shape
        "corrupt_shape": {"ring": {"type": "integer"}, "ranks": [2, 1],
                          "boundaries": [[[1, 2]]]},
        # sigma^r - 1 followed by sigma - 1 over Z[Z_5]
        "corrupt_group_ring": {"ring": {"type": "cyclic", "p": 5}, "ranks": [1, 1, 1],
                               "boundaries": [[[[[-1, 0], [1, 1]]]], [[[[-1, 0], [1, 1]]]]]},
    }


def build_fixtures() -> dict[str, dict]:
    out = {}
    for p, q in LENS_PARAMS:
        out[lens_fixture_name(p, q)] = lens_chain_complex(LensSpace(p, q)).to_json()
    for N in (1, 2, 8):
        out[f"circle_{N}"] = laurent_circle(N).to_json()
    circle = laurent_circle(1)
    for name, Y in [("point", point_complex()), ("interval", interval_complex()),
                    ("sphere2", sphere2_complex()), ("ball3", ball3_complex())]:
        out[f"product_circle_{name}"] = tensor_product(circle, Y).to_json()
    out.update(_corrupted())
    return out


def fixture_dir():
    return resources.files("rtorsion") / "fixtures"


def fixture_names() -> list[str]:
    return sorted(f.name[:-5] for f in fixture_dir().iterdir() if f.name.endswith(".json"))


def load_fixture_json(name: str) -> dict:
    path = fixture_dir() / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return json.loads(path.read_text())


def load_fixture(name: str) -> BasedChainComplex:
    return BasedChainComplex.from_json(load_fixture_json(name))


def write_fixtures(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, data in build_fixtures().items():
        (directory / f"{name}.json").write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")


if __name__ == "__main__":
    write_fixtures(Path(__file__).parent / "fixtures")
