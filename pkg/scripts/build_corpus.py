#!/usr/bin/env python3
"""Regenerate the bundled corpus under src/qeffectus/corpus/.

Deterministic by construction: every file is derived from explicit
classical data (complete graphs, cycles, two fixed 3-colorings of the
5-cycle) through the package's own constructors, then serialized
canonically.  Run from anywhere; paths resolve relative to this file.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qeffectus import (
    StructureMap,
    block_diagonal_qhom,
    complete_graph,
    cycle_graph,
    is_homomorphism,
    qhom_from_classical,
    strategy_from_functions,
    strategy_from_qhom,
    verify_perfect_strategy,
    verify_quantum_homomorphism,
)
from qeffectus.fileio import (
    canonical_dumps,
    map_to_doc,
    qhom_to_doc,
    strategy_to_doc,
    structure_to_doc,
)

CORPUS = pathlib.Path(__file__).resolve().parents[1] / "src" / "qeffectus" / "corpus"


def write(name: str, doc: dict) -> None:
    path = CORPUS / name
    path.write_text(canonical_dumps(doc))
    print(f"wrote {path.relative_to(CORPUS.parents[2])}")


def main() -> int:
    CORPUS.mkdir(parents=True, exist_ok=True)

    for n in range(1, 8):
        write(f"k{n}.json", structure_to_doc(complete_graph(n)))
    for n in range(3, 8):
        write(f"c{n}.json", structure_to_doc(cycle_graph(n)))

    c5 = cycle_graph(5)
    k3 = complete_graph(3)
    f = StructureMap(
        c5, k3, {"v1": "v1", "v2": "v2", "v3": "v1", "v4": "v2", "v5": "v3"}
    )
    g = StructureMap(
        c5, k3, {"v1": "v2", "v2": "v3", "v3": "v2", "v4": "v3", "v5": "v1"}
    )
    assert is_homomorphism(f) and is_homomorphism(g)
    write("c5_to_k3_hom.json", map_to_doc(f))

    q1 = qhom_from_classical(f, 1)
    assert verify_quantum_homomorphism(q1)
    write("c5_to_k3_qhom_d1.json", qhom_to_doc(q1))

    q2 = block_diagonal_qhom([f, g])
    assert verify_quantum_homomorphism(q2)
    write("c5_to_k3_qhom_d2.json", qhom_to_doc(q2))

    s1 = strategy_from_qhom(q1)
    assert verify_perfect_strategy(s1)
    write("c5_to_k3_strategy_d1.json", strategy_to_doc(s1))

    s2 = strategy_from_qhom(q2)
    assert verify_perfect_strategy(s2)
    write("c5_to_k3_strategy_d2.json", strategy_to_doc(s2))

    k2, k1 = complete_graph(2), complete_graph(1)
    losing = strategy_from_functions(k2, k1, {"v1": "v1", "v2": "v1"})
    write("k2_to_k1_strategy.json", strategy_to_doc(losing))

    questions = {
        f"{v1}|{v2}": 0.25 for v1 in k2.universe for v2 in k2.universe
    }
    write("k2_questions_uniform.json", questions)
    return 0


if __name__ == "__main__":
    sys.exit(main())
