"""Four qubits: eleven fully inseparable classes, eleven graphs.

Every simple graph on four vertices appears as the edge set of exactly one
class.  The biseparable classes instead carry a circle around the three
entangled qubits.  Writes DOT files next to this script when asked.

    python notebooks/03_four_qubit_graphs.py [--dot]
"""
import sys
from pathlib import Path

from entgraph import build_representative, classify, sample
from entgraph.formats import graph_dot

write = "--dot" in sys.argv
for label in "abcdefghijklmnopq":
    label = "2" + label
    report = classify(build_representative(sample(label, 11)))
    circles = " ".join("{" + ",".join(map(str, s)) + f"}}={v:.3f}" for s, v in report.graph.circles) or "-"
    print(f"{label}  shape {report.shape.shape:<13} edges {len(report.graph.edges)}  circles {circles}")
    if write:
        Path(__file__).with_name(f"class_{label}.dot").write_text(graph_dot(report.graph))

# the fully symmetric GHZ state: no edges, one circle
ghz = classify([1] + [0] * 14 + [1])
print(f"\nGHZ4 global concurrence {ghz.measures.global_value:.6f} = (2/3)^(3/14) = {(2 / 3) ** (3 / 14):.6f}")
