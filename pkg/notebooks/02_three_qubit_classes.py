"""The six three-qubit classes and their entangled graphs.

Each class has a representative with a few positive amplitudes.  The graph
has an edge wherever a two-qubit marginal is entangled and a circle when the
tripartite concurrence is nonzero.

    python notebooks/02_three_qubit_classes.py
"""
from entgraph import build_representative, classify, predict, sample

for label in ("1a", "1b", "1c", "1d", "1e", "1f"):
    spec = sample(label, 3)
    report = classify(build_representative(spec))
    pred = predict(spec)
    edges = ", ".join(f"{i}{j}:{w:.3f}" for (i, j), w in report.graph.edges.items()) or "none"
    circle = f"{report.measures.global_value:.4f}" if report.graph.circles else "-"
    print(f"{label}  got {report.label}  edges [{edges}]  circle {circle}  "
          f"(closed form C123 = {pred.global_value:.4f})")

# W and GHZ are the two extremes: all edges, or none
w = classify([0, 1, 1, 0, 1, 0, 0, 0])
ghz = classify([1, 0, 0, 0, 0, 0, 0, 1])
print(f"\nW    -> {w.label}, {len(w.graph.edges)} edges, C123 = {w.measures.global_value:.6f}")
print(f"GHZ  -> {ghz.label}, {len(ghz.graph.edges)} edges, C123 = {ghz.measures.global_value:.6f}")
