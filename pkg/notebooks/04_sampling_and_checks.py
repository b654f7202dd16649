"""Round-trip sampling and closed-form checks, the library way.

Draw random valid parameters for a class, build the state, classify it, and
compare the numeric concurrences with the closed forms.  The CLI commands
``entgraph sample`` and ``entgraph check`` do the same at scale.

    python notebooks/04_sampling_and_checks.py
"""
from entgraph import build_representative, classify, predict, sample
from entgraph.concurrence import pair_concurrence
from entgraph.taxonomy import REPRESENTATIVE_LABELS

for label in REPRESENTATIVE_LABELS:
    ok, worst = 0, 0.0
    for k in range(50):
        spec = sample(label, [7, k])
        psi = build_representative(spec)
        ok += classify(psi).label == label
        for (i, j), value in predict(spec).pairwise.items():
            worst = max(worst, abs(pair_concurrence(psi, i, j) - value))
    print(f"{label}  {ok}/50 round trips   max |C_ij - formula| = {worst:.1e}")
