"""State files, report documents and graph exports.

State file layout: ``#`` comment lines followed by one JSON object, written
one amplitude per line so files diff cleanly::

    # entgraph state file
    # amplitude k multiplies |q1 q2 ... qn> where k is q1 q2 ... qn in binary (qubit 1 most significant)
    {"n_qubits": 2,
     "comment": "Bell pair",
     "amplitudes": [
      [0.707106781187, 0.0],
      [0.0, 0.0],
      [0.0, 0.0],
      [0.707106781187, 0.0]
     ]}
"""
from __future__ import annotations

import json
import re

import numpy as np

from . import __version__
from .errors import BadLengthError, EntgraphError
from .qcore import PureState, normalize
from .taxonomy import ClassReport, EntangledGraph

HEADER = (
    "# entgraph state file\n"
    "# amplitude k multiplies |q1 q2 ... qn> where k is q1 q2 ... qn in binary"
    " (qubit 1 most significant)\n"
)


class StateFileError(EntgraphError):
    """The text is not a well-formed state file (a parse error, not a bad state)."""


def num(x: float) -> float:
    """Round to 12 significant digits; never emit ``-0.0``."""
    v = float(f"{float(x):.12g}")
    return 0.0 if v == 0 else v


def _pair_str(z: complex) -> str:
    return json.dumps([num(z.real), num(z.imag)])


def write_state_file(amplitudes, comment: str | None = None) -> str:
    amps = np.asarray(amplitudes.amplitudes if isinstance(amplitudes, PureState) else amplitudes,
                      dtype=np.complex128).reshape(-1)
    n = int(amps.size).bit_length() - 1
    lines = [HEADER.rstrip("\n"), f'{{"n_qubits": {n},']
    if comment:
        lines.append(f' "comment": {json.dumps(comment, ensure_ascii=False)},')
    lines.append(' "amplitudes": [')
    body = [f"  {_pair_str(z)}" for z in amps]
    lines.append(",\n".join(body))
    lines.append(" ]}")
    return "\n".join(lines) + "\n"


def parse_state_file(text: str) -> tuple[np.ndarray, str | None]:
    """Return ``(amplitudes, comment)``.

    Raises :class:`StateFileError` on malformed text and
    :class:`BadLengthError` when the amplitude count does not fit.
    """
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"state file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "amplitudes" not in doc or "n_qubits" not in doc:
        raise StateFileError("state file needs 'n_qubits' and 'amplitudes'")
    n = doc["n_qubits"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise StateFileError("'n_qubits' must be an integer")
    try:
        amps = np.array([complex(float(re), float(im)) for re, im in doc["amplitudes"]])
    except (TypeError, ValueError):
        raise StateFileError("amplitudes must be a list of [re, im] pairs") from None
    if n not in (2, 3, 4):
        raise BadLengthError(f"n_qubits must be 2, 3 or 4, got {n}")
    if amps.size != 2 ** n:
        raise BadLengthError(f"{amps.size} amplitudes given for {n} qubits")
    comment = doc.get("comment")
    return amps, comment if isinstance(comment, str) else None


def parse_inline(text: str) -> np.ndarray:
    """Comma/space separated amplitudes, e.g. ``"1, 0, 0, 1"`` or ``"0.6 0.8j"``."""
    tokens = text.replace(",", " ").split()
    try:
        return np.array([complex(tok.replace("i", "j")) for tok in tokens])
    except ValueError:
        raise StateFileError(f"cannot parse amplitudes {text!r}") from None


def _pairs(d: dict) -> list:
    return [{"qubits": list(k), "value": num(v)} for k, v in sorted(d.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def graph_document(graph: EntangledGraph) -> dict:
    return {
        "n": graph.n,
        "edges": [{"pair": list(p), "weight": num(w)} for p, w in sorted(graph.edges.items())],
        "circles": [{"qubits": list(s), "value": num(v)} for s, v in graph.circles],
    }


def report_document(psi: PureState, report: ClassReport, edge_eps: float, purity_eps: float) -> dict:
    m = report.measures
    return {
        "tool": "entgraph",
        "version": __version__,
        "thresholds": {"edge_eps": edge_eps, "purity_eps": purity_eps},
        "input": {
            "n_qubits": psi.n_qubits,
            "amplitudes": [[num(z.real), num(z.imag)] for z in psi.amplitudes],
        },
        "label": report.label.value,
        "shape": report.shape.shape,
        "factorization": [list(b) for b in report.factorization],
        "pairwise": _pairs(m.pairwise),
        "splits": _pairs(m.splits),
        "global": num(m.global_value),
        "triples": _pairs(m.triples),
        "graph": graph_document(report.graph),
    }


_SCALAR_LIST = re.compile(r"\[\s*([^\[\]{}\"]*?)\s*\]")


def dumps(doc: dict) -> str:
    """Indented JSON with lists of plain numbers kept on one line."""
    text = json.dumps(doc, indent=2, ensure_ascii=True)
    text = _SCALAR_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"
                            if m.group(1).strip() else "[]", text)
    return text + "\n"


def _subset(s) -> str:
    return "{" + ",".join(str(q) for q in s) + "}"


def report_text(doc: dict) -> str:
    lines = [
        f"entgraph {doc['version']}  (edge_eps={doc['thresholds']['edge_eps']:g},"
        f" purity_eps={doc['thresholds']['purity_eps']:g})",
        f"qubits         {doc['input']['n_qubits']}",
        f"class          {doc['label']}",
        f"graph shape    {doc['shape']}",
        "factorization  " + " ".join(_subset(b) for b in doc["factorization"]),
        f"global         {doc['global']:.12g}",
        "pairwise concurrence:",
    ]
    lines += [f"  C{''.join(map(str, e['qubits']))}  {e['value']:.12g}" for e in doc["pairwise"]]
    lines.append("split concurrence:")
    lines += [f"  C{_subset(e['qubits'])}|rest  {e['value']:.12g}" for e in doc["splits"]]
    if doc["triples"]:
        lines.append("pure triples:")
        lines += [f"  C{''.join(map(str, e['qubits']))}  {e['value']:.12g}" for e in doc["triples"]]
    circles = doc["graph"]["circles"]
    lines.append("circles        " + (", ".join(f"{_subset(c['qubits'])}={c['value']:.12g}" for c in circles) or "none"))
    return "\n".join(lines) + "\n"


def graph_dot(graph: EntangledGraph) -> str:
    """Undirected DOT graph.

    DOT has no enclosing-circle primitive, so circles travel as a graph
    attribute ``circles="{1,2,3}=0.9428;..."`` plus a commented
    ``rank=same`` cluster per circle.
    """
    circles = ";".join(f"{_subset(s)}={v:.4f}" for s, v in graph.circles)
    out = ["graph entangled {", f'  graph [circles="{circles}"];']
    for k, (s, v) in enumerate(graph.circles):
        members = "; ".join(str(q) for q in s)
        out.append(f'  // circle {_subset(s)} value {v:.4f}: subgraph cluster_c{k} {{ rank=same; {members}; }}')
    for v in range(1, graph.n + 1):
        out.append(f'  {v} [label="{v}"];')
    for (i, j), w in sorted(graph.edges.items()):
        out.append(f'  {i} -- {j} [label="{w:.4f}", weight={w:.4f}];')
    out.append("}")
    return "\n".join(out) + "\n"
