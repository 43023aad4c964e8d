"""Edge-list ingestion, matching/permutation files and pair directories.

Edge-list grammar: blank lines and lines starting with ``#`` are skipped;
every other row holds two node labels followed by optional numeric columns,
separated by whitespace (``whitespace`` format) or commas (``csv`` format).
The comment ``# nodes: N`` declares integer labels ``0..N-1`` up front, which
lets files written from internal ids keep isolated nodes and node order.
"""

from __future__ import annotations

import csv
import json
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph, GraphInputError, build_graph
from .synth import GraphPair

FORMATS = ("whitespace", "csv")
_NODES_DIRECTIVE = re.compile(r"^#\s*nodes:\s*(\d+)\s*$")


class ParseError(GraphInputError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


class LabelMap:
    """Bijection between external labels (strings) and dense node ids."""

    def __init__(self, labels=()):
        self.labels: list[str] = []
        self._index: dict[str, int] = {}
        for lab in labels:
            self.add(lab)

    def add(self, label) -> int:
        label = str(label)
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.labels)
            self._index[label] = idx
            self.labels.append(label)
        return idx

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphInputError(f"unknown node label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return str(label) in self._index

    @classmethod
    def identity(cls, n: int) -> "LabelMap":
        return cls(str(i) for i in range(n))


@dataclass(frozen=True)
class EdgeRecord:
    source: str
    target: str
    weight: float | None = None
    extra: tuple = field(default=())


def _split(line: str, fmt: str) -> list[str]:
    if fmt == "whitespace":
        return line.split()
    if fmt == "csv":
        return [f.strip() for f in line.split(",")]
    raise GraphInputError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_edge_records(path, fmt: str = "whitespace") -> tuple[list[EdgeRecord], int | None]:
    """Parse ``path`` into edge records.

    Returns the records and the declared node count (``None`` without a
    ``# nodes:`` directive).
    """
    if fmt not in FORMATS:
        raise GraphInputError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    records = []
    declared = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = _NODES_DIRECTIVE.match(line)
                if m:
                    declared = int(m.group(1))
                continue
            fields = _split(line, fmt)
            if len(fields) < 2 or not fields[0] or not fields[1]:
                raise ParseError(path, lineno, f"expected two node labels, got {line!r}")
            try:
                extra = tuple(float(f) for f in fields[2:])
            except ValueError:
                raise ParseError(path, lineno, f"non-numeric extra column in {line!r}") from None
            weight = extra[0] if extra else None
            records.append(EdgeRecord(fields[0], fields[1], weight, extra[1:]))
    if not records and not declared:
        raise GraphInputError(f"{path}: no edges found")
    return records, declared


def filter_positive(records: list[EdgeRecord]) -> list[EdgeRecord]:
    """Keep records whose weight is strictly positive."""
    out = []
    for r in records:
        if r.weight is None:
            raise GraphInputError(f"edge {r.source}-{r.target} has no weight column")
        if r.weight > 0:
            out.append(r)
    return out


def records_to_graph(
    records: list[EdgeRecord],
    num_nodes: int | None = None,
    directed_to_undirected: bool = True,
) -> tuple[Graph, LabelMap]:
    """Densify labels in first-appearance order and build the graph.

    With ``directed_to_undirected=False`` the records must already be an
    undirected list, and a reversed duplicate ``(b, a)`` of ``(a, b)`` is an
    error instead of being merged.
    """
    labels = LabelMap.identity(num_nodes) if num_nodes else LabelMap()
    pairs = np.empty((len(records), 2), dtype=np.int64)
    for k, r in enumerate(records):
        pairs[k, 0] = labels.add(r.source)
        pairs[k, 1] = labels.add(r.target)
    if not directed_to_undirected and len(pairs):
        fwd = {(int(a), int(b)) for a, b in pairs if a != b}
        rev = [(a, b) for a, b in fwd if a < b and (b, a) in fwd]
        if rev:
            a, b = rev[0]
            raise GraphInputError(
                f"reciprocal edges {labels.label(a)}-{labels.label(b)} in undirected input"
            )
    return build_graph(len(labels), pairs), labels


def read_edge_list(
    path,
    fmt: str = "whitespace",
    directed_to_undirected: bool = True,
    positive_only: bool = False,
) -> tuple[Graph, LabelMap]:
    records, declared = read_edge_records(path, fmt)
    if positive_only:
        records = filter_positive(records)
    return records_to_graph(records, declared, directed_to_undirected)


def write_edge_list(path, g: Graph) -> None:
    """Whitespace edge list over internal ids, with a ``# nodes:`` directive."""
    lines = [f"# nodes: {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges().tolist())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _label_key(label: str):
    # integers in numeric order, before any non-integer labels
    return (0, int(label), "") if re.fullmatch(r"-?\d+", label) else (1, 0, label)


def write_matching(path, pi_hat, labels_a: LabelMap | None = None, labels_b: LabelMap | None = None) -> None:
    """Write ``label_a<TAB>label_b`` rows sorted by ``label_a``."""
    pi = np.asarray(getattr(pi_hat, "pi_hat", pi_hat))
    labels_a = labels_a or LabelMap.identity(pi.size)
    labels_b = labels_b or LabelMap.identity(pi.size)
    rows = sorted(
        ((labels_a.label(i), labels_b.label(int(j))) for i, j in enumerate(pi)),
        key=lambda r: _label_key(r[0]),
    )
    Path(path).write_text("".join(f"{a}\t{b}\n" for a, b in rows), encoding="utf-8")


def read_permutation(path, labels_a: LabelMap | None = None, labels_b: LabelMap | None = None) -> np.ndarray:
    """Inverse of :func:`write_matching`; the file must describe a bijection."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ParseError(path, lineno, f"expected two columns, got {line!r}")
            pairs.append(fields)
    n = len(labels_a) if labels_a is not None else len(pairs)
    labels_a = labels_a or LabelMap.identity(n)
    labels_b = labels_b or LabelMap.identity(n)
    if len(pairs) != n or len(labels_b) != n:
        raise GraphInputError(
            f"{path}: {len(pairs)} rows for graphs of {n} and {len(labels_b)} nodes"
        )
    perm = np.full(n, -1, dtype=np.int64)
    for a, b in pairs:
        i = labels_a.index(a)
        if perm[i] != -1:
            raise GraphInputError(f"{path}: label {a!r} mapped twice")
        perm[i] = labels_b.index(b)
    if np.unique(perm).size != n:
        raise GraphInputError(f"{path}: mapping is not a bijection")
    return perm


def write_pair(directory, pair: GraphPair) -> None:
    """Write ``a.edges``, ``b.edges``, ``truth.perm`` and ``meta.json``."""
    d = Path(directory)
    try:
        d.mkdir(parents=True, exist_ok=True)
        write_edge_list(d / "a.edges", pair.g_a)
        write_edge_list(d / "b.edges", pair.g_b)
        write_matching(d / "truth.perm", pair.truth)
        (d / "meta.json").write_text(
            json.dumps(pair.meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise OSError(f"cannot write pair to {d}: {exc}") from exc


def read_pair(directory) -> GraphPair:
    d = Path(directory)
    g_a, _ = read_edge_list(d / "a.edges")
    g_b, _ = read_edge_list(d / "b.edges")
    truth = read_permutation(d / "truth.perm", LabelMap.identity(g_a.n), LabelMap.identity(g_b.n))
    meta_path = d / "meta.json"
    meta = json.loads(meta_path.read_text(encoding="utf-8")) if meta_path.exists() else {}
    return GraphPair(g_a, g_b, truth, meta)


def write_features(path, features: np.ndarray, labels: LabelMap | None = None) -> None:
    """Debug dump: one CSV row per node, label first."""
    labels = labels or LabelMap.identity(len(features))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["node"] + [f"f{k}" for k in range(features.shape[1])])
        for i, row in enumerate(features.tolist()):
            w.writerow([labels.label(i)] + row)


def write_csv(path, header: list[str], rows: list) -> None:
    """Write a complete CSV (header first) to ``path``, or stdout for ``None``/``-``."""
    if path in (None, "-"):
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    os.replace(tmp, path)
