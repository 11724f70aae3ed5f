import json
import os
from pathlib import Path
from typing import Dict, Optional

import networkx as nx

import config


def ensure_directories() -> None:
    """Create report and graph directories if they do not exist."""
    for path in (config.OUTPUT_DIR, config.GRAPH_DIR):
        path.mkdir(parents=True, exist_ok=True)


def safe_filename(name: str) -> str:
    """Strip dangerous path parts to avoid directory traversal."""
    return os.path.basename(name)


def _target(slug: str, suffix: str, directory: Optional[Path] = None) -> Path:
    ensure_directories()
    return (directory or config.OUTPUT_DIR) / f"{safe_filename(slug)}.{suffix}"


def write_report(slug: str, content: str, suffix: str = "md") -> Path:
    """Write a text report (Markdown, HTML or plain text) under the output directory."""
    path = _target(slug, suffix)
    path.write_text(content, encoding="utf-8")
    return path


def write_json(slug: str, data: Dict, directory: Optional[Path] = None) -> Path:
    path = _target(slug, "json", directory)
    path.write_text(json_text(data), encoding="utf-8")
    return path


def json_text(data: Dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _quote(value: str) -> str:
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_text(graph: nx.MultiDiGraph, name: str = "schreier", metadata: Optional[Dict] = None) -> str:
    """DOT text with one edge per (state, generator); nodes and edges keep insertion order."""
    lines = [f"digraph {name} {{"]
    for key, value in sorted((metadata or {}).items()):
        lines.append(f"  // {key}: {value}")
    for node in graph.nodes:
        lines.append(f"  {_quote(node)};")
    for source, target, attrs in graph.edges(data=True):
        lines.append(f"  {_quote(source)} -> {_quote(target)} [label={_quote(attrs['label'])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(graph: nx.MultiDiGraph, metadata: Optional[Dict] = None) -> Dict:
    return {
        "metadata": dict(metadata or {}),
        "nodes": list(graph.nodes),
        "edges": [
            {"source": source, "target": target, "label": attrs["label"]}
            for source, target, attrs in graph.edges(data=True)
        ],
    }


def write_graph(slug: str, graph: nx.MultiDiGraph, fmt: str, metadata: Optional[Dict] = None) -> Path:
    if fmt == "dot":
        path = _target(slug, "dot", config.GRAPH_DIR)
        path.write_text(dot_text(graph, metadata=metadata), encoding="utf-8")
        return path
    if fmt == "json":
        return write_json(slug, graph_json(graph, metadata), config.GRAPH_DIR)
    raise ValueError(f"Unsupported graph format '{fmt}'")

