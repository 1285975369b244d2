"""Figure and delimited-file rendering for CLI reports.

Every report writer takes an output directory and returns the list of files
it created. Figures are matplotlib PNGs with deterministic layouts (seeded
spring embeddings); tabular data goes to CSV next to them.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .polygon import FlipGraph
from .quiver import Quiver
from .seed import ExchangeGraph
from .ysystem import YSystemState


def _graph_figure(edges, n_vertices: int, path: Path, title: str) -> None:
    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    g.add_edges_from(edges)
    pos = nx.spring_layout(g, seed=7)
    fig, ax = plt.subplots(figsize=(7, 7))
    nx.draw_networkx(g, pos=pos, ax=ax, node_size=220, font_size=7,
                     node_color="#a6cee3", edge_color="#555555")
    ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _edges_csv(edges, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source", "target"])
        for i, j in sorted(edges):
            writer.writerow([i, j])


def render_exchange_graph(graph: ExchangeGraph, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig_path = outdir / "exchange_graph.png"
    csv_path = outdir / "exchange_graph.csv"
    vert_path = outdir / "exchange_graph_vertices.csv"
    _graph_figure(graph.edges, graph.n_vertices, fig_path,
                  f"exchange graph: {graph.n_vertices} seeds")
    _edges_csv(graph.edges, csv_path)
    with open(vert_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "cluster"])
        for i, seed in enumerate(graph.seeds):
            writer.writerow([i, "; ".join(r.render() for r in seed.cluster)])
    return [fig_path, csv_path, vert_path]


def render_flip_graph(graph: FlipGraph, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig_path = outdir / "flip_graph.png"
    csv_path = outdir / "flip_graph.csv"
    _graph_figure(graph.edges, graph.n_vertices, fig_path,
                  f"flip graph of the {graph.d}-gon")
    _edges_csv(graph.edges, csv_path)
    return [fig_path, csv_path]


def render_quiver(quiver: Quiver, outdir: str | Path, name: str = "quiver") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig_path = outdir / f"{name}.png"
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(1, quiver.m + 1))
    for (s, t), mult in quiver.arrows.items():
        g.add_edge(s, t, mult=mult)
    pos = nx.spring_layout(g, seed=7)
    fig, ax = plt.subplots(figsize=(6, 6))
    mutable = [v for v in g.nodes if not quiver.is_frozen(v)]
    frozen = [v for v in g.nodes if quiver.is_frozen(v)]
    nx.draw_networkx_nodes(g, pos, nodelist=mutable, node_color="#888888",
                           node_size=300, ax=ax)
    # frozen vertices drawn hollow, matching the usual picture convention
    nx.draw_networkx_nodes(g, pos, nodelist=frozen, node_color="white",
                           edgecolors="black", node_shape="s", node_size=300, ax=ax)
    nx.draw_networkx_labels(g, pos, font_size=8, ax=ax)
    nx.draw_networkx_edges(g, pos, ax=ax, connectionstyle="arc3,rad=0.08")
    labels = {(s, t): m for (s, t), m in quiver.arrows.items() if m > 1}
    if labels:
        nx.draw_networkx_edge_labels(
            g, pos, edge_labels=labels, font_size=7, ax=ax
        )
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(fig_path, dpi=150)
    plt.close(fig)
    return [fig_path]


def render_y_trace(state: YSystemState, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "y_trace.csv"
    fig_path = outdir / "y_trace.png"
    rows = state.trace_rows()
    labels = [str(v) for v in state.variant.vertices]
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + labels)
        for t, values in rows:
            writer.writerow([t] + values)
    # complexity profile: total number of terms of each value over time
    fig, ax = plt.subplots(figsize=(7, 4))
    times = [t for t, _ in rows]
    for idx, label in enumerate(labels):
        sizes = [
            len(state.steps[t][idx].num.terms) + len(state.steps[t][idx].den.terms)
            for t in times
        ]
        ax.plot(times, sizes, marker="o", markersize=3, label=f"Y_{label}")
    ax.set_xlabel("t")
    ax.set_ylabel("terms in numerator + denominator")
    ax.set_title(f"Y-system complexity profile: {state.variant.name}")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(fig_path, dpi=150)
    plt.close(fig)
    return [csv_path, fig_path]
