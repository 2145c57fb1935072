"""Text tables and matplotlib figures for analyses and accuracy metrics."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import numpy as np

from .caseframe import UtteranceAnalysis
from .corpus import InterpretationRate, Metrics
from .lexicon import ABSTRACT, BASIC

MODULE_ROWS = [
    ("BAS-SYN-DIS", "13", "14", "13", "basic"),
    ("ABS-SYN-CAT", "13", "7", "8", "abstract"),
    ("SYN-PHR-START", "13", "7", "1", "start"),
    ("Combined", "-", "-", "-", "combined"),
]


def _pct(v: float | None) -> str:
    return "-" if v is None else f"{100 * v:.1f}%"


def metrics_table(train: Metrics | None = None, test: Metrics | None = None) -> str:
    cols = [("train", train), ("test", test)]
    cols = [(name, m) for name, m in cols if m is not None]
    header = f"{'Module':<15}{'I':>4}{'H':>4}{'O':>4}" + "".join(f"{n:>9}" for n, _ in cols)
    lines = [header, "-" * len(header)]
    for name, i, h, o, attr in MODULE_ROWS:
        row = f"{name:<15}{i:>4}{h:>4}{o:>4}"
        row += "".join(f"{_pct(getattr(m, attr)):>9}" for _, m in cols)
        lines.append(row)
    words = "  ".join(f"{n}: {m.utterances} utterances, {m.words} words" for n, m in cols)
    lines.append(words)
    return "\n".join(lines)


def rate_line(rate: InterpretationRate) -> str:
    line = (f"overall interpretation: {_pct(rate.rate)} "
            f"({rate.correct}/{rate.scored} utterances)")
    if rate.skipped:
        line += f", {rate.skipped} without keep annotation skipped"
    return line


def analysis_table(analysis: UtteranceAnalysis) -> str:
    """One row per token with its tags and keep mark, then repairs and frames."""
    keep = set(analysis.surviving_positions)
    width = max([len("FAULTY/FAULT-TOLERANT UTTERANCE")] +
                [len(w.surface) for w in analysis.tagged]) + 2
    lines = [f"{'FAULTY/FAULT-TOLERANT UTTERANCE':<{width}}BAS  ABS  START  KEPT"]
    for w in analysis.tagged:
        lines.append(f"{w.surface:<{width}}{BASIC.abbrev(w.basic):<5}"
                     f"{ABSTRACT.abbrev(w.abstract):<5}{'+' if w.phrase_start else '.':<7}"
                     f"{'yes' if w.position in keep else '--'}")
    lines.append(f"interpretation: {analysis.surviving_text}")
    for r in analysis.repairs:
        kept = "" if r.kept_span is None else f" kept {r.kept_span[0]}-{r.kept_span[1]}"
        lines.append(f"repair: {r.kind.value} removed {r.removed_span[0]}-{r.removed_span[1]}"
                     f"{kept} [{', '.join(r.evidence)}]")
    for f in analysis.frames:
        parts = []
        if f.verb_group is not None:
            parts.append(f"VERB=[{f.verb_group.text}]")
        for s in f.slots:
            parts.append(f"{s.key}=[{s.group.text}]" + ("!" if s.incompatible else ""))
        lines.append(f"frame {f.index}: " + " ".join(parts))
    return "\n".join(lines)


# -- figures ---------------------------------------------------------------

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_activations(analysis: UtteranceAnalysis, path: str | Path) -> Path:
    """Square-size activation chart, one row per token.

    Filled squares mark the winning unit; kept tokens are drawn in black,
    removed tokens in grey.
    """
    plt = _pyplot()
    cols = list(BASIC.abbrevs) + list(ABSTRACT.abbrevs) + ["S"]
    n = len(analysis.tagged)
    fig, ax = plt.subplots(figsize=(0.32 * len(cols) + 2.5, 0.3 * max(n, 1) + 1.2))
    keep = set(analysis.surviving_positions)
    for row, w in enumerate(analysis.tagged):
        acts = list(w.basic_activations[: len(BASIC)]) + \
            list(w.abstract_activations[: len(ABSTRACT)]) + [w.start_activation]
        winners = {BASIC.index(w.basic), len(BASIC) + ABSTRACT.index(w.abstract)}
        if w.phrase_start:
            winners.add(len(cols) - 1)
        for col, a in enumerate(acts):
            side = 0.85 * float(np.sqrt(a))
            ax.add_patch(plt.Rectangle((col - side / 2, row - side / 2), side, side,
                                       fill=col in winners, lw=0.6,
                                       color="black" if w.position in keep else "0.6"))
    ax.set_xlim(-0.7, len(cols) - 0.3)
    ax.set_ylim(n - 0.3, -0.7)
    ax.set_xticks(range(len(cols)))
    ax.set_xticklabels(cols, fontsize=7)
    ax.set_yticks(range(n))
    ax.set_yticklabels([w.surface for w in analysis.tagged], fontsize=7)
    ax.axvline(len(BASIC) - 0.5, color="0.8", lw=0.8)
    ax.axvline(len(BASIC) + len(ABSTRACT) - 0.5, color="0.8", lw=0.8)
    ax.set_aspect("equal")
    ax.set_title(analysis.surviving_text, fontsize=7, wrap=True)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_metrics(columns: Mapping[str, Metrics], path: str | Path) -> Path:
    plt = _pyplot()
    names = [r[0] for r in MODULE_ROWS]
    x = np.arange(len(names))
    width = 0.8 / max(len(columns), 1)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    for k, (label, m) in enumerate(columns.items()):
        vals = [100 * getattr(m, r[4]) for r in MODULE_ROWS]
        bars = ax.bar(x + (k - (len(columns) - 1) / 2) * width, vals, width, label=label)
        ax.bar_label(bars, fmt="%.0f", fontsize=7)
    ax.set_xticks(x)
    ax.set_xticklabels(names, fontsize=8)
    ax.set_ylabel("correct assignments (%)")
    ax.set_ylim(0, 105)
    ax.legend(fontsize=8, loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
