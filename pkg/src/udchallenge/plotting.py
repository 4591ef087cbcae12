"""Matplotlib figures written next to the TSV outputs."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .confusion import row_percentages  # noqa: E402


def _save(fig, path):
    # fixed metadata keeps PNG bytes stable across runs
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)


def plot_confusion(m, path, mode="percent", hotspot_cells=(), title=None):
    """Heatmap of a confusion matrix, source labels as rows.

    Cells listed in ``hotspot_cells`` get an orange frame.
    """
    pct = row_percentages(m)
    rows, cols = m.source_labels, m.target_labels
    if mode == "counts":
        values = [[m.count(s, t) for t in cols] for s in rows]
    else:
        values = [[pct[(s, t)] for t in cols] for s in rows]

    fig, ax = plt.subplots(figsize=(0.45 * len(cols) + 2.5, 0.4 * len(rows) + 2))
    image = ax.imshow(values, cmap="Blues", aspect="auto")
    ax.set_xticks(range(len(cols)))
    ax.set_xticklabels(cols, rotation=90, fontsize=8)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(rows, fontsize=8)
    ax.set_xlabel("target")
    ax.set_ylabel("source")
    for i, s in enumerate(rows):
        for j, t in enumerate(cols):
            v = values[i][j]
            if v:
                ax.text(j, i, f"{v:.1f}" if mode != "counts" else str(v),
                        ha="center", va="center", fontsize=6)
    for s, t in hotspot_cells:
        if s in rows and t in cols:
            ax.add_patch(plt.Rectangle((cols.index(t) - 0.5, rows.index(s) - 0.5), 1, 1,
                                       fill=False, edgecolor="orange", linewidth=2))
    fig.colorbar(image, ax=ax, label="% of source row" if mode != "counts" else "count")
    ax.set_title(title or f"{m.spec.dimension.value} confusion ({mode})")
    _save(fig, path)


def plot_report(report, path, title="Challenge-set BLEU vs baseline"):
    names = [r.rule_name for r in report.rows]
    means = [r.mean_bleu or 0.0 for r in report.rows]
    colors = ["tab:red" if r.verdict == "challenging" else "tab:gray" for r in report.rows]

    fig, ax = plt.subplots(figsize=(max(4, 0.8 * len(names) + 2), 3.5))
    ax.bar(range(len(names)), means, color=colors)
    ax.axhline(report.baseline_mean, color="black", linestyle="--", linewidth=1,
               label=f"baseline {report.baseline_mean:.3f} (n={report.baseline_count})")
    for i, r in enumerate(report.rows):
        ax.text(i, means[i], f"n={r.sentence_count}", ha="center", va="bottom", fontsize=7)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("mean sentence BLEU")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    _save(fig, path)
