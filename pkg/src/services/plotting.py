"""SVG-график кривых отложения."""

import re
from collections.abc import Sequence
from pathlib import Path

import matplotlib as mpl
import pandas as pd
from matplotlib.figure import Figure

from src.config import logger
from src.shared.errors import ArtifactIOError
from src.storage.artifacts import read_curves

mpl.use("Agg")

# Фиксированная соль и отсутствие даты дают побайтно одинаковый SVG
_SVG_RC = {
    "svg.hashsalt": "cascadelab",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def _slug(text: str) -> str:
    return re.sub(r"[^0-9A-Za-z_.-]+", "-", text).strip("-") or "curve"


def _line_labels(frames: Sequence[tuple[str, pd.DataFrame]]) -> list[tuple[str, pd.DataFrame]]:
    """Одна линия на (файл, правило, зерно); лишние части подписи опускаются."""
    many_files = len(frames) > 1
    lines = []
    for source, frame in frames:
        many_seeds = frame["seed"].nunique() > 1
        for (rule, seed), group in frame.groupby(["rule", "seed"], sort=False):
            label = str(rule)
            if many_seeds:
                label += f" (seed {seed})"
            if many_files:
                label = f"{source}: {label}"
            lines.append((label, group.sort_values("deferral_rate", kind="stable")))
    return lines


def render_curves_svg(
    frames: Sequence[tuple[str, pd.DataFrame]],
    out_path: str | Path,
    title: str = "",
) -> Path:
    """Точность против доли отложения; линия i получает gid curve-{i}-{подпись}."""
    lines = _line_labels(frames)
    if not lines:
        msg = "нет кривых для графика"
        raise ArtifactIOError(msg)

    with mpl.rc_context(_SVG_RC):
        fig = Figure(figsize=(7.0, 5.0))
        ax = fig.add_subplot()
        for i, (label, group) in enumerate(lines):
            (line,) = ax.plot(group["deferral_rate"].to_numpy(), group["accuracy"].to_numpy(), label=label)
            line.set_gid(f"curve-{i}-{_slug(label)}")
        ax.set_xlabel("Доля отложенных примеров")
        ax.set_ylabel("Точность")
        ax.set_xlim(0.0, 1.0)
        ax.grid(visible=True, alpha=0.3)
        ax.legend(loc="lower right", fontsize="small")
        if title:
            ax.set_title(title)

        out_path = Path(out_path)
        try:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        except OSError as e:
            msg = f"не удалось записать график {out_path}: {e}"
            raise ArtifactIOError(msg) from e
    logger.debug(f"График {out_path}: {len(lines)} линий")
    return out_path


def emit_plot(csv_paths: Sequence[str | Path], out_path: str | Path, title: str = "") -> Path:
    """Прочитать CSV кривых и нарисовать их в одном SVG."""
    if not csv_paths:
        msg = "нужен хотя бы один CSV с кривыми"
        raise ArtifactIOError(msg)
    frames = []
    for path in csv_paths:
        path = Path(path)
        frames.append((path.parent.name or path.stem, read_curves(path)))
    return render_curves_svg(frames, out_path, title)
