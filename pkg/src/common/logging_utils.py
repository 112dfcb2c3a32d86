# src/common/logging_utils.py

import logging
import os
from typing import Any, Optional

# Environment switches:
#   LOG_LEVEL=DEBUG / INFO / WARNING / ERROR
#   LOG_MATRICES=1 to include full matrices in stage logs
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
LOG_MATRICES = os.getenv("LOG_MATRICES", "0") == "1"


def setup_logging(level: str = LOG_LEVEL) -> None:
    """Call once at program start (cli/main.py). Logs go to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s.%(msecs)03d [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
    )


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def matrix_summary(m: Any, max_rows: int = 8) -> str:
    """Short matrix summary: '3x4 nnz=5', with rows appended when LOG_MATRICES is on."""
    shape = getattr(m, "shape", None)
    if shape is None or len(shape) != 2:
        return repr(m)
    rows, cols = shape
    nnz = sum(1 for i in range(rows) for j in range(cols) if m[i, j] != 0)
    text = f"{rows}x{cols} nnz={nnz}"
    if LOG_MATRICES:
        shown = [[int(m[i, j]) for j in range(cols)] for i in range(min(rows, max_rows))]
        text += f" rows={shown}"
        if rows > max_rows:
            text += f" ... (+{rows - max_rows} rows)"
    return text


def log_stage(
    logger: logging.Logger,
    stage: str,                   # "assemble" / "cohomology" / "orbit" ...
    subject: Optional[str] = None,
    note: str = "",
    level: int = logging.DEBUG,
    **fields: Any,
) -> None:
    """
    Unified pipeline-stage log.
    subject: short description of what is processed (poset size, interval, degree).
    fields: key=value pairs appended in sorted order.
    """
    if not logger.isEnabledFor(level):
        return
    base = f"[{stage}] {subject or '-'}"
    if fields:
        base += " | " + " ".join(f"{k}={fields[k]}" for k in sorted(fields))
    if note:
        base += f" | {note}"
    logger.log(level, base)
