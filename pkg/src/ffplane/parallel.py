"""Worker-count policy: FFPLANE_THREADS caps parallelism (0/unset = auto)."""

import os


def thread_budget() -> int:
    raw = os.environ.get("FFPLANE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        return os.cpu_count() or 1
    return n
