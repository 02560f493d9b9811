"""Collects one PASS/FAIL line per acceptance criterion."""

import time
from contextlib import contextmanager

LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        late = limit is not None and elapsed >= limit
        status = "PASS" if ok and not late else "FAIL"
        budget = f" / limit {limit:g}s" if limit is not None else ""
        note = " (over time)" if ok and late else ""
        line = f"{status}  [{number:>2}] {title}  {elapsed:.2f}s{budget}{note}"
        LINES.append(line)
        print(line)
    assert not late, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"
