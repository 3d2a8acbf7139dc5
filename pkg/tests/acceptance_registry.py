"""Shared pass/fail lines for the acceptance criteria (printed at session end)."""

RESULTS = {}


def record(num, ok, line):
    RESULTS[num] = (bool(ok), line)
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {line}")
