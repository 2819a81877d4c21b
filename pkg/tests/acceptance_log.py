"""Collects one line per acceptance criterion for the terminal summary."""

LINES: dict[int, str] = {}


def record(number: int, title: str, checks: list[tuple[str, bool]]) -> bool:
    ok = all(passed for _, passed in checks)
    detail = "; ".join(f"{name}{'' if passed else ' [x]'}" for name, passed in checks)
    LINES[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: {detail}"
    print(LINES[number])
    return ok
