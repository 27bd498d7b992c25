"""Collects one pass/fail line per acceptance criterion for the terminal summary."""
from contextlib import contextmanager

RESULTS: list[tuple[str, bool, str]] = []


@contextmanager
def criterion(name: str, detail: str = ""):
    info = {"detail": detail}
    try:
        yield info
    except BaseException:
        RESULTS.append((name, False, info["detail"]))
        print(f"FAIL {name} {info['detail']}".rstrip())
        raise
    RESULTS.append((name, True, info["detail"]))
    print(f"PASS {name} {info['detail']}".rstrip())
