import math
import os
from concurrent.futures import ThreadPoolExecutor


def max_workers():
    """Thread cap from ``HEATGRAPH_THREADS`` (default: CPU count, at most 8)."""
    raw = os.environ.get("HEATGRAPH_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def parallel_map(fn, items):
    """Ordered map, threaded when more than one worker is allowed."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def fmt(x):
    """Format a number with 12 significant digits, stable across runs."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def fmt_exact(x):
    """Shortest round-trip representation; integral values print without '.0'."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def parse_positive(token, what, lineno=None):
    from .errors import GraphFormatError

    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"{what} {token!r} is not a number", lineno) from None
    if not math.isfinite(value) or value <= 0:
        raise GraphFormatError(f"{what} must be positive and finite, got {token}", lineno)
    return value
