import numpy as np


def loglog_slope(x, y):
    """Least-squares slope of ``log|y|`` against ``log x``.

    Returns ``(slope, n_used)``; entries with ``y == 0`` or non-finite ``y`` are skipped.
    """
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    mask = np.isfinite(y) & (y > 0) & (x > 0)
    n_used = int(np.count_nonzero(mask))
    if n_used < 2:
        return np.nan, n_used
    slope, _ = np.polyfit(np.log(x[mask]), np.log(y[mask]), 1)
    return float(slope), n_used


def observed_orders(errors, ratio=2.0):
    """Convergence orders between consecutive refinement levels."""
    errors = np.asarray(errors, dtype=float)
    return np.log(errors[:-1] / errors[1:]) / np.log(ratio)


def self_convergence_errors(solutions, norm=np.inf):
    """Differences ``||u_k - u_{k+1}||`` of a sequence of successively refined solutions."""
    return np.array([np.linalg.norm(solutions[i] - solutions[i + 1], ord=norm)
                     for i in range(len(solutions) - 1)])


def relative_change(a, b, floor=0.0):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(a), floor)
    with np.errstate(divide="ignore", invalid="ignore"):
        change = np.where(scale > 0, np.abs(a - b) / scale, np.abs(a - b))
    return change
