import numbers

import numpy as np
from sklearn.utils import check_array


def check_values(values, n=None, name="values"):
    """Validate nodal samples of a periodic field.

    Returns a float64, one-dimensional, finite copy of ``values``. ``n`` optionally fixes the
    expected number of nodes.
    """
    values = check_array(np.atleast_1d(np.asarray(values, dtype=float)), ensure_2d=False,
                         dtype=np.float64, copy=True, input_name=name)
    if values.ndim != 1:
        raise ValueError("{} must be one-dimensional".format(name))
    if n is not None and values.shape[0] != n:
        raise ValueError("{} has {} samples, grid has {} nodes".format(name, values.shape[0], n))
    return values


def check_plane_values(values, shape=None, name="values"):
    values = check_array(values, ensure_2d=True, dtype=np.float64, copy=True, input_name=name)
    if shape is not None and values.shape != tuple(shape):
        raise ValueError("{} has shape {}, expected {}".format(name, values.shape, tuple(shape)))
    return values


def check_positive(value, name, strict=True):
    if not isinstance(value, numbers.Real) or isinstance(value, bool) or not np.isfinite(value):
        raise ValueError("{} must be a finite real number, got {!r}".format(name, value))
    if strict and value <= 0:
        raise ValueError("{} must be > 0, got {!r}".format(name, value))
    if not strict and value < 0:
        raise ValueError("{} must be >= 0, got {!r}".format(name, value))
    return float(value)


def check_integer(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (numbers.Integral, np.integer)):
        if isinstance(value, numbers.Real) and float(value).is_integer():
            value = int(value)
        else:
            raise ValueError("{} must be an integer, got {!r}".format(name, value))
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError("{} must be >= {}, got {}".format(name, minimum, value))
    return value


def check_geometric(values, minimum=4, name="eps_list"):
    """Check a sequence is a geometric progression of at least ``minimum`` positive entries."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < minimum:
        raise ValueError("{} needs at least {} values".format(name, minimum))
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise ValueError("{} must be positive".format(name))
    ratios = values[1:] / values[:-1]
    if not np.allclose(ratios, ratios[0], rtol=1e-9, atol=0.0) or ratios[0] == 1.0:
        raise ValueError("{} must be a geometric progression".format(name))
    return values
