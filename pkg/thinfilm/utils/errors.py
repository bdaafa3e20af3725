class ThinFilmError(Exception):
    pass


class ConfigError(ThinFilmError, ValueError):
    """Malformed or incomplete run configuration.

    Parameters
    ----------
    message : str
        What is wrong.

    source : str, optional
        File the configuration was read from.

    line : int, optional
        One-based line number the problem refers to.
    """

    def __init__(self, message, source=None, line=None):
        self.message = message
        self.source = source
        self.line = line
        super(ConfigError, self).__init__(self._format())

    def _format(self):
        if self.source is not None and self.line is not None:
            return "{}:{}: {}".format(self.source, self.line, self.message)
        if self.source is not None:
            return "{}: {}".format(self.source, self.message)
        return self.message


class PositivityViolation(ThinFilmError):
    """The film height dropped to or below the positivity floor.

    Attributes
    ----------
    node : int
        Index of the offending grid node.

    x : float
        Position of that node.

    t : float
        Time level of the rejected state.

    value : float
        Height at the node (may be NaN when the step produced non-finite values).

    last_good_time : float or None
        Time of the last accepted state, filled in by the run loop.
    """

    def __init__(self, node, x, t, value, floor):
        self.node = node
        self.x = x
        self.t = t
        self.value = value
        self.floor = floor
        self.last_good_time = None
        super(PositivityViolation, self).__init__(
            "min h = {:.6g} <= h_floor = {:.3g} at node {} (x = {:.6g}), t = {:.10g}".format(
                value, floor, node, x, t))


class InnerSolverDivergence(ThinFilmError):
    """An inner iteration (GMRES or the lagged-coefficient loop) did not converge."""

    def __init__(self, what, iterations, residual):
        self.what = what
        self.iterations = iterations
        self.residual = residual
        super(InnerSolverDivergence, self).__init__(
            "{} did not converge in {} iterations (residual {:.3e})".format(what, iterations, residual))


class UnrecoverableStep(ThinFilmError):
    """The adaptive step controller gave up.

    Attributes
    ----------
    dump : dict
        Diagnostics at the moment of failure (time, rejected dt, last error, last records).

    last_good_time : float
        Time of the last accepted state.
    """

    def __init__(self, message, dump=None, last_good_time=None):
        self.dump = dump if dump is not None else {}
        self.last_good_time = last_good_time
        super(UnrecoverableStep, self).__init__(message)


class DegenerateFitError(ThinFilmError, ValueError):
    pass


class InsufficientResolution(ThinFilmError):
    pass


class MissingRateError(ThinFilmError, ValueError):
    pass
