# coding=utf-8
import logging
import os

import numpy as np
from joblib import Parallel, delayed

logger = logging.getLogger(__name__)

NUM_THREADS_ENV = "THINFILM_NUM_THREADS"


def default_n_jobs(n_jobs=None):
    """Worker count for sweeps: explicit value, else ``THINFILM_NUM_THREADS``, else 1."""
    if n_jobs is not None:
        return n_jobs
    value = os.environ.get(NUM_THREADS_ENV)
    if value is None or value.strip() == "":
        return 1
    try:
        n_jobs = int(value)
    except ValueError:
        raise ValueError("{} must be an integer, got {!r}".format(NUM_THREADS_ENV, value))
    if n_jobs == 0:
        raise ValueError("{} must be nonzero".format(NUM_THREADS_ENV))
    return n_jobs


class SweepParallel:
    """Map ``compute`` over a list of independent parameter samples.

    Samples given as tuples are unpacked into positional arguments. With ``local=True`` (or a
    single worker) the map runs sequentially in the calling thread, otherwise it is dispatched
    through joblib. Results keep the order of ``iter_params``.
    """

    def __init__(self, compute, iter_params, constant_named_params=None, n_jobs=None, local=False,
                 backend="loky", verbose=False):
        self.compute = compute
        self.iter_params = list(iter_params)
        self.constant_params = constant_named_params
        if self.constant_params is None:
            self.constant_params = {}
        self.n_jobs = default_n_jobs(n_jobs)
        self.local = local
        self.backend = backend
        self.verbose = verbose

    def _call(self, sample):
        if isinstance(sample, tuple):
            return self.compute(*sample, **self.constant_params)
        return self.compute(sample, **self.constant_params)

    def retrieve(self, as_array=False):
        if self.local or self.n_jobs == 1:
            results = [self._call(sample) for sample in self.iter_params]
        else:
            logger.info("dispatching %d jobs on %d workers", len(self.iter_params), self.n_jobs)
            results = Parallel(n_jobs=self.n_jobs, backend=self.backend,
                               verbose=10 if self.verbose else 0)(
                delayed(self._call)(sample) for sample in self.iter_params)
        if as_array:
            return np.array(results)
        return results
