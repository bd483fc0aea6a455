"""Utilities shared by the numerical modules: errors, tolerances, stencils."""
import collections
import concurrent.futures

import numpy as np
import tqdm


class Error(RuntimeError):
    """Something about the input or the chart is wrong; give up on it.

    Subclasses add structured fields (a defect, a point, an index tuple) so
    that callers can report them without parsing the message.
    """
    def __init__(self, message, **details):
        super(Error, self).__init__(message)
        self.message = message
        self.details = details

    def __repr__(self):
        return "%s(%r, %r)" % (self.__class__.__name__, self.message,
                               self.details)

    def __str__(self):
        return self.message

    def __eq__(self, other):
        return (isinstance(other, self.__class__) and
                self.message == other.message)

    def __hash__(self):
        return hash((self.__class__.__name__, self.message))


# All numerical knobs.  Relative tolerances are multiplied by
# scale(...) at the point of use.
Tolerances = collections.namedtuple('Tolerances', [
    'tol',              # generic identity checks
    'antisymmetry',     # rejection threshold for c_ij^k + c_ji^k
    'coboundary',       # relative residual below which delta = Delta(r)
    'chart_condition',  # cond(a(g)) above which we left the chart
    'fd_step',          # base finite-difference step
    'derivative',       # Richardson-extrapolated derivative identities
    'jacobiator',       # extrapolated [P, P] defect
    'singular',         # |det K| / max|K|^n below which K is singular
    'box',              # half-width of the coordinate sampling box
])

DEFAULT_TOLERANCES = Tolerances(
    tol=1e-10, antisymmetry=1e-12, coboundary=1e-8, chart_condition=1e8,
    fd_step=1e-3, derivative=1e-8, jacobiator=1e-6, singular=1e-9, box=1.0)


def scale(*arrays):
    """1 + the largest magnitude among the inputs."""
    return 1.0 + max(float(np.max(np.abs(a))) if np.size(a) else 0.0
                     for a in arrays)


def max_defect(array):
    """Return (max |entry|, index tuple of the worst entry).

    The index is the first one in C order among ties, so reductions are
    deterministic however the array was filled.
    """
    array = np.abs(np.asarray(array, dtype=float))
    if not array.size:
        return 0.0, ()
    flat = int(np.argmax(array))
    index = np.unravel_index(flat, array.shape)
    return float(array.flat[flat]), tuple(int(i) for i in index)


def central_difference(fn, y, direction, h):
    """(fn(y + h v) - fn(y - h v)) / 2h, fn returning an array."""
    y = np.asarray(y, dtype=float)
    direction = np.asarray(direction, dtype=float)
    return (np.asarray(fn(y + h * direction)) -
            np.asarray(fn(y - h * direction))) / (2.0 * h)


def richardson(coarse, fine):
    """Extrapolate two O(h^2) estimates taken at h and h/2."""
    return (4.0 * np.asarray(fine) - np.asarray(coarse)) / 3.0


def step_for(y, h):
    """The finite-difference step scaled by the coordinate magnitude."""
    return h * (1.0 + float(np.max(np.abs(y)))) if np.size(y) else h


def sample_box(seed, count, dim, box):
    """count seeded-random points uniformly in [-box, box]^dim."""
    rng = np.random.RandomState(seed)
    return rng.uniform(-box, box, size=(count, dim))


def convergence_order(coarse, fine, floor=0.0):
    """log2 of the ratio of two successive errors (h and h/2).

    Errors at or below `floor` are rounding noise; a fine error there
    counts as converged.
    """
    if fine <= floor:
        return float('inf')
    if coarse <= 0.0:
        return 0.0
    return float(np.log2(coarse / fine))


def batch_map(fn, items, jobs=1, verbose=False, desc='Checking points'):
    """Map fn over items, in order, perhaps concurrently.

    The result list is always in input order, so a max-reduction over it
    gives the same answer as a sequential run.
    """
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with concurrent.futures.ThreadPoolExecutor(jobs) as executor:
            results = executor.map(fn, items)
            if verbose:
                results = tqdm.tqdm(results, total=len(items), desc=desc,
                                    unit=' points')
            return list(results)
    if verbose and len(items) > 1:
        items = tqdm.tqdm(items, desc=desc, unit=' points')
    return [fn(item) for item in items]


def format_float(value):
    """17 significant digits: enough to round-trip any double."""
    return '%.17g' % value
