"""Matrix Market file I/O for the command-line tools.

Thin wrappers over :mod:`scipy.io`: read any coordinate or array Matrix
Market file into a dense matrix, write dense matrices in array format at
full double precision so that write/read round-trips are exact.
"""

from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .linalg import as_matrix

__all__ = ["read_matrix", "write_matrix"]


def read_matrix(path) -> np.ndarray:
    data = scipy.io.mmread(str(path))
    if scipy.sparse.issparse(data):
        data = data.toarray()
    return as_matrix(data, str(path))


def write_matrix(path, matrix) -> None:
    matrix = as_matrix(matrix, "matrix")
    # mmwrite appends .mtx to bare path names; an open handle keeps the
    # caller's path authoritative
    with Path(path).open("wb") as handle:
        scipy.io.mmwrite(handle, matrix, precision=17, symmetry="general")
