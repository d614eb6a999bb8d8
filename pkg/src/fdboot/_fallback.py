"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Accumulations run over grid points in ascending order, one column at a
time, so that results match the compiled loops bitwise.
"""
import numpy as np

BACKEND = "python"


def le_counts(X):
    """``counts[i, j] = #{k : X[k, j] <= X[i, j]}``."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, T = X.shape
    order = np.argsort(X, axis=0, kind="stable")
    srt = np.take_along_axis(X, order, axis=0)
    pos = np.arange(n)[:, None]
    is_end = np.ones((n, T), dtype=bool)
    is_end[:-1] = srt[:-1] != srt[1:]
    ends = np.where(is_end, pos, n)
    # last position of each run of equal values, propagated backwards
    last = np.minimum.accumulate(ends[::-1], axis=0)[::-1]
    counts = np.empty((n, T), dtype=np.intp)
    np.put_along_axis(counts, order, last + 1, axis=0)
    return counts


def fm_depth_scores(X, w):
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, T = X.shape
    # 2n * (1 - |1/2 - c/n|) is the integer 2n - |n - 2c|
    Z = (2 * n - np.abs(n - 2 * le_counts(X))).astype(np.float64)
    acc = np.zeros(n)
    for j in range(T):
        acc += w[j] * Z[:, j]
    return acc / (2.0 * n)


def pairwise_l2(X, w):
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, T = X.shape
    acc = np.zeros((n, n))
    for j in range(T):
        d = X[:, j, None] - X[None, :, j]
        acc += w[j] * (d * d)
    return np.sqrt(acc)


def pairwise_linf(X):
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, T = X.shape
    acc = np.zeros((n, n))
    for j in range(T):
        np.maximum(acc, np.abs(X[:, j, None] - X[None, :, j]), out=acc)
    return acc


def l2_to_reference(Y, ref, w):
    Y = np.ascontiguousarray(Y, dtype=np.float64)
    m, T = Y.shape
    acc = np.zeros(m)
    for j in range(T):
        d = Y[:, j] - ref[j]
        acc += w[j] * (d * d)
    return np.sqrt(acc)


def linf_to_reference(Y, ref):
    Y = np.ascontiguousarray(Y, dtype=np.float64)
    m, T = Y.shape
    acc = np.zeros(m)
    for j in range(T):
        np.maximum(acc, np.abs(Y[:, j] - ref[j]), out=acc)
    return acc
