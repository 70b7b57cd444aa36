"""Input checks for the estimator wrappers."""
from __future__ import annotations

import numpy as np

from .imaging import BlockGrid, Frame


def check_frame(X) -> np.ndarray:
    """Coerce a Frame or 2-D array-like to a (height, width) uint8 array."""
    if isinstance(X, Frame):
        return X.luma
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D frame, got array with shape {arr.shape}")
    return _as_luma(arr)


def check_frames(X) -> np.ndarray:
    """Coerce a single frame or a sequence of frames to an (n, h, w) uint8 stack."""
    if isinstance(X, Frame):
        return X.luma[np.newaxis]
    if isinstance(X, (list, tuple)):
        if not X:
            raise ValueError("empty frame sequence")
        X = [check_frame(f) for f in X]
        shapes = {f.shape for f in X}
        if len(shapes) != 1:
            raise ValueError(f"frames differ in shape: {sorted(shapes)}")
        return np.stack(X)
    arr = np.asarray(X)
    if arr.ndim == 2:
        arr = arr[np.newaxis]
    if arr.ndim != 3:
        raise ValueError(f"expected a frame or a stack of frames, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("empty frame stack")
    return _as_luma(arr)


def _as_luma(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype.kind not in "iuf" or arr.dtype == bool:
        raise ValueError(f"frames must be numeric, got dtype {arr.dtype}")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)):
            raise ValueError("frames contain NaN or infinity")
        if not np.array_equal(arr, np.round(arr)):
            raise ValueError("frames must hold integer luma values")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("luma values must lie in [0, 255]")
    return arr.astype(np.uint8)


def as_grid(values, block_size: int) -> BlockGrid:
    return BlockGrid(np.asarray(values), block_size)
