"""scikit-learn style wrappers so the detector slots into pipelines and
parameter searches."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_frames
from .detection import (DetectorConfig, HybridSchedule, init_background, scan_full,
                        scan_queens)
from .imaging import Frame, to_block_grid
from .placement import grid_placement


class BlockAverager(TransformerMixin, BaseEstimator):
    """Reduce frames to floored block means.

    A 2-D input gives a 2-D grid; a stack of frames gives a stack of grids.
    """

    def __init__(self, block_size=8):
        self.block_size = block_size

    def fit(self, X, y=None):
        stack = check_frames(X)
        self.frame_shape_ = stack.shape[1:]
        bs = self.block_size
        self.grid_shape_ = (self.frame_shape_[0] // bs, self.frame_shape_[1] // bs)
        return self

    def transform(self, X):
        check_is_fitted(self, "grid_shape_")
        single = np.ndim(X) == 2 or isinstance(X, Frame)
        stack = check_frames(X)
        if stack.shape[1:] != self.frame_shape_:
            raise ValueError(f"fitted on {self.frame_shape_} frames, got {stack.shape[1:]}")
        grids = np.stack([to_block_grid(Frame(f), self.block_size).values for f in stack])
        return grids[0] if single else grids


class QueensMotionDetector(BaseEstimator):
    """Stateful alarm detector over a frame stream.

    ``fit`` seeds the background from the first frame it is given. Every call
    to ``predict`` then scans its frames in order, adapting the background as
    it goes, and returns one boolean alarm flag per frame. Frame numbering
    (used by ``hybrid_k``) continues across ``predict`` calls.

    Parameters
    ----------
    threshold : int
        Alarm when a probed block differs from the background by more than this.
    block_size : int, default=8
    queens_n : int or None, default=None
        Board order; ``None`` uses min(grid rows, grid cols).
    double : bool, default=True
        Probe the placement and its vertical mirror.
    zero_diff_policy : {"hold", "literal_decrement"}, default="hold"
    update_step : int, default=1
    hybrid_k : int or None, default=None
        Full scan on every k-th frame.
    """

    def __init__(self, threshold=10, block_size=8, queens_n=None, double=True,
                 zero_diff_policy="hold", update_step=1, hybrid_k=None):
        self.threshold = threshold
        self.block_size = block_size
        self.queens_n = queens_n
        self.double = double
        self.zero_diff_policy = zero_diff_policy
        self.update_step = update_step
        self.hybrid_k = hybrid_k

    def fit(self, X, y=None):
        stack = check_frames(X)
        self.config_ = DetectorConfig(self.threshold, self.zero_diff_policy, self.update_step)
        self.schedule_ = HybridSchedule(self.hybrid_k)
        grid = to_block_grid(Frame(stack[0]), self.block_size)
        self.frame_shape_ = stack.shape[1:]
        self.cells_ = grid_placement(grid.rows, grid.cols, self.queens_n, self.double)
        self.background_ = init_background(grid)
        self.frames_seen_ = 0
        self.outcomes_ = []
        return self

    def _scan(self, frame: np.ndarray):
        self.frames_seen_ += 1
        cur = to_block_grid(Frame(frame), self.block_size)
        if self.schedule_.detector_for(self.frames_seen_) == "full":
            return scan_full(self.background_, cur, self.config_)
        return scan_queens(self.background_, cur, self.cells_, self.config_)

    def predict(self, X):
        check_is_fitted(self, "background_")
        stack = check_frames(X)
        if stack.shape[1:] != self.frame_shape_:
            raise ValueError(f"fitted on {self.frame_shape_} frames, got {stack.shape[1:]}")
        outcomes = [self._scan(f) for f in stack]
        self.outcomes_.extend(outcomes)
        return np.array([o.alarmed for o in outcomes], dtype=bool)

    def fit_predict(self, X, y=None):
        """Seed from the first frame and return alarm flags for the rest."""
        stack = check_frames(X)
        self.fit(stack[:1])
        if len(stack) == 1:
            return np.zeros(0, dtype=bool)
        return self.predict(stack[1:])

    @property
    def background(self) -> np.ndarray:
        check_is_fitted(self, "background_")
        return self.background_.values.copy()
