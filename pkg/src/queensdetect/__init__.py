"""Energy-lean motion detection over block-averaged frames using N-Queens
decimation."""
from .costing import (CostReport, Counts, EnergyCoefficients, calibrate, estimate_energy,
                      savings_factor, tally)
from .detection import (BackgroundModel, DetectionOutcome, DetectorConfig, DirectorySink,
                        HybridSchedule, MemorySink, SessionReport, ZeroDiffPolicy,
                        init_background, run_pipeline, scan_full, scan_queens, send_alarm)
from .errors import *  # noqa: F401,F403
from .estimators import BlockAverager, QueensMotionDetector
from .imaging import BlockGrid, Frame, decode_pgm, encode_pgm, to_block_grid
from .placement import (GridCells, Kind, QueensPlacement, grid_placement, map_to_grid, mirror_double,
                        solve_first, validate)
from .simulation import CoverageReport, Trajectory, coverage_experiment, crosses, gen_trajectory

__version__ = "0.1.0"
