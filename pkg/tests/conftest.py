# Thread-pool size must be fixed before numba is first imported: the
# determinism tests compare runs at 1 and 8 workers, so the compiled pool
# has to hold 8 threads even on single-core CI boxes.
import os

os.environ.setdefault("NUMBA_NUM_THREADS", "8")
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")
