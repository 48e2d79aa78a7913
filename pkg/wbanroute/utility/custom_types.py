import sys
from typing import Tuple

import numpy as np

if sys.version_info >= (3, 10):
    from typing import TypeAlias  # type: ignore
else:
    from typing_extensions import TypeAlias  # type: ignore

Array: TypeAlias = np.ndarray
NodeId: TypeAlias = int
Position: TypeAlias = Tuple[float, float]
Link: TypeAlias = Tuple[int, int]
