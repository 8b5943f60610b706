from fractions import Fraction
from typing import Any, Sequence

import jax
import numpy as np

Array = jax.Array
NDArray = np.ndarray

Scalar = Fraction | float
Point = Sequence[float]

# Multivariate polynomial as {exponent tuple: coefficient}.
CoefficientMap = dict[tuple[int, ...], Any]
