"""Markov chains on the Gelfand-Tsetlin graph and their Jacobi diffusion limit."""

import jax

# Kernel identities are checked to 1e-12, which needs double precision.
jax.config.update("jax_enable_x64", True)

from gt_flow.version import __version__
