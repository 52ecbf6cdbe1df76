"""Physical constants (CODATA 2018), pinned for bit-reproducible results."""

C_LIGHT = 299792458.0          # speed of light in vacuum, m/s (exact)
EPSILON_0 = 8.8541878128e-12   # vacuum permittivity, F/m
HBAR = 1.054571817e-34         # reduced Planck constant, J s
