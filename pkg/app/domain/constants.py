"""Domain constants shared by deterministic logic."""

HARD = "hard"

MAX_VARIABLES = 4096

DEFAULT_SOFT_WEIGHT = 2.0

# Product replacement defaults for standalone group sampling.
PR_SLOTS = 10
PR_BURN_IN = 60
PR_STEPS_PER_DRAW = 2

# Lighter burn-in for the per-step stabilizer samplers of the Burnside process.
BURNSIDE_PR_BURN_IN = 30
BURNSIDE_STEPS = 7

# Stabilizer search results kept per chain, keyed by assignment.
STABILIZER_CACHE_SIZE = 1024

BRUTE_FORCE_CAP = 20
KERNEL_STATE_CAP = 12
ELEMENT_CAP = 100_000

STOCHASTIC_TOL = 1e-12
