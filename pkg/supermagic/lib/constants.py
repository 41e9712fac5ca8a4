"""Constants used across the supermagic package."""

from pathlib import Path

DEFAULT_CONFIG_PATH = Path.cwd() / ".supermagic" / "configs"

DEFAULT_P = 3
DEFAULT_SEED = 0
JACOBI_EXHAUSTIVE_LIMIT = 140
JACOBI_SAMPLES = 1_000_000
SIMPLICITY_ATTEMPTS = 64
WORKERS_ENV_VAR = "SUPERMAGIC_WORKERS"

# float64 products stay exact while every partial sum is below this bound
FLOAT_EXACT_BOUND = 2**53

ALGEBRA_FILE_VERSION = 1

# Characteristic in which the super Hurwitz algebras B(1,2) and B(4,2) exist
SUPER_CHARACTERISTIC = 3


class SupermagicError(Exception):
    """Base exception for all supermagic errors."""
