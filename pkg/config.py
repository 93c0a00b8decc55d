"""
Configuration management for permcover.
Loads tuning settings from a .env file and provides the hard limits.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() not in ('0', 'false', 'no', 'off', '')


# =============================================================================
# PROJECT PATHS
# =============================================================================
PROJECT_ROOT = Path(__file__).parent
CACHE_DIR = Path(os.getenv('PERMCOVER_CACHE_DIR', PROJECT_ROOT / '.cache'))

# =============================================================================
# SIZE LIMITS
# =============================================================================
MIN_N = 2
MAX_CONSTRUCTIVE_N = 20
# Full enumeration is refused beyond this many sets unless a limit is given
ENUMERATION_LIMIT = 10 ** 9

# =============================================================================
# ORACLE SETTINGS
# =============================================================================
ORACLE_MAX_N = 4
RESTRICTED_N = 5
ORACLE_WORKERS = int(os.getenv('PERMCOVER_ORACLE_WORKERS', 1))
RESTRICTED_SAMPLES = int(os.getenv('PERMCOVER_RESTRICTED_SAMPLES', 1_000_000))
RESTRICTED_SEED = int(os.getenv('PERMCOVER_RESTRICTED_SEED', 20240101))

# =============================================================================
# CACHE SETTINGS
# =============================================================================
USE_CACHE = _flag('PERMCOVER_USE_CACHE', True)
MAX_CACHE_AGE_DAYS = int(os.getenv('PERMCOVER_MAX_CACHE_AGE_DAYS', 30))

# =============================================================================
# OUTPUT
# =============================================================================
NO_COLOR = 'NO_COLOR' in os.environ


# =============================================================================
# VALIDATION
# =============================================================================
def validate_config() -> bool:
    """Validate that the tuning settings are usable."""
    errors = []

    if ORACLE_WORKERS < 1:
        errors.append(f"PERMCOVER_ORACLE_WORKERS must be >= 1 (got {ORACLE_WORKERS})")

    if RESTRICTED_SAMPLES < 0:
        errors.append(f"PERMCOVER_RESTRICTED_SAMPLES must be >= 0 (got {RESTRICTED_SAMPLES})")

    if not 0 <= RESTRICTED_SEED < 2 ** 64:
        errors.append("PERMCOVER_RESTRICTED_SEED must fit in 64 unsigned bits")

    if MAX_CACHE_AGE_DAYS < 0:
        errors.append("PERMCOVER_MAX_CACHE_AGE_DAYS must be >= 0")

    if errors:
        print("❌ Configuration Errors:")
        for error in errors:
            print(f"    - {error}")
        return False

    print("✓ Configuration validated successfully")
    return True


if __name__ == '__main__':
    validate_config()
