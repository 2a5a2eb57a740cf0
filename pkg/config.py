"""Central configuration for derhall.

Values are read from environment variables with defaults suited to desk-scale
runs over A_2 and A_3. Command-line flags override these values; the HTTP
surface reads them as query-parameter defaults.
"""
import os


def _int_list(raw: str) -> list[int]:
    """Split a comma-separated list of integers, ignoring blanks."""
    return [int(part) for part in raw.split(",") if part.strip()]


# Quiver and ground field
QUIVER: str = os.getenv("DERHALL_QUIVER", "A2")
PRIME: int = int(os.getenv("DERHALL_PRIME", "2"))
# Primes used by the motivic layer; the tail beyond the fit is held out
PRIMES: list[int] = _int_list(os.getenv("DERHALL_PRIMES", "2,3,5,7,11,13"))

# Enumeration limits
WINDOW: int = int(os.getenv("DERHALL_WINDOW", "4"))
CAP: int = int(os.getenv("DERHALL_CAP", str(2**20)))
SUBMODULE_DIM_CAP: int = int(os.getenv("DERHALL_SUBMODULE_DIM_CAP", "8"))

# Corpus filter used by tables and identity suites
MAX_SUMMANDS: int = int(os.getenv("DERHALL_MAX_SUMMANDS", "2"))
MAX_DIM: int = int(os.getenv("DERHALL_MAX_DIM", "4"))
CORPUS_SHIFTS: list[int] = _int_list(os.getenv("DERHALL_CORPUS_SHIFTS", "-1,1"))

# Execution and output
WORKERS: int = int(os.getenv("DERHALL_WORKERS", "1"))
FORMAT: str = os.getenv("DERHALL_FORMAT", "json")
OUT: str = os.getenv("DERHALL_OUT", "")
LOG_LEVEL: str = os.getenv("DERHALL_LOG_LEVEL", "INFO")

# HTTP mode controls whether the read-only API routes answer
HTTP_ENABLED: bool = os.getenv("DERHALL_HTTP_ENABLED", "false").lower() == "true"
HTTP_HOST: str = os.getenv("DERHALL_HTTP_HOST", "127.0.0.1")
HTTP_PORT: int = int(os.getenv("DERHALL_HTTP_PORT", "8000"))

# Registry of named worked instances used by the identity suites
INSTANCES_FILE: str = os.getenv("DERHALL_INSTANCES_FILE", "instances.json")
