import os

from dotenv import load_dotenv

from errors import ConfigError

load_dotenv()

LOG_LEVEL = os.getenv("OWC_LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("OWC_LOG_FILE", "")


def seed_override() -> list[int] | None:
    """Seeds from OWC_SEED ("1,2,3"), or None when the variable is unset."""
    raw = os.getenv("OWC_SEED", "").strip()
    if not raw:
        return None
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {raw!r}", "OWC_SEED") from None
