"""Runtime configuration.

Settings come from environment variables prefixed with ``LOGTAN_`` (a
``.env`` file in the working directory is honoured), falling back to the
defaults below. CLI flags override individual fields.
"""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()

MERSENNE_31 = 2**31 - 1
SECOND_PRIME = 2**31 - 19
DEFAULT_SEED = 20240611


class Settings(BaseSettings):
    """Suite-wide defaults.

    Attributes:
        seed: Seed for every random choice (reproducible by default).
        prime: Characteristic of the default working field.
        check_prime: Second prime used for characteristic cross-checks.
        max_retries: Resampling budget for generic choices.
        degree_slack: The engine caps degrees at 2n + degree_slack.
        quiver_max_n: Largest n the quiver enumeration accepts.
        workers: Process-pool size for the quiver scan (1 = in-process).
        max_exponent: Largest exponent of a variable in parsed polynomial text.
        log_level: Logging level used by the CLI.
    """

    model_config = SettingsConfigDict(env_prefix="LOGTAN_", extra="ignore")

    seed: int = DEFAULT_SEED
    prime: int = MERSENNE_31
    check_prime: int = SECOND_PRIME
    max_retries: int = Field(default=10, ge=1)
    degree_slack: int = Field(default=2, ge=0)
    quiver_max_n: int = Field(default=12, ge=1)
    workers: int = Field(default=1, ge=1)
    max_exponent: int = Field(default=256, ge=1)
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
