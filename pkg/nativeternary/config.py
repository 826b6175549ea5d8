import os
import sys
from functools import lru_cache

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

ENV = os.getenv("ENVIRONMENT", default="dev")

if "pytest" in sys.modules:
    ENV = "test"


DOTENV_PATH = f".env.{ENV}"

load_dotenv(dotenv_path=DOTENV_PATH, override=True)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="NTRN_", extra="ignore")

    app_name: str = "nativeternary"
    environment: str = "dev"
    log_level: str = "WARNING"
    default_seed: int = 0

    transcode_block_bytes: int = 19
    pair_chunk_size: int = 1 << 22

    bench_warmup_iterations: int = 1
    bench_repeats: int = 3

    nativeternary_bits_per_weight: float = 2.0
    gguf_tensor_header_bytes: int = 256
    gguf_q2k_bits_per_weight: float = 2.625
    gguf_q4_0_bits_per_weight: float = 4.5
    gguf_int8_bits_per_weight: float = 8.0

    def __init__(self, **values):
        super().__init__(**values)
        self.configure_settings()

    def configure_settings(self):
        """
        Normalizes derived settings after loading.

        Returns:
            None
        """

        self.log_level = self.log_level.upper()
        self.pair_chunk_size -= self.pair_chunk_size % 4
        self.pair_chunk_size = max(self.pair_chunk_size, 4)


@lru_cache
def get_settings():
    """
    Returns the application settings.

    Returns:
        Settings: The application settings.
    """

    return Settings()


settings = get_settings()
