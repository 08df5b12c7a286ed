"""
Application configuration
"""
import os
from pydantic_settings import BaseSettings
from typing import Optional
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Application settings"""

    # Application
    APP_NAME: str = "netmap"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = False
    ENV: Optional[str] = os.getenv("ENV")  # Environment variable for logger configuration

    # Logging
    LOG_LEVEL: str = os.getenv("NETMAP_LOG_LEVEL", "WARNING")
    LOGS_DIR: str = os.getenv("NETMAP_LOGS_DIR", "logs")

    # Enumeration limits (desk scale)
    MAX_ENUMERATION_DEGREE: int = int(os.getenv("NETMAP_MAX_DEGREE", "12"))
    DEFAULT_WORKERS: int = int(os.getenv("NETMAP_WORKERS", "1"))

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
