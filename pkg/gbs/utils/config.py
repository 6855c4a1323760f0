"""
Configuration module for the GBS toolkit
Handles environment variables and default settings for the CLI and fuzz harness
"""

import os
from typing import Dict, Any
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration class for toolkit settings"""

    # Logging
    LOG_LEVEL = os.getenv('GBS_LOG_LEVEL', 'WARNING')
    LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

    # Classification
    DEFAULT_RHO = os.getenv('GBS_DEFAULT_RHO', 'all')

    # Fuzz harness
    FUZZ_SEED = int(os.getenv('GBS_FUZZ_SEED', '1'))
    FUZZ_COUNT = int(os.getenv('GBS_FUZZ_COUNT', '1000'))
    FUZZ_MAX_VERTICES = int(os.getenv('GBS_FUZZ_MAX_VERTICES', '6'))
    FUZZ_MAX_EDGES = int(os.getenv('GBS_FUZZ_MAX_EDGES', '8'))
    FUZZ_MAX_LABEL = int(os.getenv('GBS_FUZZ_MAX_LABEL', '12'))
    FUZZ_ORDER_TRIALS = int(os.getenv('GBS_FUZZ_ORDER_TRIALS', '20'))
    FUZZ_SIGN_CHANGES = int(os.getenv('GBS_FUZZ_SIGN_CHANGES', '10'))

    @classmethod
    def validate(cls) -> bool:
        """Validate configuration values"""
        if cls.LOG_LEVEL.upper() not in cls.LOG_LEVELS:
            raise ValueError(f"GBS_LOG_LEVEL has unknown level {cls.LOG_LEVEL}")

        if cls.FUZZ_MAX_VERTICES < 1:
            raise ValueError("GBS_FUZZ_MAX_VERTICES must be at least 1")

        if cls.FUZZ_MAX_EDGES < 0:
            raise ValueError("GBS_FUZZ_MAX_EDGES must be non-negative")

        if cls.FUZZ_MAX_LABEL < 2:
            raise ValueError("GBS_FUZZ_MAX_LABEL must be at least 2")

        if cls.FUZZ_ORDER_TRIALS < 1 or cls.FUZZ_SIGN_CHANGES < 0:
            raise ValueError("GBS_FUZZ_ORDER_TRIALS must be positive and GBS_FUZZ_SIGN_CHANGES non-negative")

        return True

    @classmethod
    def fuzz_bounds(cls) -> Dict[str, Any]:
        """Get generator bounds for the fuzz harness"""
        return {
            'max_vertices': cls.FUZZ_MAX_VERTICES,
            'max_edges': cls.FUZZ_MAX_EDGES,
            'max_label': cls.FUZZ_MAX_LABEL,
            'order_trials': cls.FUZZ_ORDER_TRIALS,
            'sign_changes': cls.FUZZ_SIGN_CHANGES,
        }
