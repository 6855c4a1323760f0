"""
Logging configuration for the GBS toolkit
"""

import logging
import sys
from gbs.utils.config import Config


def setup_logging(level: str = None) -> None:
    """Setup logging configuration"""

    # stdout carries JSON reports, logs go to stderr
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )

    # Set specific logger levels
    logging.getLogger('sympy').setLevel(logging.WARNING)
    logging.getLogger('hypothesis').setLevel(logging.WARNING)
