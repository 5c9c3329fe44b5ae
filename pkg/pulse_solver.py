#!/usr/bin/env python3
"""
Controlled-Unitary Pulse Solver - Main Module

Finds single-pulse parameters that realize a controlled-SU(2) gate on two
coupled qubits and simulates the resulting pulse schedules.

Usage:
    python pulse_solver.py solve --target x --fix-delta 25MHz
    python pulse_solver.py verify --solution solution.json --target x
"""

import os
import sys
import logging
from logging.handlers import RotatingFileHandler

# Import configuration
from config import (
    LOG_LEVEL, LOG_TO_CONSOLE, LOG_TO_FILE, LOG_DIR, LOG_FILE,
    LOG_MAX_BYTES, LOG_BACKUP_COUNT
)

# Import library modules
from lib.cli import main


def setup_logging():
    """Setup rotating file logging with UTF-8 support."""
    logger = logging.getLogger('PulseSolver')
    logger.setLevel(getattr(logging, LOG_LEVEL.upper(), logging.INFO))

    formatter = logging.Formatter(
        '%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if LOG_TO_FILE:
        # Create logs directory if it doesn't exist
        if not os.path.exists(LOG_DIR):
            os.makedirs(LOG_DIR)

        file_handler = RotatingFileHandler(
            os.path.join(LOG_DIR, LOG_FILE),
            maxBytes=LOG_MAX_BYTES,
            backupCount=LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # Console goes to stderr, stdout carries the reports
    if LOG_TO_CONSOLE:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, LOG_LEVEL.upper(), logging.INFO))
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    # For Windows, set errors='replace' so the phase symbols print
    if sys.platform == 'win32':
        try:
            sys.stdout.reconfigure(encoding='utf-8', errors='replace')
        except Exception:
            pass

    return logger


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
