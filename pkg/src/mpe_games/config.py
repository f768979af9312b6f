"""
Centralized configuration for MPE Games.
Contains user-configurable settings that can be set via environment variables.
"""

import os
from dotenv import load_dotenv, find_dotenv

load_dotenv(find_dotenv())

# Precision
DEFAULT_EPS = os.getenv("MPE_DEFAULT_EPS", "1/100")

# Search budgets
BNB_NODE_BUDGET = int(os.getenv("MPE_BNB_NODE_BUDGET", "5000"))
ENUM_STEP_BUDGET = int(os.getenv("MPE_ENUM_STEP_BUDGET", "20000"))

# Bound tuning
ROW_SELECTION_LIMIT = int(os.getenv("MPE_ROW_SELECTION_LIMIT", "64"))
CORNER_LIMIT = int(os.getenv("MPE_CORNER_LIMIT", "64"))

# Application behavior settings
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
DEFAULT_JOBS = int(os.getenv("MPE_JOBS", "1"))
