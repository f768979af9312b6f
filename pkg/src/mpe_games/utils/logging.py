import logging
import sys
from typing import Optional, TextIO

def setup_logging(log_level: str = "INFO", stream: Optional[TextIO] = None):
    """
    Configure global logging for MPE Games (call once at startup).
    
    Log records go to stderr unless a different stream is given; stdout
    carries only reports.
    
    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        stream: Destination stream for log records
    """
    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=stream or sys.stderr
    )
