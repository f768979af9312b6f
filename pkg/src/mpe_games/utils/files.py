"""
File utilities for MPE Games.
Reading JSON inputs with pinpointed diagnostics and writing reports.
"""

import json
import logging
import os
from typing import Any

from ..exceptions import InputError

# Get logger for this module
logger = logging.getLogger(__name__)


def read_json_file(path: str) -> Any:
    """
    Load a JSON document from disk.
    
    Args:
        path: Path of the file to read
        
    Returns:
        The decoded document
        
    Raises:
        InputError: If the file is missing or is not valid JSON; the message
            names the file and the line and column of the syntax error
    """
    if not os.path.exists(path):
        raise InputError("file not found", path)
    
    logger.info(f"Reading JSON file: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    return parse_json_text(text, path)


def parse_json_text(text: str, source: str = "<input>") -> Any:
    """Decode JSON text, reporting syntax errors by line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}")


def write_text_file(path: str, content: str) -> str:
    """
    Write text content to a file, creating parent directories.
    
    Args:
        path: Destination path
        content: Complete text to write
        
    Returns:
        The path that was written
    """
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        
        logger.info(f"Writing file: {path}")
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content)
        return path
        
    except OSError as e:
        logger.error(f"Error writing file {path}: {e}")
        raise


def dump_json(document: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
