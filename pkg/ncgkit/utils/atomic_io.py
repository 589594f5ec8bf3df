"""
Atomic File Writing
Writes output through a temporary file in the target directory followed by os.replace
"""

import os
import logging
import tempfile

logger = logging.getLogger(__name__)


def atomic_write_text(path: str, content: str, encoding: str = 'utf-8') -> str:
    """Write content to path atomically; returns the absolute path."""
    target = os.path.abspath(path)
    directory = os.path.dirname(target) or '.'
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix='.ncgkit-', suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding=encoding, newline='') as handle:
            handle.write(content)
        os.replace(tmp_path, target)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.info(f"Wrote {target}")
    return target
