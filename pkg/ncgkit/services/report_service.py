"""
Report Service
Renders verification reports as JSON or as Markdown through a Jinja2 template
"""

import os
import json
import logging
from typing import Any, Dict, List, Optional

from jinja2 import Environment, FileSystemLoader

from .. import __version__
from ..utils.atomic_io import atomic_write_text
from .verification_service import VerificationReport

logger = logging.getLogger(__name__)


class ReportService:
    """Formats a VerificationReport for files or the console."""

    def __init__(self, template_dir: Optional[str] = None):
        template_dir = template_dir or os.path.join(os.path.dirname(__file__), '..', 'templates')
        self.jinja_env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=False,
            trim_blocks=True,
            keep_trailing_newline=True,
        )
        logger.info("Report Service initialized")

    def render(self, report: VerificationReport, fmt: str = 'json', seed: int = 0,
               modules: Optional[List[str]] = None) -> str:
        """
        Render the report.

        Args:
            report: Collected claim results
            fmt: 'json' or 'md'
            seed: Recorded in the header
            modules: Modules the suite was restricted to, None for all

        Returns:
            Report text
        """
        data = report.to_dict()
        if fmt == 'md':
            template = self.jinja_env.get_template('verification_report.md.j2')
            return template.render(
                report=data,
                version=__version__,
                seed=seed,
                modules=', '.join(modules) if modules else 'all',
            )
        payload: Dict[str, Any] = {'version': __version__, 'seed': seed, 'modules': modules or 'all'}
        payload.update(data)
        return json.dumps(payload, indent=2) + '\n'

    def write(self, report: VerificationReport, path: str, fmt: str = 'json', seed: int = 0,
              modules: Optional[List[str]] = None) -> Dict[str, Any]:
        try:
            content = self.render(report, fmt, seed, modules)
            return {'success': True, 'file_path': atomic_write_text(path, content)}
        except OSError as e:
            logger.error(f"Error writing report to {path}: {e}", exc_info=True)
            return {'success': False, 'error': str(e), 'file_path': None}
