"""
Export Service
Writes structure-constant tables, quadratic presentations and characteristic-variety samples
"""

import csv
import io
import json
import os
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import NcgkitError
from ..nctorus import QuadIrr, SL2Mat
from ..spheres import PhiParams, build_bilinear_system, left_action_points, line_search, sample_random
from ..spheres.charvar import CSV_COLUMNS, rank_defect, sampler_rows_for_csv, sigma_map
from ..thetaring import GradedRing, classify_poli2, presentation_export, struct_rows_for_csv
from ..utils.atomic_io import atomic_write_text

logger = logging.getLogger(__name__)

STRUCT_COLUMNS = ['gamma', 'alpha', 'beta', 're', 'im', 'err']
STRUCT_FILENAME = 'struct_constants.csv'
PRESENTATION_FILENAME = 'presentation.json'


def render_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Header row plus rows, quoted as RFC 4180 requires."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\r\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_json(record: Dict[str, Any]) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + '\n'


class ExportService:
    """Builds the ring and sampler artifacts and writes them atomically."""

    def __init__(self, bits: int = 128):
        self.bits = bits
        logger.info(f"Export Service initialized with {bits} bits")

    def export_ring(
        self,
        g: SL2Mat,
        theta: Union[QuadIrr, Fraction],
        tau: Tuple[Fraction, Fraction],
        eps: float,
        tol: float,
        seed: int,
        out_dir: str,
    ) -> Dict[str, Any]:
        """
        Write the degree-one structure constants and the quadratic presentation.

        Args:
            g: Matrix fixing theta
            theta: Fixed point
            tau: (Re, Im) with Im < 0
            eps: Certified error of each structure constant
            tol: Rank threshold for the relation kernel
            seed: Recorded in the provenance block
            out_dir: Target directory for both files

        Returns:
            Dict with success flag, written paths and a short summary
        """
        try:
            logger.info(f"=== Exporting ring for g={g}, theta={theta} ===")
            ring = GradedRing(g, theta, tau, eps, self.bits)
            table = ring.table(1, 1)
            csv_text = render_csv(STRUCT_COLUMNS, struct_rows_for_csv(table))
            record = presentation_export(ring, eps, tol, seed)
            csv_path = atomic_write_text(os.path.join(out_dir, STRUCT_FILENAME), csv_text)
            json_path = atomic_write_text(os.path.join(out_dir, PRESENTATION_FILENAME), render_json(record))
            return {
                'success': True,
                'csv_path': csv_path,
                'json_path': json_path,
                'rows': len(table.entries),
                'generators': len(record['generators']),
                'relations': len(record['relations']),
                'classification': record['classification'],
                'max_error': float(table.max_error()),
            }
        except NcgkitError as e:
            logger.error(f"Ring export failed: {e.message}", exc_info=True)
            return {'success': False, 'error': e.message, 'details': e.details, 'exit_code': e.exit_code,
                    'classification': classify_poli2(g)}

    def sample_charvar(
        self,
        phi: Union[PhiParams, Sequence[float]],
        samples: int,
        mode: str,
        tol: float,
        seed: int,
        out: Optional[str] = None,
    ) -> Dict[str, Any]:
        """
        Sample points for the characteristic variety and optionally write them as CSV.

        Args:
            phi: Angles in turns
            samples: Number of points requested
            mode: 'random', 'line' or 'coordinate'
            tol: Relative rank tolerance
            seed: Seed of the numpy generator
            out: CSV path, or None to skip writing

        Returns:
            Dict with success flag, rows and the CSV text
        """
        try:
            logger.info(f"=== Sampling characteristic variety: mode={mode}, samples={samples} ===")
            system = build_bilinear_system(phi)
            rng = np.random.default_rng(seed)
            if mode == 'random':
                rows = sample_random(system, samples, rng, tol)
            elif mode == 'line':
                rows = line_search(system, samples, rng, tol)
            elif mode == 'coordinate':
                rows = [self._coordinate_row(system, point, tol) for point in left_action_points(system, tol)]
            else:
                raise NcgkitError(f"unknown sampling mode {mode!r}", "choose random, line or coordinate")
            csv_text = render_csv(CSV_COLUMNS, sampler_rows_for_csv(rows))
            path = atomic_write_text(out, csv_text) if out else None
            return {'success': True, 'rows': rows, 'csv': csv_text, 'path': path}
        except NcgkitError as e:
            logger.error(f"Characteristic variety sampling failed: {e.message}", exc_info=True)
            return {'success': False, 'error': e.message, 'details': e.details, 'exit_code': e.exit_code}

    @staticmethod
    def _coordinate_row(system, point: Dict, tol: float) -> Dict:
        u = np.zeros(4, dtype=complex)
        u[point['index']] = 1.0
        v = sigma_map(u, system, tol)
        return {
            'mode': 'coordinate',
            'u': u,
            'rank': point['rank'],
            'sigma_min': rank_defect(system, u),
            'residual': system.residual(u, v) if v is not None else None,
            'v': v,
        }


def summarize_rows(rows: List[Dict]) -> Dict[str, Any]:
    """Rank histogram and worst residual of sampled rows."""
    ranks: Dict[int, int] = {}
    for row in rows:
        ranks[row['rank']] = ranks.get(row['rank'], 0) + 1
    residuals = [row['residual'] for row in rows if row['residual'] is not None]
    return {'count': len(rows), 'ranks': ranks, 'max_residual': max(residuals) if residuals else None}
