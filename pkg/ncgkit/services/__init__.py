"""
NCG Kit - Services Package
Contains the verification suite, artifact export and report rendering
"""

from .verification_service import VerificationService, VerificationReport, ClaimResult, Mutations, SampleCounts
from .export_service import ExportService, render_csv, render_json, summarize_rows
from .report_service import ReportService

__all__ = [
    'VerificationService',
    'VerificationReport',
    'ClaimResult',
    'Mutations',
    'SampleCounts',
    'ExportService',
    'render_csv',
    'render_json',
    'summarize_rows',
    'ReportService',
]
