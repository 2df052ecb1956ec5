"""
Servicio para exportar el informe del corpus a Excel.
"""
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill

from app.config.settings import REPORTS_DIR
from app.services.corpus_service import CorpusReport

logger = logging.getLogger(__name__)

SHEET_NAME = "Corpus"

COLUMN_WIDTHS = {
    'A': 12,  # id
    'B': 11,  # converge
    'C': 12,  # superficie
    'D': 10,  # glosa
    'E': 11,  # análisis
    'F': 12,  # aserciones
    'G': 12,  # resultado
    'H': 70,  # detalle
}

HEADER_FILL = PatternFill(start_color="CC785C", end_color="CC785C", fill_type="solid")
FAIL_FILL = PatternFill(start_color="F4CCCC", end_color="F4CCCC", fill_type="solid")


class CorpusReportExporter:
    """Servicio para exportar el informe del corpus a Excel"""

    def __init__(self, output_dir: Optional[Union[str, Path]] = None):
        self.output_dir = Path(output_dir) if output_dir else REPORTS_DIR

    def default_path(self) -> Path:
        """<output_dir>/corpus_<fecha>.xlsx"""
        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M")
        return self.output_dir / f"corpus_{timestamp}.xlsx"

    def export(self, report: CorpusReport, path: Optional[Union[str, Path]] = None) -> Path:
        """
        Exporta la matriz de resultados del corpus a Excel.

        Args:
            report: Informe de CorpusRunner.run_corpus
            path: Archivo de salida (por defecto, en output_dir)

        Returns:
            Ruta del archivo generado
        """
        filepath = Path(path) if path else self.default_path()
        filepath.parent.mkdir(parents=True, exist_ok=True)
        df = report.to_dataframe()

        try:
            with pd.ExcelWriter(filepath, engine='openpyxl') as writer:
                df.to_excel(writer, sheet_name=SHEET_NAME, index=False)
                worksheet = writer.sheets[SHEET_NAME]

                for col, width in COLUMN_WIDTHS.items():
                    worksheet.column_dimensions[col].width = width

                header_font = Font(bold=True, color="FFFFFF")
                for cell in worksheet[1]:
                    cell.fill = HEADER_FILL
                    cell.font = header_font
                    cell.alignment = Alignment(horizontal='center', vertical='center')

                # Filas con fallos resaltadas
                for row, result in enumerate(report.results, start=2):
                    if not result.passed:
                        for cell in worksheet[row]:
                            cell.fill = FAIL_FILL

                worksheet.auto_filter.ref = worksheet.dimensions

            logger.info(f"Informe Excel generado: {filepath}")
            logger.info(f"Registros: {len(df)} ({report.summary()})")
            return filepath

        except Exception as e:
            logger.error(f"Error al generar Excel: {e}")
            raise


# Instancia global del servicio
_report_exporter: Optional[CorpusReportExporter] = None


def get_report_exporter() -> CorpusReportExporter:
    """Obtiene la instancia global del exportador"""
    global _report_exporter
    if _report_exporter is None:
        _report_exporter = CorpusReportExporter()
    return _report_exporter


__all__ = [
    "CorpusReportExporter",
    "get_report_exporter",
]
