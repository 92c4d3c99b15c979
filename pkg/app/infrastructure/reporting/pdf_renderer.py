from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

from app.domain.entities import SimulationError
from app.domain.ports import PdfRendererPort
from app.infrastructure.reporting.pdf_engine import render_eval_pdf


class EvalPdfRenderer(PdfRendererPort):
    def render(self, payload: Dict[str, Any], output_path: str) -> None:
        try:
            render_eval_pdf(payload, Path(output_path))
        except RuntimeError as exc:
            raise SimulationError(str(exc)) from exc
