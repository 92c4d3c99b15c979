from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List
from xml.sax.saxutils import escape

TITLE = "GRASP SIMULATION EVALUATION"
PDF_TITLE = "Grasp Simulation Evaluation"

SUMMARY_LABELS = [
    ("fingerprint", "Config fingerprint"),
    ("n_episodes", "Episodes"),
    ("successes", "Successes"),
    ("success_rate", "Success rate"),
    ("score_mean", "Grasping score (mean)"),
    ("score_std", "Grasping score (std)"),
    ("return_mean", "Discounted return (mean)"),
    ("length_mean", "Episode length (mean)"),
]

GROUP_COLUMNS = [
    ("group", "Group"),
    ("n", "N"),
    ("successes", "Successes"),
    ("success_rate", "Success rate"),
    ("score_mean", "Score mean"),
]


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_eval_pdf(payload: Dict[str, Any], output_path: Path) -> Path:
    try:
        from reportlab.lib import colors
        from reportlab.lib.pagesizes import LETTER
        from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
        from reportlab.lib.units import inch
        from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle
    except ImportError as exc:
        raise RuntimeError("Missing dependency: reportlab") from exc

    styles = getSampleStyleSheet()
    styles.add(
        ParagraphStyle(
            name="ReportTitle",
            parent=styles["Title"],
            fontSize=18,
            leading=22,
            textColor=colors.HexColor("#0B2E4E"),
            spaceAfter=10,
        )
    )
    styles.add(
        ParagraphStyle(
            name="SectionHeader",
            parent=styles["Heading2"],
            fontSize=12,
            leading=14,
            textColor=colors.HexColor("#0B2E4E"),
            spaceBefore=8,
            spaceAfter=4,
        )
    )

    def para(text: str, style_name: str = "BodyText") -> Paragraph:
        return Paragraph(escape(text), styles[style_name])

    table_style = TableStyle(
        [
            ("BACKGROUND", (0, 0), (-1, 0), colors.HexColor("#E7EEF6")),
            ("BOX", (0, 0), (-1, -1), 0.5, colors.HexColor("#B8C7DA")),
            ("INNERGRID", (0, 0), (-1, -1), 0.25, colors.HexColor("#D0DAE6")),
            ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
            ("FONTNAME", (0, 0), (-1, -1), "Helvetica"),
            ("FONTSIZE", (0, 0), (-1, -1), 9),
        ]
    )

    output_path.parent.mkdir(parents=True, exist_ok=True)
    doc = SimpleDocTemplate(
        str(output_path),
        pagesize=LETTER,
        leftMargin=0.7 * inch,
        rightMargin=0.7 * inch,
        topMargin=0.7 * inch,
        bottomMargin=0.7 * inch,
        title=PDF_TITLE,
        invariant=1,
    )

    story: List[Any] = [para(TITLE, "ReportTitle"), para(f"Suite: {payload.get('suite', '')}")]
    story.append(Spacer(1, 8))

    summary = payload.get("summary") or {}
    summary_rows = [["Metric", "Value"]]
    summary_rows += [[label, _fmt(summary.get(key, ""))] for key, label in SUMMARY_LABELS]
    summary_table = Table(summary_rows, colWidths=[2.6 * inch, 3.0 * inch])
    summary_table.setStyle(table_style)
    story.append(summary_table)

    story.append(para("Per object kind", "SectionHeader"))
    group_rows = [[title for _, title in GROUP_COLUMNS]]
    for row in payload.get("groups") or []:
        group_rows.append([_fmt(row.get(key, "")) for key, _ in GROUP_COLUMNS])
    group_table = Table(group_rows)
    group_table.setStyle(table_style)
    story.append(group_table)

    doc.build(story)
    return output_path
