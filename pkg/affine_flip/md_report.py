from typing import Dict, Iterable, List

import markdown2

from affine_flip.gelfand import CosetInvolutionReport, GelfandCertificate
from affine_flip.stabilizers import CosetMapReport

_markdown = markdown2.Markdown(extras=["tables", "fenced-code-blocks"])


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _params(params: Dict) -> str:
    return ", ".join(f"{key}={value}" for key, value in sorted(params.items())) or "-"


def compose_certificate_report(certificate: GelfandCertificate) -> str:
    """Markdown summary of a multiplicity-freeness certificate."""
    lines = [
        f"# Gelfand certificate: {certificate.model or 'action'}",
        f"**Parameters:** {_params(certificate.params)}  ",
        f"**States:** {certificate.states}  ",
        f"**Orbitals:** {certificate.rank}  ",
        "",
        "| Check | Result |",
        "|-------|--------|",
        f"| transitive | {_yes(certificate.transitive)} ({certificate.orbits} orbit(s)) |",
        f"| all orbitals self-paired | {_yes(certificate.self_paired)} |",
        f"| orbital algebra commutative | {_yes(certificate.commutative)} |",
        f"| multiplicity-free | {_yes(certificate.multiplicity_free)} |",
    ]
    if certificate.witness is not None:
        i, j, k = certificate.witness
        lines.extend(["", f"Witness: p^{k}_{{{i},{j}}} != p^{k}_{{{j},{i}}}"])
    lines.extend(["", "## Suborbit sizes", ", ".join(str(size) for size in certificate.suborbit_sizes), ""])
    return "\n".join(lines)


def compose_coset_report(report: CosetMapReport) -> str:
    lines = [
        f"# Involutive coset representatives: type {report.group_type}, n={report.n}, k={report.k}",
        f"**Representatives:** {report.representatives} (|d| <= {report.d_bound})  ",
        f"**Target classes:** {report.targets} (|b| <= {report.d_bound - report.margin})  ",
        f"**Verdict:** {'injective and covering' if report.verdict else 'FAILED'}  ",
        "",
        "| Problem | Count |",
        "|---------|-------|",
        f"| collisions | {len(report.collisions)} |",
        f"| uncovered classes | {len(report.gaps)} |",
        f"| outside subgroup | {len(report.outside_group)} |",
        "",
    ]
    if report.gaps:
        lines.extend(["## Uncovered classes", *[f"- {cls}" for cls in report.gaps], ""])
    return "\n".join(lines)


def compose_involution_report(report: CosetInvolutionReport) -> str:
    lines = [
        f"# Suborbits of {report.base}",
        "| Orbital | Size | Self-paired |",
        "|---------|------|-------------|",
    ]
    for entry in report.suborbits:
        lines.append(f"| {entry['orbital']} | {entry['size']} | {_yes(entry['self_paired'])} |")
    lines.append("")
    return "\n".join(lines)


def compose_counts_report(rows: Iterable[Dict]) -> str:
    lines: List[str] = [
        "# Enumeration counts",
        "| Model | Parameters | Enumerated | Formula | Match |",
        "|-------|------------|------------|---------|-------|",
    ]
    for row in rows:
        lines.append(
            f"| {row['model']} | {_params(row['params'])} | {row['count']} | {row['formula']} | {_yes(row['match'])} |"
        )
    lines.append("")
    return "\n".join(lines)


def render_html(md_text: str) -> str:
    """Convert Markdown to HTML."""
    return _markdown.convert(md_text or "")
