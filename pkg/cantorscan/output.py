"""
Rendering of command results as JSON, CSV or colour-coded text tables.

Every number is emitted as an outward-rounded decimal pair ``{"lo": ..., "hi": ...}`` (CSV: two columns), so a
printed enclosure still contains the value it encloses.
"""
import csv
import io
import json
from collections import namedtuple
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from colorama import Fore
from mpmath.libmp import prec_to_dps

from cantorscan.numerics import CertifiedScalar

TableColumn = namedtuple('TableColumn', 'title padding', defaults=(18,))

VERDICT_COLOURS = dict(Uncountable=Fore.GREEN, CountableEvidence=Fore.CYAN, Unknown=Fore.YELLOW)
STATUS_COLOURS = dict(certified=Fore.GREEN, refuted=Fore.RED, straddles=Fore.YELLOW)


def digits_for(precision_bits: int) -> int:
    return prec_to_dps(precision_bits)


def pair(x: Optional[CertifiedScalar], digits: int) -> List[Optional[str]]:
    """``[lo, hi]`` decimal strings, ``[None, None]`` for an absent value."""
    if x is None:
        return [None, None]
    return list(x.to_decimal_pair(digits))


def enclosure(x: Optional[CertifiedScalar], digits: int, log_scale: bool = False) -> Optional[Dict[str, Any]]:
    if x is None:
        return None
    lo, hi = x.to_decimal_pair(digits)
    return dict(lo=lo, hi=hi, log_scale=log_scale)


@dataclass
class Document:
    """
    One emitted document: ``meta`` and ``body`` form the JSON object, ``columns``/``rows`` the CSV table and the
    text table.
    """
    command: str
    meta: Dict[str, Any] = field(default_factory=dict)
    body: Dict[str, Any] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)
    rows: List[list] = field(default_factory=list)
    headline: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps({'command': self.command, **self.meta, **self.body}, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(['' if v is None else v for v in row])
        return buf.getvalue()

    def to_text(self) -> str:
        cols = [TableColumn(c, max(len(c) + 2, 14 if c in ('n', 'i') else 26)) for c in self.columns]
        meta = ", ".join(f"{k}={v}" for k, v in sorted(self.meta.items()))
        lines = [f"{Fore.BLUE}{self.command}: {meta}{Fore.RESET}"]
        if self.headline:
            lines.append(self.headline)
        lines.append(Fore.BLUE + ''.join(("{:<" + str(c.padding) + "}").format(c.title) for c in cols) + Fore.RESET)
        for row in self.rows:
            lines.append(''.join(
                ("{:<" + str(c.padding) + "}").format(_cell(v)) for c, v in zip(cols, row)
            ))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == 'csv':
            return self.to_csv()
        if fmt == 'text':
            return self.to_text()
        return self.to_json()


def _cell(v) -> str:
    if v is None:
        return '-'
    text = str(v)
    if text in STATUS_COLOURS:
        return f"{STATUS_COLOURS[text]}{text}{Fore.RESET}"
    return text[:24] if len(text) > 24 else text


def verdict_line(verdict: str) -> str:
    return f"Verdict: {VERDICT_COLOURS.get(verdict, Fore.RESET)}{verdict}{Fore.RESET}"
