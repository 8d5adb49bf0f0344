"""Parser for the MEDLINE flat-file export produced by PubMed.

The format is line oriented.  A record is a run of field lines separated from
the next record by one or more blank lines.  A field line carries a tag padded
to four characters, a hyphen in column 5 and the value starting at column 7::

    PMID- 25838514
    DP  - 2015 Apr 4
    TI  - Multiple therapeutic effects of progranulin on experimental acute
          ischaemic stroke.
    AB  - ...

Lines starting with six spaces continue the previous field and are joined with
a single space.  Only PMID, DP, TI and AB are retained; everything else is
ignored.  Records without an abstract are dropped (and counted) because the
downstream pipeline clusters abstract text only.
"""

from __future__ import annotations

import calendar
import datetime
import re
from dataclasses import dataclass

from .errors import EmptyInput, NoValidRecords, UnparsableDate

SENTINEL_DATE = datetime.date(1900, 1, 1)
UNTITLED = "(untitled)"

_MONTH_ABBR = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
               "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")
_MONTH_NUM = {m.lower(): i + 1 for i, m in enumerate(_MONTH_ABBR)}

_YEAR_RE = re.compile(r"\s*(\d{4})")
_MONTH_RE = re.compile(r"(jan|feb|mar|apr|may|jun|jul|aug|sep|oct|nov|dec)",
                       re.IGNORECASE)
_DAY_RE = re.compile(r"(?<!\d)(\d{1,2})(?!\d)")  # never the prefix of a year


@dataclass(frozen=True)
class MedlineRecord:
    pmid: int
    date: datetime.date
    title: str
    abstract: str


@dataclass(frozen=True)
class Corpus:
    records: tuple[MedlineRecord, ...]
    source_name: str = ""

    def __len__(self) -> int:
        return len(self.records)

    def pmids(self) -> tuple[int, ...]:
        return tuple(r.pmid for r in self.records)

    def by_pmid(self) -> dict[int, MedlineRecord]:
        return {r.pmid: r for r in self.records}


@dataclass(frozen=True)
class IngestReport:
    total_records: int
    kept: int
    dropped_no_abstract: int
    duplicate_pmids: int
    malformed_lines: int


def parse_dp(dp: str) -> datetime.date:
    """Parse a DP (publication date) value.

    DP begins with a 4-digit year, optionally followed by a 3-letter English
    month and a day.  Ranges and qualifiers ("Jan-Feb", "Fall") contribute
    their first parsable component; missing parts default to 01.
    """
    m = _YEAR_RE.match(dp)
    if not m:
        raise UnparsableDate(f"no leading 4-digit year in DP value {dp!r}")
    year = int(m.group(1))
    if year < 1:
        raise UnparsableDate(f"year out of range in DP value {dp!r}")
    rest = dp[m.end():]

    month = 1
    day = 1
    mm = _MONTH_RE.search(rest)
    if mm:
        month = _MONTH_NUM[mm.group(1).lower()]
        dm = _DAY_RE.search(rest[mm.end():])
        if dm:
            day = int(dm.group(1))
            if day < 1 or day > calendar.monthrange(year, month)[1]:
                day = 1
    return datetime.date(year, month, day)


def _parse_field_line(line: str) -> tuple[str, str] | None:
    """Split ``TAG<pad>- value`` into (tag, value), or None if malformed."""
    if len(line) < 5 or line[4] != "-":
        return None
    tag = line[:4].rstrip()
    if not tag or not tag.isalnum() or tag != tag.upper() or line[:4] != tag.ljust(4):
        return None
    if len(line) > 5 and line[5] != " ":
        return None
    return tag, line[6:].strip()


def parse_medline(data: bytes | str, source_name: str = "") -> tuple[Corpus, IngestReport]:
    """Parse MEDLINE text into a :class:`Corpus` plus an :class:`IngestReport`.

    Raises :class:`EmptyInput` when the input has no record blocks and
    :class:`NoValidRecords` when blocks exist but none contains a PMID.
    Malformed lines are skipped and counted, never fatal.  Duplicate PMIDs are
    resolved last-occurrence-wins; records without an abstract are dropped and
    counted.
    """
    if isinstance(data, bytes):
        text = data.decode("utf-8", errors="replace")
    else:
        text = data

    blocks: list[list[tuple[str, str]]] = []
    malformed = 0
    fields: list[tuple[str, str]] = []
    saw_block = False
    for line in text.splitlines():
        if not line.strip():
            if fields:
                blocks.append(fields)
                fields = []
            continue
        saw_block = True
        parsed = _parse_field_line(line)
        if parsed is not None:
            fields.append(parsed)
        elif line.startswith("      ") and fields:
            tag, value = fields[-1]
            fields[-1] = (tag, f"{value} {line[6:].strip()}".strip())
        else:
            malformed += 1
    if fields:
        blocks.append(fields)

    if not saw_block:
        raise EmptyInput("no record blocks in input")

    total = 0
    raw: dict[int, tuple[datetime.date, str, str | None]] = {}
    for fields in blocks:
        tags = {}
        for tag, value in fields:
            tags.setdefault(tag, value)
        if "PMID" not in tags:
            continue
        try:
            pmid = int(tags["PMID"])
        except ValueError:
            malformed += 1
            continue
        if pmid <= 0:
            malformed += 1
            continue
        total += 1

        date = SENTINEL_DATE
        if "DP" in tags:
            try:
                date = parse_dp(tags["DP"])
            except UnparsableDate:
                malformed += 1

        title = tags.get("TI", "").strip() or UNTITLED
        abstract = tags.get("AB", "").strip() or None

        # last occurrence wins and takes the later file position
        raw.pop(pmid, None)
        raw[pmid] = (date, title, abstract)

    if not raw:
        raise NoValidRecords("no record block contains a PMID")

    duplicates = total - len(raw)
    records = []
    dropped = 0
    for pmid, (date, title, abstract) in raw.items():
        if abstract is None:
            dropped += 1
            continue
        records.append(MedlineRecord(pmid=pmid, date=date, title=title, abstract=abstract))

    corpus = Corpus(records=tuple(records), source_name=source_name)
    report = IngestReport(
        total_records=total,
        kept=len(records),
        dropped_no_abstract=dropped,
        duplicate_pmids=duplicates,
        malformed_lines=malformed,
    )
    return corpus, report


def dump_medline(corpus: Corpus) -> str:
    """Serialize a corpus back to minimal MEDLINE (PMID/DP/TI/AB).

    Round-trips through :func:`parse_medline`: parsing the output yields a
    corpus with identical records.
    """
    lines: list[str] = []
    for r in corpus.records:
        lines.append(f"PMID- {r.pmid}")
        lines.append(f"DP  - {r.date.year} {_MONTH_ABBR[r.date.month - 1]} {r.date.day}")
        lines.append(f"TI  - {r.title}")
        lines.append(f"AB  - {r.abstract}")
        lines.append("")
    return "\n".join(lines)
