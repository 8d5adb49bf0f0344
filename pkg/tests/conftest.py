import datetime
from pathlib import Path

import pytest

from pubmine.medline import Corpus, MedlineRecord, parse_medline

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def sample_medline_path() -> Path:
    return FIXTURES / "sample.medline"


@pytest.fixture(scope="session")
def sample_medline_bytes(sample_medline_path) -> bytes:
    return sample_medline_path.read_bytes()


@pytest.fixture()
def sample_corpus(sample_medline_bytes) -> Corpus:
    corpus, _ = parse_medline(sample_medline_bytes, source_name="sample.medline")
    return corpus


def make_record(pmid: int, abstract: str, year: int = 2000, month: int = 1,
                day: int = 1, title: str | None = None) -> MedlineRecord:
    return MedlineRecord(
        pmid=pmid,
        date=datetime.date(year, month, day),
        title=title or f"Synthetic record {pmid}.",
        abstract=abstract,
    )


def make_corpus(abstracts: list[str], source_name: str = "synthetic.medline") -> Corpus:
    records = tuple(
        make_record(pmid=100 + i, abstract=text, year=1990 + i % 30)
        for i, text in enumerate(abstracts)
    )
    return Corpus(records=records, source_name=source_name)


@pytest.fixture()
def nine_doc_corpus() -> Corpus:
    """Three crisp topics sized 3/4/2; at k=3 under seed 42 this clusters
    cleanly as [3, 4, 2], so the 4-document heart topic in cluster 2 can be
    drilled into at the same k.  Each document carries one unique word so a
    drilled subset never degenerates to an all-zero matrix."""
    unique = iter(["amber", "basil", "cedar", "dahlia", "ebony",
                   "fennel", "garnet", "hazel", "indigo"])
    topics = [
        ("kidney renal nephron dialysis creatinine filtration urine", 3),
        ("heart valve aorta cardiac output pressure ventricle", 4),
        ("nerve axon myelin synapse neuron conduction spinal", 2),
    ]
    abstracts = []
    for words, count in topics:
        for _ in range(count):
            abstracts.append(f"Study of {words} in {next(unique)} patients.")
    return make_corpus(abstracts, source_name="nine.medline")
