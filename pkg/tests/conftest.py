"""Shared builders and fixtures for the test suite.

Everything here constructs synthetic export data; no external files
are needed.  The 1905 drill-down fixture is engineered so the share
arithmetic has hand-derivable expected values (24/10/66 split with 13
of the 24 pointing at one work).
"""

from __future__ import annotations

import pytest

from rpys import build_corpus, parse_export


def tagged_export(blocks: list[dict[str, list[str]]]) -> str:
    """Render record tag-dicts as one field-tagged export file."""
    lines = ["FN Thomson Reuters Web of Science", "VR 1.0"]
    for block in blocks:
        for tag, values in block.items():
            lines.append(f"{tag} {values[0]}")
            lines.extend("   " + v for v in values[1:])
        lines.append("ER")
    lines.append("EF")
    return "\n".join(lines) + "\n"


def citing_record(
    uid: str,
    journal: str = "ERKENNTNIS",
    year: int = 2010,
    crs: list[str] | None = None,
) -> dict[str, list[str]]:
    block = {
        "PT": ["J"],
        "AU": [f"Writer, {uid[-1].upper()}"],
        "TI": [f"Citing paper {uid}"],
        "SO": [journal],
        "PY": [str(year)],
        "UT": [uid],
    }
    if crs:
        block["CR"] = list(crs)
    return block


def corpus_from_text(text: str):
    records, _ = parse_export(text)
    corpus, _ = build_corpus(records)
    return corpus


# Hand-written parser fixture: records 1 and 2 are good (multi-line CR
# blocks), record 3 is cut off before its ER terminator.
THREE_RECORD_EXPORT = """\
FN Clarivate Analytics Web of Science
VR 1.0
PT J
AU Neurath, O
TI Protocol sentences
SO ERKENNTNIS
PY 1932
UT WOS:000000001
CR CARNAP R, 1928, LOGISCHE AUFBAU WELT
   SCHLICK M, 1930, NATURWISSENSCHAFTEN, V18, P1
   WITTGENSTEIN L, 1922, TRACTATUS LOGICO PHI
ER

PT J
AU Popper, K
TI Zur Kritik der Ungenauigkeitsrelationen
SO NATURWISSENSCHAFTEN
PY 1934
UT WOS:000000002
CR HEISENBERG W, 1927, Z PHYS, V43, P172
   EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P891
ER

PT J
AU Truncated, T
TI This block never terminates
SO ERKENNTNIS
PY 1935
UT WOS:000000003
CR HUME D, 1739, TREATISE HUMAN NATUR
EF
"""


def drill_1905_crs() -> list[str]:
    """100 cited references to year 1905 with a known author/work split.

    24 Einstein (13 to one work, 6 and 5 to two others), 10 Poincare,
    66 distinct other authors: author shares 24.0% and 10.0% exactly,
    Einstein's top work 13/24 = 54.2% after rounding.
    """
    crs = ["EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P891"] * 13
    crs += ["EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P549"] * 6
    crs += ["EINSTEIN A, 1905, ANN PHYS-BERLIN, V18, P639"] * 5
    crs += ["POINCARE H, 1905, CR HEBD ACAD SCI, V140, P1504"] * 10
    crs += [f"SCHOLAR{i:02d} B, 1905, J GEN STUD, V{i + 1}, P{i + 1}" for i in range(66)]
    assert len(crs) == 100
    return crs


@pytest.fixture
def drill_export_text() -> str:
    crs = drill_1905_crs()
    blocks = [
        citing_record(
            f"WOS:19050000{i}",
            journal="PHILOSOPHY OF SCIENCE",
            year=2012,
            crs=crs[i * 25 : (i + 1) * 25],
        )
        for i in range(4)
    ]
    return tagged_export(blocks)


@pytest.fixture
def drill_corpus(drill_export_text):
    return corpus_from_text(drill_export_text)
