from pathlib import Path

import pytest

from udchallenge.alignment import read_alignments
from udchallenge.treebank import pair_corpora, read_conllu

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

_acceptance = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def report_fixture():
    corpus = pair_corpora(read_conllu(DATA / "report.en.conllu"), read_conllu(DATA / "report.ar.conllu"))
    return corpus, read_alignments(DATA / "report.align")


@pytest.fixture
def synth50():
    corpus = pair_corpora(read_conllu(DATA / "synth50.en.conllu"), read_conllu(DATA / "synth50.ar.conllu"))
    return corpus, read_alignments(DATA / "synth50.align")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            number, title = m.args
            item.user_properties.append(("acceptance", f"AC{number:02d}  {title}"))


def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("acceptance")
    if label is None or (report.when != "call" and report.passed):
        return
    _acceptance[label] = _acceptance.get(label, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance):
        terminalreporter.write_line(f"{'PASS' if _acceptance[label] else 'FAIL'}  {label}")
