import pathlib

import pytest

from gakit.parser import load_gad

CORPUS = pathlib.Path(__file__).resolve().parents[1] / "src" / "gakit" / "corpus"

ARITH_GAD = (CORPUS / "arith.gad").read_text()
PARADOX_GAD = (CORPUS / "paradox.gad").read_text()


@pytest.fixture(scope="session")
def arith():
    return load_gad(ARITH_GAD)


@pytest.fixture(scope="session")
def paradox():
    return load_gad(PARADOX_GAD)
