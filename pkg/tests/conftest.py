import os

import pytest

from logdup.config import ScanConfig
from logdup.report import run_scan

HERE = os.path.dirname(os.path.abspath(__file__))
CORPUS = os.path.join(HERE, "fixtures", "corpus")
MANIFEST = os.path.join(HERE, "fixtures", "manifest.txt")
DATA_DIR = os.path.join(HERE, "data")


@pytest.fixture(scope="session")
def corpus_scan():
    """One shared default-config scan of the fixture corpus."""
    return run_scan(ScanConfig(roots=(CORPUS,)))


@pytest.fixture(scope="session")
def corpus_clone_scan():
    return run_scan(ScanConfig(roots=(CORPUS,), with_clone_analysis=True))
