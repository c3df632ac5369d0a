from __future__ import annotations

import pytest

import fixtures


@pytest.fixture(scope="session")
def octology_pdf() -> bytes:
    return fixtures.octology_pdf()


@pytest.fixture(scope="session")
def minimal_pdf() -> bytes:
    return fixtures.minimal_pdf()


@pytest.fixture(scope="session")
def preprint_pdf() -> bytes:
    return fixtures.preprint_pdf()


@pytest.fixture(scope="session")
def pubmed_html() -> bytes:
    return fixtures.pubmed_html()
