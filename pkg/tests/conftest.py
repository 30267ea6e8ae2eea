from __future__ import annotations

import pytest

from helpers import TEST_ARRANGEMENTS


@pytest.fixture(params=sorted(TEST_ARRANGEMENTS))
def test_arrangement(request):
    return TEST_ARRANGEMENTS[request.param]()
