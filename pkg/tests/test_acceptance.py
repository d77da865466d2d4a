"""Every verification procedure at its default scale."""

import pytest

from doublab.verify import PROCEDURES

pytestmark = [pytest.mark.slow, pytest.mark.statistical]


@pytest.mark.parametrize("name", list(PROCEDURES))
def test_procedure_passes_at_default_scale(name):
    report = PROCEDURES[name](seed=20240611, parallelism=4)
    assert report.passed, report.to_markdown()
