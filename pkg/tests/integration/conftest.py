"""
Integration test fixtures for cpd.

These tests exercise whole pipelines: truncated-lattice evolution against
the closed form, and CLI runs end to end.
"""

import json
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import pytest

from cpd.cli import run


@dataclass
class CliResult:
    """Exit code and captured streams of one CLI run."""

    code: int
    stdout: str
    stderr: str

    def json(self) -> Any:
        return json.loads(self.stdout)


@pytest.fixture
def cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    """Run the CLI in-process and capture its output."""

    def _run(*argv: str) -> CliResult:
        capsys.readouterr()
        code = run(list(argv))
        out, err = capsys.readouterr()
        return CliResult(code=code, stdout=out, stderr=err)

    return _run
