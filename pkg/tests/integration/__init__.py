"""Integration tests: oracle cross-checks and CLI runs."""
