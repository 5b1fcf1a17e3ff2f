"""Unit tests for cpd modules."""
