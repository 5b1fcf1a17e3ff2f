"""Tests for cpd."""
