"""Tests for the pydomp package."""
