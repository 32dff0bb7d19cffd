"""Tests for the fibrantkit package."""
