"""Test suite for supermagic."""
