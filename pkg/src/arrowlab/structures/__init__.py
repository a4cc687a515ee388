"""Concrete categories."""
