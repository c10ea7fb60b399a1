"""Tests package for immersion-kit."""
