"""
Tests for the toricprobe library.
"""
