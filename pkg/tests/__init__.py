"""Tests for the gmrf-greedy package."""
