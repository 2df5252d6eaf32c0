"""Exact arithmetic library for 3-Leibniz and 3-Lie bialgebras."""
