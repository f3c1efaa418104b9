"""Kernelization toolkit for graphs with a small treedepth modulator."""

__version__ = "0.1.0"
