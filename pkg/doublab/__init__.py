"""doublab - simulation and verification lab for random recursive trees with doubling events."""

__version__ = "0.1.0"
