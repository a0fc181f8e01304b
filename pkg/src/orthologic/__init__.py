"""Decision procedures for orthologic with axioms."""

__version__ = "0.1.0"
