"""Energy-based re-ranking of generated summaries by metric distillation."""

__version__ = "0.1.0"
