"""brandgauge: brand-personality scoring, consistency and rewrite ranking."""

__version__ = "0.1.0"
