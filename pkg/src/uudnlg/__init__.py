"""Pipeline NLG toolkit: CoNLL-U handling, content-word tree conversion,
IR (de)linearization, E2E data preparation, corpus tools and evaluation
metrics."""

__version__ = "0.1.0"
