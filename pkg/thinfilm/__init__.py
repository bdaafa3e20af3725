"""Sixth-order thin-film equation solver with limit-field reconstruction and a weak-form
residual harness for the thin fluid-structure interaction problem it reduces."""

__version__ = "0.1.0"
