"""Unit tests for ``marginal.core``."""
