"""Command-line surface, one module per command family."""
