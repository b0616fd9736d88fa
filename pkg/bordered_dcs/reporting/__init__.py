"""Command-line tools, report tables and renderers."""
