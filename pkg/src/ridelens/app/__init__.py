"""CLI entry points and the read-only HTTP service."""
