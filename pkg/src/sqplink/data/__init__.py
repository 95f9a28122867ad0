"""Bundled table fixture and database export."""
