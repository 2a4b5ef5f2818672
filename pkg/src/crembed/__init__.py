"""Polynomial CR embeddings of nilpotent Lie groups, in exact arithmetic."""
