"""Exact character tables and average-character-degree invariants of finite groups."""
