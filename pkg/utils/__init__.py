"""
Utility functions: expression parsing, configuration and deterministic sorting.
"""
