"""
Shared helpers for MPE Games.
"""
