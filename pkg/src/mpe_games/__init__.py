"""
MPE Games - finite-memory synthesis for mean-payoff expression games
"""

__version__ = "0.1.0"
