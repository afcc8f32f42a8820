"""Combinatorial engine for end-periodic surface maps.

Curves on an infinite-type surface are stored as reduced crossing words
over a chart's wall alphabet, maps act on those words exactly, and the
invariant laminations, Markov dynamics and escaping-set census are all
derived from iterated word images over exact rational arithmetic.
"""

__version__ = "0.1.0"
