"""rectlab: exact enumeration of pattern-avoiding rectangulations.

Three independent routes (brute-force geometry, a recursive bijection with
separable permutations, and exact generating-function algebra) compute the
same counts; the test suite cross-checks them at desk scale.
"""

__version__ = "0.1.0"
