"""mzvkit: exact and high-precision tools for multiple zeta values.

The package is organised bottom-up:

* ``exactalg``  -- rationals, multivariate polynomials, Bernoulli/Euler numbers
* ``mzvword``   -- words over {0,+1,-1}, signed indices, blocks, shuffle/stuffle
* ``numeval``   -- arbitrary-precision evaluation with rigorous error bounds
* ``identities``-- closed-form evaluations and relations as exact linear data
* ``coaction``  -- the weight-graded coaction operators D_r on words
* ``blocklie``  -- block-graded relation spaces and period-polynomial maps
* ``cli``       -- command-line verification driver
"""

__version__ = "0.1.0"

__all__ = [
    "exactalg",
    "mzvword",
    "numeval",
    "identities",
    "coaction",
    "blocklie",
]
