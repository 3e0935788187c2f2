"""Exact spectral sequence computations over Morava K-theory coefficients.

The package computes, at desk scale and with exact mod-p arithmetic:

* the Ravenel-Wilson Hopf ring presentation of K(n)_*(K(Z/p, m)),
* Cotor of finite-type graded coalgebras via the reduced cobar complex,
* the Eilenberg-Moore spectral sequence of path-loop fibrations on
  mod-p Eilenberg-Mac Lane spaces: E^2, differentials, page turning,
  E^infinity, and window-relative convergence verdicts.
"""

__version__ = "0.1.0"
