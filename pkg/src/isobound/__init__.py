"""Effective isogeny bounds and open-image constants for elliptic curves over Q.

Subpackages and modules:

- ``chebotarev``: effective Chebotarev bound tables and their collapse to one
  triple per degree range.
- ``groups``: finite groups, quotients, homomorphism and isomorphism search.
- ``howell`` and ``deviation``: modules over Z/2^k and the deviation group of
  a pair of 2-adic representations.
- ``elliptic``: Weierstrass models, traces of Frobenius, bad primes, mod-2 images.
- ``pipeline``: case selection, bounds and verification for curve pairs.
"""

__version__ = "0.1.0"
