"""Exact counts of degree-2 Del Pezzo surfaces over finite fields of odd
characteristic, keyed by the Frobenius action on the Picard lattice.

Subpackages:
    picard    -- the lattice Z L + Z E1 + ... + Z E7 with its intersection form
    weyl      -- W(E7) as a matrix group, enumeration and conjugacy classes
    tables    -- embedded counting polynomials (per class and per trace)
    counting  -- query layer: evaluate counts, aggregation identity, existence
    gf        -- finite fields F_{p^k}, odd p, with vectorized arithmetic tables
    oracle    -- brute-force verification via 7-point configurations in P^2
    cli       -- command-line front end
"""

__version__ = "0.1.0"
