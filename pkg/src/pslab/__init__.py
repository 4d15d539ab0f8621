"""Principal subspaces of standard level-k modules for affine sl(2).

Exact computations in U(n_-), the lattice realization inside V_P^{(x)k},
and bigrade-by-bigrade verification that the kernel of a -> a.v is the
ideal generated by the truncated relations R^0_{k,t} and x(-1)^{k-i+1}.
"""

__version__ = "0.1.0"
