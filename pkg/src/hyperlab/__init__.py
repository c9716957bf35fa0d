"""hyperlab: a desk-scale workbench for classical and hypercomputational models.

Areas: a deterministic Turing-machine engine with oracle and coupled-input
hooks, trial-and-error (limit) computation, accelerated-machine time
accounting, physical bounds on mechanical computation, finite-precision real
enumeration, a dense complex linear-algebra kernel, and an adiabatic
ground-state decision procedure for small Diophantine equations -- each
checked against independent brute-force oracles in the test suite.
"""

__version__ = "0.1.0"
