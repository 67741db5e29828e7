"""cascadix: exact index and cascade calculus for split symplectic homology
over a prequantization boundary.

The package computes, in exact rational arithmetic, the bookkeeping layer of a
Morse-Bott split model for symplectic homology: gradings of the generators,
Conley-Zehnder indices of the model asymptotic operators, punctured-surface
Fredholm indices with weighted or kernel-decorated ends, dimensions of pearl
and cascade moduli, the combinatorial classification of rigid cascade shapes,
orientation signs from oriented fibre sums, and small Morse complexes with
their homology.
"""

from .errors import CascadixError

__version__ = "0.1.0"

__all__ = ["CascadixError", "__version__"]
