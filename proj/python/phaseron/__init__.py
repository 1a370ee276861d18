"""Phase-encoded quantum neuron simulator.

Statevector simulation of a continuous-valued quantum neuron: two circuit
synthesis backends (rotation blocks and HSGS), ancilla-based inner-product
readout, the closed-form activation/gradient oracle, a gradient-descent
training harness and seeded experiment drivers.
"""

try:
    # installed wheel layout: the extension lives inside the package
    from ._phaseron import *  # noqa: F401,F403
    from ._phaseron import __version__  # noqa: F401
except ImportError:
    # build-tree layout: the extension sits directly on sys.path
    from _phaseron import *  # noqa: F401,F403
    from _phaseron import __version__  # noqa: F401
