"""Block calculus and Lie-closure verdicts for SU(d)-invariant qudit circuits.

Submodules:

* ``partitions``  -- Young diagram enumeration, counting, branching, dimensions
* ``permutations`` -- one-line-notation permutation utilities
* ``symrep``      -- orthogonal symmetric-group irreps, characters, intertwiners
* ``blockops``    -- invariant operators as per-sector blocks, generator factories
* ``liealg``      -- numerical Lie closure, rank and correlation queries
* ``semiuni``     -- semi-universality audits and membership criteria
* ``tensor``      -- dense state-vector checks (ancilla states, projectors)
* ``designs``     -- design-order bounds for random invariant circuits
* ``cli``         -- the ``symcirc`` command line front end

Imports are lazy so that the CLI can configure threading before numpy loads.
"""

from importlib import import_module

__version__ = "0.1.0"

_SUBMODULES = (
    "partitions",
    "permutations",
    "symrep",
    "blockops",
    "liealg",
    "semiuni",
    "tensor",
    "designs",
    "cli",
)

_EXPORTS = {
    "YoungDiagram": "partitions",
    "diagram": "partitions",
    "enumerate_diagrams": "partitions",
    "count_diagrams": "partitions",
    "branching": "partitions",
    "multiplicity_dim": "partitions",
    "charge_dim": "partitions",
    "content_sum": "partitions",
    "StandardTableau": "symrep",
    "IrrepRep": "symrep",
    "build_irrep": "symrep",
    "rep_matrix": "symrep",
    "character": "symrep",
    "find_twisted_intertwiner": "symrep",
    "BlockOperator": "blockops",
    "embed_permutation": "blockops",
    "local_generators": "blockops",
    "reflection_generator": "blockops",
    "two_local_obstruction": "blockops",
    "weighted_trace": "blockops",
    "LieBasis": "liealg",
    "closure": "liealg",
    "projected_rank": "liealg",
    "check_sector_universality": "liealg",
    "check_pair_independence": "liealg",
    "find_correlation": "liealg",
    "SemiReport": "semiuni",
    "check_semiuniversality": "semiuni",
    "DenseState": "tensor",
    "apply_permutation": "tensor",
    "wedge_state": "tensor",
    "DesignReport": "designs",
    "design_order": "designs",
}

__all__ = list(_SUBMODULES) + list(_EXPORTS)


def __getattr__(name):
    if name in _SUBMODULES:
        return import_module(f".{name}", __name__)
    if name in _EXPORTS:
        module = import_module(f".{_EXPORTS[name]}", __name__)
        return getattr(module, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
