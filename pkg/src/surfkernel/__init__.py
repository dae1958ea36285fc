"""Kernel surface groups of surface-kernel maps onto finite groups.

Given a finite group, an orbifold signature and a generating vector, the
package builds a Reidemeister-Schreier presentation of the kernel,
simplifies it to a single surface relation, computes the induced action
on first homology, and applies the classical automorphisms of the
orbifold group to generating vectors.
"""

from . import core
from .errors import *  # noqa: F401,F403
from .groups import FiniteGroup, from_table, in_cyclic_span, make_cyclic, make_symmetric
from .harvey import (
    HarveyOp,
    OpResult,
    apply_op,
    consistency_check,
    enumerate_orbit,
    substitution_of,
    verify_automorphism,
)
from .homology import (
    AdaptedReport,
    HomologyAction,
    act_on_basis,
    act_on_generator,
    adapted_check,
    block_structure_check,
    check_representation,
    homology_matrices,
)
from .kernel_map import GeneratingVector, ValidationReport, evaluate, kernel_genus, validate
from .schreier import (
    KernelGen,
    KernelPresentation,
    KernelWord,
    SchreierTransversal,
    count_check,
    linkedness_check,
    minimal_transversal,
    raw_presentation,
    rewrite_tau,
    simplify,
)
from .words import (
    GenSymbol,
    OrbifoldSignature,
    Substitution,
    Word,
    apply_substitution,
    free_reduce,
    long_relation,
    parse_word,
)

__version__ = "0.1.0"
