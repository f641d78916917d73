"""Permutation-group engine and symmetry-breaking toolkit.

Core objects: Permutation, PermGroup (stabilizer chains, backtrack
searches), block-sum constructors (direct, parallel, subdirect), regular
set and distinguishing-number computations, and a verified catalog of
exceptional primitive actions together with suite-level claim checks.
"""

__version__ = "0.1.0"

from .perm import (CycleParseError, Permutation, compose, inverse, parity,
                   parse_cycles, render_cycles)
from .group import BudgetExceededError, PermGroup, StabilizerChain
from .search import (class_stabilizer, find_class_preserver, find_conjugator,
                     find_set_preserver, setwise_stabilizer)
from .sums import (Decomposition, IsoSpec, SubdirectSpec, decompose,
                   direct_sum, is_permutation_automorphism, parallel_multiple,
                   parallel_sum, permutation_realizer, strip_fixed_points,
                   subdirect_sum, validate_isomorphism)
from .symmetry import (DistinguishingReport, Labeling, RegularSetReport,
                       SearchOutcome, an_parallel_formula, check_set,
                       distinguishing_number, find_regular_set,
                       is_distinguishing, orbitals, partition_stabilizer,
                       regular_set_size_census)
from .catalog import (CatalogEntry, CheckResult, PredictedD,
                      VerificationReport, build_named, entry, identify,
                      list_exceptional, load_catalog, predict_D, verify_entry,
                      verify_suite)

__all__ = [
    "__version__",
    "CycleParseError", "Permutation", "compose", "inverse", "parity",
    "parse_cycles", "render_cycles",
    "BudgetExceededError", "PermGroup", "StabilizerChain",
    "class_stabilizer", "find_class_preserver", "find_conjugator",
    "find_set_preserver", "setwise_stabilizer",
    "Decomposition", "IsoSpec", "SubdirectSpec", "decompose", "direct_sum",
    "is_permutation_automorphism", "parallel_multiple", "parallel_sum",
    "permutation_realizer", "strip_fixed_points", "subdirect_sum",
    "validate_isomorphism",
    "DistinguishingReport", "Labeling", "RegularSetReport", "SearchOutcome",
    "an_parallel_formula", "check_set", "distinguishing_number",
    "find_regular_set", "is_distinguishing", "orbitals",
    "partition_stabilizer", "regular_set_size_census",
    "CatalogEntry", "CheckResult", "PredictedD", "VerificationReport",
    "build_named", "entry", "identify", "list_exceptional", "load_catalog",
    "predict_D", "verify_entry", "verify_suite",
]
