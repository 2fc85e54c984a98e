"""Periods of induced hyperspace maps, cover towers, and ordered diagrams.

The package has four layers: finite systems and their induced subset /
tuple dynamics (`finite`, `hyperspace`, `periods`), symbolic full orbits
and their elementary period tests (`elementary`), the inverse-limit
tower of cyclic graph covers with its threads (`covers`, `pqsystem`),
and the equivalent ordered-diagram model (`bratteli`).  `cli` ties the
layers together behind a deterministic-JSON command line.
"""

from .bratteli import (BVDiagram, BVPath, all_paths_into, build_atm_bv,
                       bv_dot, bv_json, cross_check_covers, is_maximal,
                       is_minimal, maximal_path, minimal_path,
                       successor_chain, tower_heights, validate_path,
                       vershik_successor)
from .covers import (ATMTower, CoverMap, CoverReport, DiGraph, Thread,
                     advance, atm_cover, atm_graph, build_atm,
                     coordinate_after, cover_index, cylinder_threads,
                     edge_label, level_trajectory, minimal_extension,
                     minimality_witness, nth_preimage, orbit_coverage,
                     preimage_count, random_thread, rewind, thread_back,
                     thread_from_top, thread_step, tower_dot,
                     validate_cover, validate_thread, winding_word)
from .elementary import (OdometerOrbit, PeriodicOrbit, SymbolicOrbit,
                         ThreadOrbit, TriState, WanderingOrbit,
                         closure_property_check, nonrecurrence_certificate,
                         per_profile, per_test)
from .errors import CapExceeded, InsufficientDepth, InvariantViolation
from .finite import (CycleStructure, FiniteSystem, core, cycle_structure,
                     disjoint_cycles, full_orbit, iterate, periods,
                     random_permutation, random_system, system)
from .hyperspace import (containment_check, hausdorff_distance, image_subset,
                         is_periodic_subset, per_full, per_induced,
                         per_product, per_symmetric,
                         periodic_subsets_in_core,
                         prime_power_closure_check, subset_cycle)
from .algebra import (PeriodSet, divisor_closure, divisors,
                      interval_classifier, lcm_closure, per_finite_formula,
                      per_product_formula, per_symmetric_formula,
                      sharkovskii_forced, sharkovskii_forces)
from .pqsystem import (ClopenSet, LabelState, PQReport, PQSystem, SkewState,
                       glue, in_b, label_step, make_pq, pq_verify,
                       reachable_states, skew_step, visit_count)
from .rng import SeedStream

__version__ = "0.1.0"

__all__ = [
    "ATMTower", "BVDiagram", "BVPath", "CapExceeded", "ClopenSet",
    "CoverMap", "CoverReport", "CycleStructure", "DiGraph", "FiniteSystem",
    "InsufficientDepth", "InvariantViolation", "LabelState", "OdometerOrbit",
    "PQReport", "PQSystem", "PeriodSet", "PeriodicOrbit", "SeedStream",
    "SkewState", "SymbolicOrbit", "Thread", "ThreadOrbit", "TriState",
    "WanderingOrbit", "advance", "all_paths_into", "atm_cover", "atm_graph",
    "build_atm", "build_atm_bv", "bv_dot", "bv_json",
    "closure_property_check", "containment_check", "coordinate_after",
    "core", "cover_index", "cross_check_covers", "cycle_structure",
    "cylinder_threads", "disjoint_cycles", "divisor_closure", "divisors",
    "edge_label", "full_orbit", "glue", "hausdorff_distance", "image_subset",
    "in_b", "interval_classifier", "is_maximal", "is_minimal",
    "is_periodic_subset", "iterate", "label_step", "lcm_closure",
    "level_trajectory", "make_pq", "maximal_path", "minimal_extension",
    "minimal_path", "minimality_witness", "nonrecurrence_certificate",
    "nth_preimage", "orbit_coverage", "per_finite_formula", "per_full",
    "per_induced", "per_product", "per_product_formula", "per_profile",
    "per_symmetric", "per_symmetric_formula", "per_test",
    "periodic_subsets_in_core", "periods", "pq_verify", "preimage_count",
    "prime_power_closure_check", "random_permutation", "random_system",
    "random_thread", "reachable_states", "rewind", "sharkovskii_forced",
    "sharkovskii_forces", "skew_step", "subset_cycle", "successor_chain",
    "system", "thread_back", "thread_from_top", "thread_step",
    "tower_dot", "tower_heights", "validate_cover", "validate_path",
    "validate_thread", "vershik_successor", "visit_count", "winding_word",
]
