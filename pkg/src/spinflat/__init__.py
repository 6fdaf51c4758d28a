"""Exact combinatorics of spin local models for GO_{2n}."""

from .weyl import AffineElement, KottwitzValue, act, epsilon, invert, kottwitz, multiply, special_elements
from .bruhat import (
    DoubleCoset,
    admissible_set,
    bruhat_leq,
    double_cosets,
    facet_vertex_set,
    length,
    project_coset,
    stabilizer_group,
)
from .permissible import (
    Face,
    enumerate_perm,
    enumerate_perm_general,
    face_to_element,
    is_naively_permissible,
    is_pm_permissible,
    mu_vector,
    omega,
    orbit_classify,
    spin_orbit_member,
    stratum_rank,
)
from .lifts import SqrtPiModule, SqrtPiScalar, build_lift, check_lm_conditions, dual_module
from .parahoric import conjugacy_classes, normalize_index, xi_group

__version__ = "0.1.0"
