"""Boundedness and essential norms of weighted composition operators on the
holomorphic Lipschitz scale of the unit disk."""
from .battery import BATTERY, BatteryCase
from .criteria import (BoundednessReport, OperatorSpec, check_boundedness, continuous_check,
                       crosscheck_criteria, discrete_check)
from .disksup import DiskGrid, SupEstimate, limsup_restricted, lip_norm, sup_weighted
from .essnorm import (EssNormReport, UnboundedOperatorError, continuous_essnorm, discrete_essnorm,
                      estimate_essential_norm, witness_lower_bound)
from .expr import Z, const, eval_jet, from_json, log, poly, power, to_json
from .gcoeff import build_table, eval_G
from .jets import ComplexJet, jet_compose
from .testfns import TestFnSpec, make_test_fn, verify_test_fn
from .weights import SpaceParam, WeightSpec, growth_sup, monomial_norm, omega, weight_spec

__version__ = "0.1.0"
