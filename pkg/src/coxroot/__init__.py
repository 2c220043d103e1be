"""coxroot: asymmetric geometric representations of Coxeter groups.

Core entry points: build a validated E-GCM graph with validate_and_build
(or from a JSON document via document.parse_graph_file), then use the
rep/roots/game modules on it.  The HTTP service lives in service, the
command line in cli.
"""

from .errors import CoxrootError, IllegalUserMove
from .graph import EGCMGraph, INFINITY, validate_and_build
from .document import GraphDocument, parse_graph_document, parse_graph_file
from .rep import (apply_word, dihedral_power, expand_factorization,
                  factor_scalar_action, link_word, reflect, simple_root,
                  word_length_and_reduce)
from .roots import (dominance_test, enumerate_roots, inversion_set,
                    n_bounds_report, positive_root_bounds, rho_map, s_mult)
from .game import (finite_group_test, fire, is_good_position, legal_moves,
                   play, tits_cone_member)
from .scalars import parse_scalar, render_scalar

__version__ = "0.1.0"
