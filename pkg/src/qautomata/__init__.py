"""Analysis of quantitative automata over infinite words."""

from .buchi import BuchiAutomaton, buchi_included, buchi_member, buchi_universal, cut_buchi
from .core import (NEG_INF, POS_INF, AlphabetMismatchError, Automaton, EmptyInputError, LassoWord,
                   NotDeterministicError, ParseError, QuantError, TotalityError, Transition, UndecidableError,
                   UnimplementedProblemError, UnknownLetterError, UnknownStateError, UnsupportedValueFunctionError,
                   ValueFunction, Verdict, format_weight, load_automaton, parse_automaton, serialize_automaton)
from .decisions import (Support, are_equivalent, bottom_value, is_constant, is_included, is_live, is_non_empty,
                        is_safe, is_universal, problem_support)
from .graph import (CycleDescriptor, SccPartition, best_cycle, bottom_value_deterministic, cap_value, cap_values,
                    dual, eval_lasso, max_mean_cycle, scc_decompose, top_value)
from .monitor import MonitorReport, MonitorState, UnsupportedModeError, create_monitor
from .safety import Decomposition, decompose, liveness_component, safety_closure

__version__ = "0.1.0"
