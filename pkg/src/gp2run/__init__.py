"""Rooted graph transformation engine for the GP 2 command subset."""

from .bigarray import BigArray, BigArrayError, locate
from .graph import (
    Graph, GraphError,
    MARK_NONE, MARK_RED, MARK_GREEN, MARK_BLUE, MARK_GREY, MARK_DASHED,
)
from .labels import Var, INT, STRING, ATOM, LIST, EMPTY, match_label, instantiate
from .rules import Rule, RuleGraph, RuleNode, RuleEdge, validate_rule, classify_rule, FAST, SLOW
from .matching import (
    SearchPlan, Match, build_search_plan, find_match, apply,
    PRESERVING, REFLECTING,
)
from .undolog import UndoLog
from .interpreter import Program, ProgramError, Interpreter, run_program, StepLimitExceeded
from .parser import parse_host_graph, parse_program, serialize_graph, ParseError, Diagnostic
from .generators import generate, param_for_nodes, KINDS
from .bench import BenchRecord, run_points, write_csv, doubling_ratios, plot_records

__version__ = "0.1.0"
