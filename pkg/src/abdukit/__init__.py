"""Extended abduction and update services for extended disjunctive programs.

The package computes answer sets for ground extended disjunctive programs,
explanations and anti-explanations for observations over abductive
programs, and uses those to solve view updates, integrity maintenance,
theory updates, single-rule updates, and inconsistency removal.
"""

from __future__ import annotations

from .abduction import (
    BOT,
    CREDULOUS,
    NEGATIVE,
    POSITIVE,
    SKEPTICAL,
    AbducibleObservation,
    AbductiveProgram,
    Explanation,
    NameMap,
    Observation,
    OracleBudgetExceeded,
    SkepticalBotUnsupported,
    UpdateProgram,
    anti_explanations,
    brute_force_explanations,
    build_update_program,
    compile_observations,
    explanations,
    normal_form,
    normalize_abducible_heads,
    to_normal_abduction,
    u_minimal_filter,
)
from .config import DEFAULT_CONFIG, RunConfig
from .core import (
    AbdukitError,
    Atom,
    Builtin,
    GroundingBudgetExceeded,
    Literal,
    LiteralUniverse,
    NafLiteral,
    NoConstants,
    Program,
    Rule,
    Term,
    canonical_form,
    const,
    constraint,
    fact,
    ground,
    integer,
    program_diff,
    program_union,
    var,
)
from .parser import EdpSyntaxError, ReservedName, SourceUnit, parse, parse_rule, render
from .solver import (
    CONTRADICTORY,
    AnswerSetResult,
    CandidateBudgetExceeded,
    Interpretation,
    NonGroundRule,
    answer_sets,
    consistent,
    credulous_holds,
    entails,
    is_stratified,
)
from .updates import (
    ALL_RULES,
    FACT_UNIVERSE,
    ConstraintInVariablePart,
    MultiSolutionProgram,
    NoSolution,
    RuleAlreadyPresent,
    RuleNotPresent,
    ScopeNotSubset,
    UpdateSolution,
    delete_rule,
    delta_maximal_answer_sets,
    insert_rule,
    maintain_integrity,
    multi_solution_program,
    remove_inconsistency,
    theory_update,
    view_delete,
    view_insert,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_RULES",
    "BOT",
    "CONTRADICTORY",
    "CREDULOUS",
    "DEFAULT_CONFIG",
    "FACT_UNIVERSE",
    "NEGATIVE",
    "POSITIVE",
    "SKEPTICAL",
    "AbducibleObservation",
    "AbductiveProgram",
    "AbdukitError",
    "AnswerSetResult",
    "Atom",
    "Builtin",
    "CandidateBudgetExceeded",
    "ConstraintInVariablePart",
    "EdpSyntaxError",
    "Explanation",
    "GroundingBudgetExceeded",
    "Interpretation",
    "Literal",
    "LiteralUniverse",
    "MultiSolutionProgram",
    "NafLiteral",
    "NameMap",
    "NoConstants",
    "NonGroundRule",
    "NoSolution",
    "Observation",
    "OracleBudgetExceeded",
    "Program",
    "ReservedName",
    "Rule",
    "RuleAlreadyPresent",
    "RuleNotPresent",
    "RunConfig",
    "ScopeNotSubset",
    "SkepticalBotUnsupported",
    "SourceUnit",
    "Term",
    "UpdateProgram",
    "UpdateSolution",
    "anti_explanations",
    "answer_sets",
    "brute_force_explanations",
    "build_update_program",
    "canonical_form",
    "compile_observations",
    "consistent",
    "const",
    "constraint",
    "credulous_holds",
    "delete_rule",
    "delta_maximal_answer_sets",
    "entails",
    "explanations",
    "fact",
    "ground",
    "insert_rule",
    "integer",
    "is_stratified",
    "maintain_integrity",
    "multi_solution_program",
    "normal_form",
    "normalize_abducible_heads",
    "parse",
    "parse_rule",
    "program_diff",
    "program_union",
    "remove_inconsistency",
    "render",
    "theory_update",
    "to_normal_abduction",
    "u_minimal_filter",
    "var",
    "view_delete",
    "view_insert",
]
