"""Program update services built on extended abduction.

Four update problems reduce to explanation finding over a suitable
abductive program:

* view updates — insert or delete a ground literal by changing only the
  designated variable part of the program;
* integrity maintenance — restore consistency by changing the variable
  part, keeping the integrity constraints fixed;
* theory updates — combine a program with new rules, removing a minimal
  set of old rules so the result is consistent (rule insertion and
  deletion are special cases);
* inconsistency removal — theory update by nothing: drop a minimal set
  of rules (or add facts, under the fact-universe scope) so the program
  becomes consistent.

Each solution carries the updated program together with the change pair
that produced it.  A companion construction packs every theory-update
solution into one program whose answer sets, maximal on the marker
atoms, enumerate all updated programs at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .abduction import (
    CREDULOUS,
    SKEPTICAL,
    AbductiveProgram,
    Explanation,
    Observation,
    _instances,
    _ordered_vars,
    _shadow_literal,
    anti_explanations,
    explanations,
)
from .config import DEFAULT_CONFIG, RunConfig
from .core import (
    AbdukitError,
    Atom,
    Literal,
    LiteralUniverse,
    NafLiteral,
    Program,
    Rule,
    canonical_form,
    constraint,
    fact,
    ground,
    program_diff,
    program_union,
    var,
)
from .solver import AnswerSetResult, answer_sets, consistent

VIEW_INSERT = "view-insert"
VIEW_DELETE = "view-delete"
INTEGRITY = "integrity"
THEORY = "theory"
RULE_INSERT = "rule-insert"
RULE_DELETE = "rule-delete"
INCONSISTENCY_REMOVAL = "inconsistency-removal"

ALL_RULES = "all-rules"
FACT_UNIVERSE = "fact-universe"

_GAMMA = "__r%d"


class NoSolution(AbdukitError):
    """The update cannot succeed for a structural reason worth reporting."""


class ConstraintInVariablePart(AbdukitError):
    """Integrity constraints must belong to the fixed part of the program."""


class RuleAlreadyPresent(AbdukitError):
    """insert_rule got a rule the program already contains."""


class RuleNotPresent(AbdukitError):
    """delete_rule got a rule the program does not contain."""


class ScopeNotSubset(AbdukitError):
    """A subset scope for inconsistency removal must lie inside the program."""


@dataclass(frozen=True)
class UpdateSolution:
    """One way to accomplish an update: the resulting program and how the
    original was changed to reach it."""

    updated_program: Program
    delta: Explanation
    kind: str


@dataclass(frozen=True)
class MultiSolutionProgram:
    """A single program whose answer sets range over all theory-update
    solutions; the marker atoms record which original rules survive."""

    pi: Program
    delta_atoms: frozenset[Atom]


def _coerce(rules: Program | Iterable[Rule]) -> Program:
    return rules if isinstance(rules, Program) else Program(rules)


def _apply_delta(p: Program, delta: Explanation) -> Program:
    """(P \\ F) u E, staying at the pattern level when F consists of exact
    member rules and falling back to ground instantiations otherwise."""
    if not delta.add and not delta.remove:
        return p
    if all(r in p.rules for r in delta.remove):
        return Program((p.rules - delta.remove) | delta.add)
    removed = program_diff(p, Program(delta.remove))
    return program_union(removed, Program(delta.add))


def _solutions(p: Program, exps, kind: str) -> tuple[UpdateSolution, ...]:
    out = [UpdateSolution(_apply_delta(p, e), e, kind) for e in exps]
    return tuple(sorted(out, key=lambda s: s.delta.sort_key()))


def _check_goal_known(p: Program, v: Program, goal: Literal) -> None:
    known = p.predicates() | v.predicates()
    if (goal.atom.predicate, goal.atom.arity) not in known:
        raise NoSolution(
            "goal %s mentions predicate %s/%d, which occurs nowhere in the program"
            % (goal, goal.atom.predicate, goal.atom.arity)
        )


# ---------------------------------------------------------------------------
# view updates


def view_insert(
    p: Program | Iterable[Rule],
    v: Program | Iterable[Rule],
    goal: Literal,
    config: RunConfig | None = None,
) -> tuple[UpdateSolution, ...]:
    """Make the ground literal goal hold in every answer set by changing
    only the variable part v.  One solution per minimal skeptical
    explanation; the empty tuple means the insertion cannot be done."""
    p, v = _coerce(p), _coerce(v)
    _check_goal_known(p, v, goal)
    exps = explanations(
        AbductiveProgram(p, v), Observation.positive(goal), SKEPTICAL, True, config
    )
    return _solutions(p, exps, VIEW_INSERT)


def view_delete(
    p: Program | Iterable[Rule],
    v: Program | Iterable[Rule],
    goal: Literal,
    config: RunConfig | None = None,
) -> tuple[UpdateSolution, ...]:
    """Make the ground literal goal fail in some answer set by changing
    only the variable part v.  One solution per minimal credulous
    anti-explanation; the empty tuple means the deletion cannot be done."""
    p, v = _coerce(p), _coerce(v)
    _check_goal_known(p, v, goal)
    exps = anti_explanations(
        AbductiveProgram(p, v), Observation.negative(goal), CREDULOUS, True, config
    )
    return _solutions(p, exps, VIEW_DELETE)


# ---------------------------------------------------------------------------
# integrity maintenance


def maintain_integrity(
    p: Program | Iterable[Rule],
    v: Program | Iterable[Rule],
    config: RunConfig | None = None,
) -> tuple[UpdateSolution, ...]:
    """Restore consistency by changing only the variable part v.  The
    integrity constraints themselves must sit in the fixed part.  A
    consistent program yields the single no-change solution."""
    p, v = _coerce(p), _coerce(v)
    if any(not r.head for r in v):
        raise ConstraintInVariablePart(
            "integrity constraints must stay in the fixed part of the program"
        )
    exps = anti_explanations(AbductiveProgram(p, v), Observation.bot(), CREDULOUS, True, config)
    return _solutions(p, exps, INTEGRITY)


# ---------------------------------------------------------------------------
# theory updates and single-rule updates


def _theory_solutions(
    p: Program, q: Program, kind: str, config: RunConfig | None
) -> tuple[UpdateSolution, ...]:
    cfg = config or DEFAULT_CONFIG
    q_ground = ground(q, p.constants(), cfg)
    if not consistent(q_ground, cfg):
        raise NoSolution(
            "the new rules are inconsistent on their own, so no combined program can be"
        )
    union = program_union(p, q, cfg)
    removable = program_diff(p, q, cfg)
    exps = anti_explanations(
        AbductiveProgram(union, removable), Observation.bot(), CREDULOUS, True, cfg
    )
    return _solutions(union, exps, kind)


def theory_update(
    p: Program | Iterable[Rule],
    q: Program | Iterable[Rule],
    config: RunConfig | None = None,
) -> tuple[UpdateSolution, ...]:
    """Update p with the rules q: every solution keeps all of q and a
    maximal consistent portion of p.  Raises NoSolution when q alone is
    inconsistent, the one case where no combination can work."""
    return _theory_solutions(_coerce(p), _coerce(q), THEORY, config)


def insert_rule(
    p: Program | Iterable[Rule], r: Rule, config: RunConfig | None = None
) -> tuple[UpdateSolution, ...]:
    """Add one rule, removing a minimal set of old rules if consistency
    demands it."""
    p = _coerce(p)
    if r in p:
        raise RuleAlreadyPresent("rule already in the program: %s" % r)
    return _theory_solutions(p, Program([r]), RULE_INSERT, config)


def delete_rule(
    p: Program | Iterable[Rule], r: Rule, config: RunConfig | None = None
) -> tuple[UpdateSolution, ...]:
    """Remove one rule, then remove whatever minimal extra set an
    inconsistent remainder forces.

    The rule is first disabled rather than dropped: its body gains a
    marker atom, the marker is asserted, and a constraint forbidding the
    marker is inserted as a theory update.  Every maximal consistent
    outcome then drops the marker assertion, and mapping the results back
    yields the maximal consistent subsets of the program without r.
    """
    p = _coerce(p)
    r = canonical_form(r)
    if r not in p:
        raise RuleNotPresent("rule not in the program: %s" % r)
    gamma = Literal(Atom(_GAMMA % 1, tuple(var(n) for n in _ordered_vars(r))))
    disabled = Rule(r.head, set(r.body) | {NafLiteral(gamma, False)})
    staged = Program((p.rules - {r}) | {disabled, fact(gamma)})
    forbid = Program([constraint([NafLiteral(gamma, False)])])
    inner = _theory_solutions(staged, forbid, RULE_DELETE, config)
    out = []
    seen = set()
    for sol in inner:
        cleaned = Program(
            rule
            for rule in sol.updated_program
            if not any(l.atom.predicate == gamma.atom.predicate for l in rule.literals())
        )
        collateral = [
            f
            for f in sol.delta.remove
            if not any(l.atom.predicate == gamma.atom.predicate for l in f.literals())
        ]
        delta = Explanation(
            add=(), remove=[r] + collateral, mode=CREDULOUS, minimal=True
        )
        if delta.pair() in seen:
            continue
        seen.add(delta.pair())
        out.append(UpdateSolution(cleaned, delta, RULE_DELETE))
    return tuple(sorted(out, key=lambda s: s.delta.sort_key()))


# ---------------------------------------------------------------------------
# inconsistency removal


def remove_inconsistency(
    p: Program | Iterable[Rule],
    scope: str | Iterable[Rule] = ALL_RULES,
    config: RunConfig | None = None,
) -> tuple[UpdateSolution, ...]:
    """Make the program consistent by a minimal change.

    scope selects the hypothesis space: "all-rules" may drop any rule,
    an explicit rule collection restricts dropping to those rules, and
    "fact-universe" may also introduce new facts over the program's own
    predicates and constants."""
    p = _coerce(p)
    if isinstance(scope, str):
        if scope == ALL_RULES:
            abducibles = p
        elif scope == FACT_UNIVERSE:
            universe = LiteralUniverse.from_program(p)
            abducibles = Program(fact(l) for l in universe)
        else:
            raise ValueError("bad scope %r" % scope)
    else:
        abducibles = _coerce(scope)
        missing = [r for r in abducibles if r not in p]
        if missing:
            raise ScopeNotSubset(
                "scope rules not in the program: %s" % "; ".join(str(r) for r in missing)
            )
    exps = anti_explanations(
        AbductiveProgram(p, abducibles), Observation.bot(), CREDULOUS, True, config
    )
    return _solutions(p, exps, INCONSISTENCY_REMOVAL)


# ---------------------------------------------------------------------------
# all theory-update solutions in one program


def multi_solution_program(
    p: Program | Iterable[Rule],
    q: Program | Iterable[Rule],
    config: RunConfig | None = None,
) -> MultiSolutionProgram:
    """Pack every way of updating p with q into one program: each rule of
    p is guarded by its own marker atom, markers are free choices, and q
    is kept verbatim.  Answer sets maximal on the markers correspond to
    the theory-update solutions."""
    cfg = config or DEFAULT_CONFIG
    p, q = _coerce(p), _coerce(q)
    guarded: list[Rule] = list(q.rules)
    markers: list[Literal] = []
    for i, r in enumerate(sorted(p, key=Rule.key), start=1):
        gamma = Literal(Atom(_GAMMA % i, tuple(var(n) for n in _ordered_vars(r))))
        markers.append(gamma)
        guarded.append(Rule(r.head, set(r.body) | {NafLiteral(gamma, False)}))
        shadow = _shadow_literal(gamma)
        if cfg.encoding == "naf-pair":
            guarded.append(Rule([gamma], [NafLiteral(shadow, True)]))
            guarded.append(Rule([shadow], [NafLiteral(gamma, True)]))
        else:
            guarded.append(Rule([gamma, shadow], ()))
    constants = p.constants() | q.constants()
    pi = ground(Program(guarded), constants, cfg)
    delta_atoms = frozenset(
        inst.atom for gamma in markers for inst in _instances(gamma, constants, cfg)
    )
    return MultiSolutionProgram(pi, delta_atoms)


def delta_maximal_answer_sets(
    m: MultiSolutionProgram, config: RunConfig | None = None
) -> AnswerSetResult:
    """Consistent answer sets whose marker projection is not strictly
    contained in another's."""
    result = answer_sets(m.pi, config)
    kept = list(result.consistent_sets)
    projections = [
        frozenset(l for l in s.literals if l.positive and l.atom in m.delta_atoms)
        for s in kept
    ]
    out = [
        s
        for s, mine in zip(kept, projections)
        if not any(mine < other for other in projections)
    ]
    return AnswerSetResult(tuple(out), False)
