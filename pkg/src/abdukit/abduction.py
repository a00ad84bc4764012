"""Extended abduction: explanations and anti-explanations over EDPs.

An abductive program pairs a background program P with abducible rules A.
A positive observation G is explained by a pair (E, F): add the abducible
instances E to P and remove the instances F so that the result derives G
and stays consistent.  A negative observation is anti-explained by making
G underivable.  Both come in credulous (true in some answer set) and
skeptical (true in every answer set) variants.

The engine computes them by transformation: abducible rules are named
away so only abducible facts remain, then each ground abducible becomes a
choice between itself and a shadow literal, with update atoms recording
additions (+a) and removals (-a) relative to P.  Answer sets of the
transformed program correspond to candidate pairs, and the ones whose
update-atom projection is minimal under set inclusion encode minimal
change.  A brute-force oracle and a translation to plain introduction-only
abduction provide independent cross-checks.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .config import DEFAULT_CONFIG, RunConfig
from .core import (
    AbdukitError,
    Atom,
    GroundingBudgetExceeded,
    Literal,
    NafLiteral,
    NoConstants,
    Program,
    Rule,
    Term,
    VARIABLE,
    canonical_form,
    constraint,
    fact,
    ground,
    var,
)
from .solver import AnswerSetResult, answer_sets

POSITIVE = "positive"
NEGATIVE = "negative"
BOT = "bot"

CREDULOUS = "credulous"
SKEPTICAL = "skeptical"

# internal predicates; the parser reserves the "__" prefix so user programs
# can never collide with these
_NAME = "__n%d"
_FRESH = "__a%d"
_SHADOW = "__not%d_%s"
_PLUS = "__add%d_%s"
_MINUS = "__del%d_%s"
_PRIME = "__prime%d_%s"
_GOAL_ATOM = "__obs"
_ANTI_ATOM = "__antigoal"

ORACLE_CAP = 12


class AbducibleObservation(AbdukitError):
    """The observation literal is itself an abducible instance."""


class SkepticalBotUnsupported(AbdukitError):
    """Consistency restoration has no skeptical variant."""


class OracleBudgetExceeded(AbdukitError):
    """Too many ground abducible instances for exhaustive enumeration."""


@dataclass(frozen=True)
class Observation:
    """A ground literal to make true (positive) or false (negative).

    The bot observation stands for inconsistency itself: anti-explaining
    it restores consistency.
    """

    kind: str
    literal: Literal | None = None

    def __post_init__(self) -> None:
        if self.kind not in (POSITIVE, NEGATIVE, BOT):
            raise ValueError("bad observation kind %r" % self.kind)
        if self.kind == BOT:
            if self.literal is not None:
                raise ValueError("the bot observation carries no literal")
            return
        if self.literal is None:
            raise ValueError("%s observation needs a literal" % self.kind)
        if not self.literal.is_ground:
            raise ValueError("observation must be ground: %s" % self.literal)

    @classmethod
    def positive(cls, literal: Literal) -> Observation:
        return cls(POSITIVE, literal)

    @classmethod
    def negative(cls, literal: Literal) -> Observation:
        return cls(NEGATIVE, literal)

    @classmethod
    def bot(cls) -> Observation:
        return cls(BOT)

    def __str__(self) -> str:
        if self.kind == BOT:
            return "bot"
        if self.kind == NEGATIVE:
            return "not %s" % self.literal
        return str(self.literal)


@dataclass(frozen=True)
class AbductiveProgram:
    program: Program
    abducibles: Program

    def __init__(self, program: Program | Iterable[Rule] = (), abducibles: Program | Iterable[Rule] = ()):
        object.__setattr__(
            self, "program", program if isinstance(program, Program) else Program(program)
        )
        object.__setattr__(
            self,
            "abducibles",
            abducibles if isinstance(abducibles, Program) else Program(abducibles),
        )

    def fact_patterns(self) -> tuple[Literal, ...]:
        """Head literals of the single-head abducible facts."""
        out = []
        for r in self.abducibles:
            if r.is_fact and len(r.head) == 1:
                (lit,) = r.head
                out.append(lit)
        return tuple(sorted(out, key=Literal.key))

    def satisfies_assumptions(self) -> bool:
        """Whether no abducible occurs in the head of a non-hypothesis rule
        and every all-abducible disjunctive fact is itself abducible."""
        return not _offending_patterns(self) and not _unregistered_disjunctive_facts(self)


@dataclass(frozen=True)
class Explanation:
    """A change pair: rules added to the program and rules removed from it."""

    add: frozenset[Rule]
    remove: frozenset[Rule]
    mode: str = CREDULOUS
    minimal: bool = False

    def __init__(
        self,
        add: Iterable[Rule] = (),
        remove: Iterable[Rule] = (),
        mode: str = CREDULOUS,
        minimal: bool = False,
    ):
        object.__setattr__(self, "add", frozenset(canonical_form(r) for r in add))
        object.__setattr__(self, "remove", frozenset(canonical_form(r) for r in remove))
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "minimal", minimal)

    def pair(self) -> tuple[frozenset[Rule], frozenset[Rule]]:
        return (self.add, self.remove)

    @property
    def size(self) -> int:
        return len(self.add) + len(self.remove)

    def sort_key(self):
        return (
            self.size,
            tuple(sorted(r.key() for r in self.add)),
            tuple(sorted(r.key() for r in self.remove)),
        )

    def __str__(self) -> str:
        parts = ["+%s" % r for r in sorted(self.add, key=Rule.key)]
        parts += ["-%s" % r for r in sorted(self.remove, key=Rule.key)]
        return " ".join(parts) if parts else "(no change)"


@dataclass(frozen=True)
class NameMap:
    """Bijection between abducible rules and their name atoms.

    Each name atom carries exactly the rule's variables, so a ground name
    instance determines a ground rule instance and back.
    """

    entries: tuple[tuple[Rule, Atom], ...] = ()

    def name_for(self, rule: Rule) -> Atom | None:
        wanted = canonical_form(rule)
        for r, atom in self.entries:
            if r == wanted:
                return atom
        return None

    def is_name(self, predicate: str) -> bool:
        return any(atom.predicate == predicate for _, atom in self.entries)

    def rule_for(self, atom: Atom) -> Rule | None:
        for r, pattern in self.entries:
            if pattern.predicate == atom.predicate and len(pattern.args) == len(atom.args):
                binding = {t.name: u for t, u in zip(pattern.args, atom.args)}
                return r.substitute(binding)
        return None


@dataclass(frozen=True)
class UpdateProgram:
    """The transformed program whose answer sets encode change pairs."""

    rules: Program
    ua_plus: frozenset[Atom]
    ua_minus: frozenset[Atom]
    shadows: frozenset[Atom]
    name_map: NameMap
    source: AbductiveProgram

    @property
    def update_atoms(self) -> frozenset[Atom]:
        return self.ua_plus | self.ua_minus


# ---------------------------------------------------------------------------
# pattern matching on flat terms


def _match(pattern: Literal, target: Literal) -> dict[str, Term] | None:
    """One-way match: bind the pattern's variables so it equals target."""
    if pattern.positive != target.positive:
        return None
    pa, ta = pattern.atom, target.atom
    if pa.predicate != ta.predicate or pa.arity != ta.arity:
        return None
    binding: dict[str, Term] = {}
    for t, u in zip(pa.args, ta.args):
        if t.kind == VARIABLE:
            seen = binding.get(t.name)
            if seen is None:
                binding[t.name] = u
            elif seen != u:
                return None
        elif t != u:
            return None
    return binding


def _unifiable(a: Literal, b: Literal) -> bool:
    """Whether two literal patterns share a ground instance (renamed apart)."""
    if a.positive != b.positive:
        return False
    if a.atom.predicate != b.atom.predicate or a.atom.arity != b.atom.arity:
        return False
    a = a.substitute({n: var("L~" + n) for n in a.variables()})
    b = b.substitute({n: var("R~" + n) for n in b.variables()})
    subst: dict[str, Term] = {}

    def walk(t: Term) -> Term:
        while t.kind == VARIABLE and t.name in subst:
            t = subst[t.name]
        return t

    for t, u in zip(a.atom.args, b.atom.args):
        t, u = walk(t), walk(u)
        if t == u:
            continue
        if t.kind == VARIABLE:
            subst[t.name] = u
        elif u.kind == VARIABLE:
            subst[u.name] = t
        else:
            return False
    return True


def _instances(literal: Literal, constants: Iterable[Term], config: RunConfig) -> list[Literal]:
    names = sorted(literal.variables())
    if not names:
        return [literal]
    consts = tuple(sorted(set(constants), key=Term.key))
    if not consts:
        raise NoConstants("abducible %s has variables but no constant exists" % literal)
    if len(consts) ** len(names) > config.max_ground_rules:
        raise GroundingBudgetExceeded(
            "abducible %s has more instances than the budget of %d"
            % (literal, config.max_ground_rules)
        )
    return [
        literal.substitute(dict(zip(names, combo)))
        for combo in itertools.product(consts, repeat=len(names))
    ]


def _literal_constants(literal: Literal | None) -> frozenset[Term]:
    if literal is None:
        return frozenset()
    return frozenset(t for t in literal.atom.args if t.is_ground)


# ---------------------------------------------------------------------------
# the two structural assumptions on abductive programs


def _offending_patterns(ap: AbductiveProgram) -> list[Literal]:
    """Abducible fact patterns that occur in the head of some rule which is
    neither an abducible fact nor an all-abducible disjunctive fact."""
    patterns = ap.fact_patterns()
    offending: dict = {}
    for r in ap.program:
        if not r.head:
            continue
        hits = [p for p in patterns if any(_unifiable(p, h) for h in r.head)]
        if not hits:
            continue
        all_abducible = all(any(_unifiable(p, h) for p in patterns) for h in r.head)
        if r.body or not all_abducible:
            for p in hits:
                offending[p.key()] = p
    return [offending[k] for k in sorted(offending)]


def _unregistered_disjunctive_facts(ap: AbductiveProgram) -> list[Rule]:
    patterns = ap.fact_patterns()
    out = []
    for r in ap.program:
        if r.is_fact and len(r.head) > 1:
            if all(any(_unifiable(p, h) for p in patterns) for h in r.head) and r not in ap.abducibles:
                out.append(r)
    return sorted(out, key=Rule.key)


def _normalize(ap: AbductiveProgram) -> tuple[AbductiveProgram, tuple[tuple[Literal, Literal], ...]]:
    """Establish both assumptions, returning (fixed program, renames).

    Each offending abducible pattern L stops being abducible: a fresh
    abducible L' and a bridge rule L <- L' are introduced, and L is
    replaced by L' inside every fact made of abducibles only.  renames
    maps each fresh pattern back to its source pattern.
    """
    offending = _offending_patterns(ap)
    renames: list[tuple[Literal, Literal]] = []
    program_rules = list(ap.program)
    abducible_rules = list(ap.abducibles)
    if offending:
        patterns = ap.fact_patterns()

        def abducible_only_fact(r: Rule) -> bool:
            return r.is_fact and all(any(_unifiable(p, h) for p in patterns) for h in r.head)

        replacements: dict[Literal, Literal] = {}
        for i, pat in enumerate(offending, start=1):
            fresh = Literal(Atom(_FRESH % i, pat.atom.args))
            replacements[pat] = fresh
            renames.append((fresh, pat))
            program_rules.append(Rule([pat], [NafLiteral(fresh, False)]))
            abducible_rules = [r for r in abducible_rules if r != fact(pat)]
            abducible_rules.append(fact(fresh))

        def rewrite(lit: Literal) -> Literal:
            for pat, fresh in replacements.items():
                binding = _match(pat, lit)
                if binding is not None:
                    return fresh.substitute(binding)
            return lit

        rewritten = []
        for r in program_rules:
            if abducible_only_fact(r):
                rewritten.append(Rule([rewrite(h) for h in r.head], ()))
            else:
                rewritten.append(r)
        program_rules = rewritten
        abducible_rules = [
            Rule([rewrite(h) for h in r.head], r.body) if r.is_fact else r
            for r in abducible_rules
        ]
    fixed = AbductiveProgram(Program(program_rules), Program(abducible_rules))
    for extra in _unregistered_disjunctive_facts(fixed):
        abducible_rules.append(extra)
        fixed = AbductiveProgram(fixed.program, Program(abducible_rules))
    return fixed, tuple(renames)


def normalize_abducible_heads(ap: AbductiveProgram) -> AbductiveProgram:
    """Rewrite ap so both structural assumptions hold (identity if they do)."""
    fixed, _ = _normalize(ap)
    return fixed


# ---------------------------------------------------------------------------
# normal form: name away abducible rules and disjunctive facts


def _ordered_vars(rule: Rule) -> list[str]:
    return sorted(rule.variables(), key=lambda n: (len(n), n))


def normal_form(ap: AbductiveProgram) -> tuple[AbductiveProgram, NameMap]:
    """Replace every non-fact abducible R by a name atom: R's body gains the
    name, the name becomes the abducible, and a name fact is added when R
    is part of the program.  Change pairs correspond one to one."""
    named = sorted(
        (r for r in ap.abducibles if not (r.is_fact and len(r.head) == 1)), key=Rule.key
    )
    if not named:
        return ap, NameMap(())
    entries: list[tuple[Rule, Atom]] = []
    new_program: list[Rule] = [r for r in ap.program if r not in named]
    new_abducibles: list[Rule] = [r for r in ap.abducibles if r not in named]
    constants = ap.program.constants() | ap.abducibles.constants()
    for i, r in enumerate(named, start=1):
        name = Atom(_NAME % i, tuple(var(v) for v in _ordered_vars(r)))
        entries.append((r, name))
        name_lit = Literal(name)
        new_program.append(Rule(r.head, set(r.body) | {NafLiteral(name_lit, False)}))
        new_abducibles.append(fact(name_lit))
        if r in ap.program:
            new_program.append(fact(name_lit))
        elif r.variables() and constants:
            # the pattern is absent but single instances may still be present;
            # those instances leave the program and keep their name instead
            names = sorted(r.variables())
            if len(constants) ** len(names) > DEFAULT_CONFIG.max_ground_rules:
                raise GroundingBudgetExceeded(
                    "abducible %s has more instances than the budget of %d"
                    % (r, DEFAULT_CONFIG.max_ground_rules)
                )
            for combo in itertools.product(sorted(constants, key=Term.key), repeat=len(names)):
                binding = dict(zip(names, combo))
                inst = r.substitute(binding)
                if inst in ap.program:
                    new_program = [x for x in new_program if x != inst]
                    new_program.append(fact(name_lit.substitute(binding)))
    return AbductiveProgram(Program(new_program), Program(new_abducibles)), NameMap(tuple(entries))


# ---------------------------------------------------------------------------
# grounding and the update transformation


@dataclass(frozen=True)
class _Prepared:
    source: AbductiveProgram
    renames: tuple[tuple[Literal, Literal], ...]
    name_map: NameMap
    ground_program: Program
    abducible_literals: tuple[Literal, ...]
    in_program: frozenset[Literal]
    config: RunConfig


def _prepare(
    ap: AbductiveProgram, extra_constants: Iterable[Term] = (), config: RunConfig | None = None
) -> _Prepared:
    return _prepare_cached(ap, frozenset(extra_constants), config or DEFAULT_CONFIG)


@functools.lru_cache(maxsize=256)
def _prepare_cached(
    ap: AbductiveProgram, extra_constants: frozenset[Term], cfg: RunConfig
) -> _Prepared:
    fixed, renames = _normalize(ap)
    nf, name_map = normal_form(fixed)
    constants = nf.program.constants() | nf.abducibles.constants() | frozenset(extra_constants)
    gp = ground(nf.program, constants, cfg)
    insts: set[Literal] = set()
    for pattern in nf.fact_patterns():
        insts.update(_instances(pattern, constants, cfg))
    in_p = frozenset(l for l in insts if fact(l) in gp)
    return _Prepared(
        source=ap,
        renames=renames,
        name_map=name_map,
        ground_program=gp,
        abducible_literals=tuple(sorted(insts, key=Literal.key)),
        in_program=in_p,
        config=cfg,
    )


def _shadow_literal(lit: Literal) -> Literal:
    return Literal(Atom(_SHADOW % (0 if lit.positive else 1, lit.atom.predicate), lit.atom.args))


def _plus_literal(lit: Literal) -> Literal:
    return Literal(Atom(_PLUS % (0 if lit.positive else 1, lit.atom.predicate), lit.atom.args))


def _minus_literal(lit: Literal) -> Literal:
    return Literal(Atom(_MINUS % (0 if lit.positive else 1, lit.atom.predicate), lit.atom.args))


@dataclass(frozen=True)
class _UpdateParts:
    rules: Program
    plus_of: Mapping[Atom, Literal]
    minus_of: Mapping[Atom, Literal]
    shadows: frozenset[Atom]

    @property
    def update_atoms(self) -> frozenset[Atom]:
        return frozenset(self.plus_of) | frozenset(self.minus_of)


def _build_update(prep: _Prepared) -> _UpdateParts:
    abducible = set(prep.abducible_literals)
    rules = [
        r
        for r in prep.ground_program
        if not (r.is_fact and len(r.head) == 1 and next(iter(r.head)) in abducible)
    ]
    plus_of: dict[Atom, Literal] = {}
    minus_of: dict[Atom, Literal] = {}
    shadows: set[Atom] = set()
    for a in prep.abducible_literals:
        shadow = _shadow_literal(a)
        shadows.add(shadow.atom)
        if prep.config.encoding == "naf-pair":
            rules.append(Rule([a], [NafLiteral(shadow, True)]))
            rules.append(Rule([shadow], [NafLiteral(a, True)]))
        else:
            rules.append(Rule([a, shadow], ()))
        if a in prep.in_program:
            minus = _minus_literal(a)
            minus_of[minus.atom] = a
            rules.append(Rule([minus], [NafLiteral(a, True)]))
        else:
            plus = _plus_literal(a)
            plus_of[plus.atom] = a
            rules.append(Rule([plus], [NafLiteral(a, False)]))
    return _UpdateParts(Program(rules), plus_of, minus_of, frozenset(shadows))


def build_update_program(ap: AbductiveProgram, config: RunConfig | None = None) -> UpdateProgram:
    """Normalize, name, ground, and emit the update transformation of ap."""
    prep = _prepare(ap, (), config)
    parts = _build_update(prep)
    return UpdateProgram(
        rules=parts.rules,
        ua_plus=frozenset(parts.plus_of),
        ua_minus=frozenset(parts.minus_of),
        shadows=parts.shadows,
        name_map=prep.name_map,
        source=ap,
    )


def u_minimal_filter(result: AnswerSetResult, ua: Iterable[Atom]) -> AnswerSetResult:
    """Keep the consistent answer sets whose update-atom projection is not a
    strict superset of another's."""
    atoms = frozenset(ua)
    kept = list(result.consistent_sets)
    projections = [
        frozenset(l for l in s.literals if l.positive and l.atom in atoms) for s in kept
    ]
    out = [
        s
        for s, mine in zip(kept, projections)
        if not any(other < mine for other in projections)
    ]
    return AnswerSetResult(tuple(out), False)


# ---------------------------------------------------------------------------
# extraction, side conditions, and resolution back to source rules


def _check_literal_non_abducible(ap: AbductiveProgram, literal: Literal) -> None:
    for pattern in ap.fact_patterns():
        if _match(pattern, literal) is not None:
            raise AbducibleObservation(
                "observation %s is an instance of the abducible %s" % (literal, pattern)
            )


def _pairs_from_sets(sets, parts: _UpdateParts):
    out, seen = [], set()
    for s in sets:
        if s.marker:
            continue
        e = frozenset(
            parts.plus_of[l.atom] for l in s.literals if l.positive and l.atom in parts.plus_of
        )
        f = frozenset(
            parts.minus_of[l.atom] for l in s.literals if l.positive and l.atom in parts.minus_of
        )
        if (e, f) not in seen:
            seen.add((e, f))
            out.append((e, f))
    return out


def _apply_pair(prep: _Prepared, e, f, extra: Iterable[Rule] = ()) -> Program:
    rules = set(prep.ground_program.rules)
    rules -= {fact(l) for l in f}
    rules |= {fact(l) for l in e}
    rules |= set(extra)
    return Program(rules)


def _resolve(prep: _Prepared, lit: Literal) -> Rule:
    if prep.name_map.is_name(lit.atom.predicate):
        rule = prep.name_map.rule_for(lit.atom)
        if rule is not None:
            return rule
    for fresh, source in prep.renames:
        binding = _match(fresh, lit)
        if binding is not None:
            return fact(source.substitute(binding))
    return fact(lit)


def _emit(prep: _Prepared, pairs, mode: str, flags) -> tuple[Explanation, ...]:
    out = []
    for (e, f), flag in zip(pairs, flags):
        out.append(
            Explanation(
                add=[_resolve(prep, l) for l in e],
                remove=[_resolve(prep, l) for l in f],
                mode=mode,
                minimal=flag,
            )
        )
    return tuple(sorted(out, key=Explanation.sort_key))


def _componentwise_flags(pairs) -> list[bool]:
    return [
        not any(e2 <= e and f2 <= f and (e2, f2) != (e, f) for e2, f2 in pairs)
        for e, f in pairs
    ]


def _finish_pairs(prep: _Prepared, pairs, mode: str, minimal: bool) -> tuple[Explanation, ...]:
    flags = _componentwise_flags(pairs)
    if minimal:
        pairs = [p for p, flag in zip(pairs, flags) if flag]
        flags = [True] * len(pairs)
    return _emit(prep, pairs, mode, flags)


def _finish_credulous(
    prep: _Prepared, result: AnswerSetResult, parts: _UpdateParts, mode: str, minimal: bool
) -> tuple[Explanation, ...]:
    if minimal:
        kept = u_minimal_filter(result, parts.update_atoms)
        pairs = _pairs_from_sets(kept.sets, parts)
        return _emit(prep, pairs, mode, [True] * len(pairs))
    pairs = _pairs_from_sets(result.consistent_sets, parts)
    return _finish_pairs(prep, pairs, mode, minimal=False)


def explanations(
    ap: AbductiveProgram,
    obs: Observation,
    mode: str = CREDULOUS,
    minimal: bool = True,
    config: RunConfig | None = None,
) -> tuple[Explanation, ...]:
    """Change pairs making a positive observation hold.

    Credulous pairs are read off the consistent answer sets of the update
    program plus the goal constraint; minimal ones off the U-minimal sets.
    Skeptical pairs additionally require that forcing the observation
    false leaves no consistent answer set, with minimality judged among
    the pairs passing that test.
    """
    if obs.kind != POSITIVE:
        raise ValueError("explanations need a positive observation, got %s" % obs.kind)
    if mode not in (CREDULOUS, SKEPTICAL):
        raise ValueError("bad mode %r" % mode)
    cfg = config or DEFAULT_CONFIG
    _check_literal_non_abducible(ap, obs.literal)
    prep = _prepare(ap, _literal_constants(obs.literal), cfg)
    parts = _build_update(prep)
    goal = constraint([NafLiteral(obs.literal, True)])
    result = answer_sets(Program(parts.rules.rules | {goal}), cfg)
    if mode == CREDULOUS:
        return _finish_credulous(prep, result, parts, CREDULOUS, minimal)
    pairs = _pairs_from_sets(result.consistent_sets, parts)
    refute = constraint([NafLiteral(obs.literal, False)])
    passing = [
        (e, f)
        for e, f in pairs
        if not answer_sets(_apply_pair(prep, e, f, [refute]), cfg).has_consistent
    ]
    return _finish_pairs(prep, passing, SKEPTICAL, minimal)


def anti_explanations(
    ap: AbductiveProgram,
    obs: Observation,
    mode: str = CREDULOUS,
    minimal: bool = True,
    config: RunConfig | None = None,
) -> tuple[Explanation, ...]:
    """Change pairs making a negative observation fail, or (for bot)
    restoring consistency.

    Credulous pairs come from the update program plus the constraint
    forbidding the observation; for bot no constraint is needed.  The
    skeptical variant routes through a fresh witness atom that holds
    exactly when the observation is underivable.
    """
    if obs.kind not in (NEGATIVE, BOT):
        raise ValueError("anti-explanations need a negative or bot observation, got %s" % obs.kind)
    if mode not in (CREDULOUS, SKEPTICAL):
        raise ValueError("bad mode %r" % mode)
    if obs.kind == BOT and mode == SKEPTICAL:
        raise SkepticalBotUnsupported(
            "making the program consistent in every answer set and in some answer set coincide;"
            " use the credulous mode"
        )
    cfg = config or DEFAULT_CONFIG
    if obs.literal is not None:
        _check_literal_non_abducible(ap, obs.literal)
    prep = _prepare(ap, _literal_constants(obs.literal), cfg)
    parts = _build_update(prep)
    if obs.kind == BOT:
        result = answer_sets(parts.rules, cfg)
        return _finish_credulous(prep, result, parts, CREDULOUS, minimal)
    if mode == CREDULOUS:
        goal = constraint([NafLiteral(obs.literal, False)])
        result = answer_sets(Program(parts.rules.rules | {goal}), cfg)
        return _finish_credulous(prep, result, parts, CREDULOUS, minimal)
    witness = Literal(Atom(_ANTI_ATOM))
    bridge = Rule([witness], [NafLiteral(obs.literal, True)])
    goal = constraint([NafLiteral(witness, True)])
    result = answer_sets(Program(parts.rules.rules | {bridge, goal}), cfg)
    pairs = _pairs_from_sets(result.consistent_sets, parts)
    refute = constraint([NafLiteral(witness, False)])
    passing = [
        (e, f)
        for e, f in pairs
        if not answer_sets(_apply_pair(prep, e, f, [bridge, refute]), cfg).has_consistent
    ]
    return _finish_pairs(prep, passing, SKEPTICAL, minimal)


def compile_observations(
    ap: AbductiveProgram,
    positives: Iterable[Literal],
    negatives: Iterable[Literal] = (),
) -> tuple[AbductiveProgram, Observation]:
    """Fold several observations into one: a fresh goal atom holds when all
    positives are derived and no negative is.  Returns the extended
    program and the goal as a positive observation."""
    pos, neg = tuple(positives), tuple(negatives)
    if not pos and not neg:
        raise ValueError("at least one observation literal is required")
    for lit in pos + neg:
        if not lit.is_ground:
            raise ValueError("observation must be ground: %s" % lit)
        _check_literal_non_abducible(ap, lit)
    goal = Literal(Atom(_GOAL_ATOM))
    body = [NafLiteral(l, False) for l in pos] + [NafLiteral(l, True) for l in neg]
    extended = Program(list(ap.program.rules) + [Rule([goal], body)])
    return AbductiveProgram(extended, ap.abducibles), Observation.positive(goal)


# ---------------------------------------------------------------------------
# cross-check routes


def to_normal_abduction(
    ap: AbductiveProgram, config: RunConfig | None = None
) -> tuple[AbductiveProgram, tuple[tuple[Literal, Literal], ...]]:
    """Translate to introduction-only abduction.

    Every abducible fact already in the program is made non-abducible and
    guarded by a fresh prime hypothesis: a <- not a'.  Introducing a'
    then stands for removing a, so pairs (E, F) correspond to hypothesis
    sets E + primes(F) with minimality preserved.  Returns the translated
    program and the (abducible, prime) mapping.
    """
    cfg = config or DEFAULT_CONFIG
    for r in ap.abducibles:
        if not (r.is_fact and len(r.head) == 1):
            raise ValueError(
                "the translation needs fact-only abducibles; apply normal_form first"
            )
    constants = ap.program.constants() | ap.abducibles.constants()
    gp = ground(ap.program, constants, cfg)
    insts: set[Literal] = set()
    for pattern in ap.fact_patterns():
        insts.update(_instances(pattern, constants, cfg))
    in_p = sorted((l for l in insts if fact(l) in gp), key=Literal.key)
    out_p = sorted((l for l in insts if fact(l) not in gp), key=Literal.key)
    mapping = tuple(
        (a, Literal(Atom(_PRIME % (0 if a.positive else 1, a.atom.predicate), a.atom.args)))
        for a in in_p
    )
    removable = set(in_p)
    rules = [
        r
        for r in gp
        if not (r.is_fact and len(r.head) == 1 and next(iter(r.head)) in removable)
    ]
    rules += [Rule([a], [NafLiteral(prime, True)]) for a, prime in mapping]
    hypotheses = [fact(l) for l in out_p] + [fact(prime) for _, prime in mapping]
    return AbductiveProgram(Program(rules), Program(hypotheses)), mapping


def _condition_holds(result: AnswerSetResult, obs: Observation, mode: str) -> bool:
    if not result.has_consistent:
        return False
    if obs.kind == BOT:
        return True
    g = obs.literal
    sets = result.consistent_sets
    if obs.kind == POSITIVE:
        if mode == SKEPTICAL:
            return all(g in s.literals for s in sets)
        return any(g in s.literals for s in sets)
    if mode == SKEPTICAL:
        return all(g not in s.literals for s in sets)
    return any(g not in s.literals for s in sets)


def brute_force_explanations(
    ap: AbductiveProgram,
    obs: Observation,
    mode: str = CREDULOUS,
    minimal: bool = False,
    config: RunConfig | None = None,
    cap: int = ORACLE_CAP,
) -> tuple[Explanation, ...]:
    """Independent oracle: enumerate every pair over the ground abducible
    instances and test the definition directly with the solver.  No
    naming, no update transformation."""
    if obs.kind == BOT and mode == SKEPTICAL:
        raise SkepticalBotUnsupported("use the credulous mode for bot")
    if mode not in (CREDULOUS, SKEPTICAL):
        raise ValueError("bad mode %r" % mode)
    cfg = config or DEFAULT_CONFIG
    if obs.literal is not None:
        _check_literal_non_abducible(ap, obs.literal)
    constants = (
        ap.program.constants() | ap.abducibles.constants() | _literal_constants(obs.literal)
    )
    gp = ground(ap.program, constants, cfg)
    insts = sorted(ground(ap.abducibles, constants, cfg).rules, key=Rule.key)
    if len(insts) > cap:
        raise OracleBudgetExceeded(
            "%d ground abducible instances exceed the oracle cap of %d" % (len(insts), cap)
        )
    in_p = [r for r in insts if r in gp]
    out_p = [r for r in insts if r not in gp]
    base = gp.rules
    pairs = []
    for k_add in range(len(out_p) + 1):
        for e in itertools.combinations(out_p, k_add):
            for k_del in range(len(in_p) + 1):
                for f in itertools.combinations(in_p, k_del):
                    candidate = Program((base - frozenset(f)) | frozenset(e))
                    if _condition_holds(answer_sets(candidate, cfg), obs, mode):
                        pairs.append((frozenset(e), frozenset(f)))
    flags = _componentwise_flags(pairs)
    if minimal:
        pairs = [p for p, flag in zip(pairs, flags) if flag]
        flags = [True] * len(pairs)
    out = [
        Explanation(add=e, remove=f, mode=mode, minimal=flag)
        for (e, f), flag in zip(pairs, flags)
    ]
    return tuple(sorted(out, key=Explanation.sort_key))
