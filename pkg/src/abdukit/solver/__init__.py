"""Answer-set semantics for ground extended disjunctive programs.

Exhaustive enumeration over candidate sets, exact at desk scale.  The
contradictory set L_P is modeled explicitly: it is an answer set exactly
when the program's NAF-free part has no integrity constraint and no
consistent set satisfies it.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import DEFAULT_CONFIG, RunConfig
from ..core import AbdukitError, Literal, NafLiteral, Program, Rule, ground
from . import backend
from .encode import encode

_kernel = backend.load_kernel()
KERNEL_NAME: str = _kernel.NAME


class NonGroundRule(AbdukitError):
    """A rule with variables (or leftover builtins) reached the solver."""


class CandidateBudgetExceeded(AbdukitError):
    """The ground literal universe is larger than the configured cap."""


class NotNLP(AbdukitError):
    """The program is not a normal logic program."""


@dataclass(frozen=True)
class Interpretation:
    """A set of ground literals, or the contradictory marker L_P."""

    literals: frozenset[Literal] = frozenset()
    marker: bool = False

    def __post_init__(self) -> None:
        if self.marker:
            if self.literals:
                raise ValueError("the contradictory marker carries no literal set")
            return
        for lit in self.literals:
            if lit.complement() in self.literals:
                raise ValueError(
                    "interpretation contains the complementary pair %s / %s"
                    % (lit, lit.complement())
                )

    def contains(self, literal: Literal) -> bool:
        return self.marker or literal in self.literals

    def key(self):
        if self.marker:
            return (1, 0, ())
        return (0, len(self.literals), tuple(sorted(l.key() for l in self.literals)))

    def __str__(self) -> str:
        if self.marker:
            return "L_P"
        return "{%s}" % ", ".join(str(l) for l in sorted(self.literals, key=Literal.key))


CONTRADICTORY = Interpretation(marker=True)


@dataclass(frozen=True)
class AnswerSetResult:
    sets: tuple[Interpretation, ...] = ()
    contains_contradictory: bool = False

    @property
    def consistent_sets(self) -> tuple[Interpretation, ...]:
        return tuple(s for s in self.sets if not s.marker)

    @property
    def has_consistent(self) -> bool:
        return any(not s.marker for s in self.sets)

    def __str__(self) -> str:
        if not self.sets:
            return "(no answer sets)"
        return "\n".join(str(s) for s in self.sets)


def _check_solver_rule(r: Rule) -> None:
    if r.variables():
        raise NonGroundRule("rule has variables: %s" % r)
    if r.builtins():
        raise NonGroundRule("rule has unevaluated builtins: %s" % r)


def satisfies(s: Interpretation, r: Rule) -> bool:
    """Rule satisfaction on ground rules.

    The marker stands for the full literal set, so it meets any nonempty
    head and falsifies the body of any rule with a NAF element; a NAF-free
    constraint is the one shape it cannot satisfy.
    """
    _check_solver_rule(r)
    if s.marker:
        return bool(r.head) or bool(r.body_naf())
    lits = s.literals
    if r.body_pos() <= lits and not (r.body_naf() & lits):
        return bool(r.head & lits)
    return True


def reduct(p: Program, s: Interpretation) -> Program:
    """NAF-free transform: drop rules whose NAF part meets s, strip NAF."""
    out = []
    for r in p.sorted_rules():
        _check_solver_rule(r)
        naf = r.body_naf()
        if s.marker:
            if naf:
                continue
        elif naf & s.literals:
            continue
        out.append(Rule(r.head, [NafLiteral(l, False) for l in r.body_pos()]))
    return Program(out)


_CACHE: dict[frozenset[Rule], AnswerSetResult] = {}


def answer_sets(p: Program, config: RunConfig | None = None) -> AnswerSetResult:
    """All answer sets of a ground program, smallest first, marker last."""
    cfg = config or DEFAULT_CONFIG
    for r in p.rules:
        _check_solver_rule(r)
    occurring = p.literals()
    if len(occurring) > cfg.max_universe:
        raise CandidateBudgetExceeded(
            "%d ground literals occur, max_universe is %d"
            % (len(occurring), cfg.max_universe)
        )
    cached = _CACHE.get(p.rules)
    if cached is not None:
        return cached
    enc = encode(p)
    masks, contradictory = _kernel.enumerate_answer_sets(
        enc.forced,
        enc.free_mask,
        enc.conflict_first,
        enc.heads,
        enc.poss,
        enc.nafs,
        enc.notfree,
        enc.has_naf_free_constraint,
    )
    sets = sorted((Interpretation(enc.decode(m)) for m in masks), key=Interpretation.key)
    if contradictory:
        sets.append(CONTRADICTORY)
    result = AnswerSetResult(tuple(sets), contradictory)
    _CACHE[p.rules] = result
    return result


def consistent(p: Program, config: RunConfig | None = None) -> bool:
    """Whether p has a consistent answer set.  Grounds internally."""
    cfg = config or DEFAULT_CONFIG
    return answer_sets(ground(p, config=cfg), cfg).has_consistent


def entails(p: Program, literal: Literal, config: RunConfig | None = None) -> bool:
    """literal belongs to every answer set (vacuously true with none)."""
    cfg = config or DEFAULT_CONFIG
    result = answer_sets(ground(p, config=cfg), cfg)
    return all(s.contains(literal) for s in result.sets)


def credulous_holds(p: Program, literal: Literal, config: RunConfig | None = None) -> bool:
    """literal belongs to some consistent answer set."""
    cfg = config or DEFAULT_CONFIG
    result = answer_sets(ground(p, config=cfg), cfg)
    return any(literal in s.literals for s in result.consistent_sets)


def is_stratified(p: Program, require_nlp: bool = False) -> bool:
    """Whether a ground normal program has no recursion through NAF.

    Normal means: singleton positive heads, positive body atoms, no strong
    negation, no builtins.  Non-NLP input returns False, or raises NotNLP
    when require_nlp is set.
    """
    pos_edges: set[tuple] = set()
    neg_edges: set[tuple] = set()
    for r in p.rules:
        if r.variables():
            raise NonGroundRule("rule has variables: %s" % r)
        nlp = (
            len(r.head) == 1
            and all(l.positive for l in r.head)
            and not r.builtins()
            and all(l.positive for l in r.body_pos() | r.body_naf())
        )
        if not nlp:
            if require_nlp:
                raise NotNLP("not a normal logic program rule: %s" % r)
            return False
        (head,) = r.head
        for l in r.body_pos():
            pos_edges.add((head.atom, l.atom))
        for l in r.body_naf():
            neg_edges.add((head.atom, l.atom))

    adjacency: dict = {}
    for u, v in pos_edges | neg_edges:
        adjacency.setdefault(u, set()).add(v)

    def reaches(src, dst) -> bool:
        seen = set()
        stack = [src]
        while stack:
            node = stack.pop()
            if node == dst:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency.get(node, ()))
        return False

    return not any(reaches(v, u) for u, v in neg_edges)


_REFERENCE_LIMIT = 16


def reference_answer_sets(p: Program) -> AnswerSetResult:
    """Brute force straight off the definitions, for cross-checking.

    Enumerates every subset of the occurring literals; no head-zone
    restriction, no forced core, no rule dropping.  Bounded to 16
    literals.
    """
    occ = sorted(p.literals(), key=Literal.key)
    if len(occ) > _REFERENCE_LIMIT:
        raise AbdukitError(
            "reference solver is bounded to %d occurring literals" % _REFERENCE_LIMIT
        )
    index = {l: i for i, l in enumerate(occ)}

    def consistent_mask(m: int) -> bool:
        for i, l in enumerate(occ):
            if m >> i & 1:
                j = index.get(l.complement())
                if j is not None and m >> j & 1:
                    return False
        return True

    rule_masks = []
    for r in p.sorted_rules():
        _check_solver_rule(r)
        head = sum(1 << index[l] for l in r.head)
        pos = sum(1 << index[l] for l in r.body_pos())
        naf = sum(1 << index[l] for l in r.body_naf())
        rule_masks.append((head, pos, naf, r.is_naf_free))

    def satisfies_reduct(m: int, wrt: int) -> bool:
        for head, pos, naf, _ in rule_masks:
            if naf & wrt:
                continue  # dropped by the reduct
            if pos & ~m == 0 and head & m == 0:
                return False
        return True

    found: list[Interpretation] = []
    for m in range(1 << len(occ)):
        if not consistent_mask(m):
            continue
        if not satisfies_reduct(m, m):
            continue
        minimal = True
        if m:
            sub = (m - 1) & m
            while True:
                if consistent_mask(sub) and satisfies_reduct(sub, m):
                    minimal = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & m
        if not minimal:
            continue
        found.append(Interpretation(frozenset(l for i, l in enumerate(occ) if m >> i & 1)))

    # the contradictory set: satisfies the reduct-by-L_P iff the NAF-free
    # part has no constraint; minimal iff that part has no consistent model
    nf_constraint = any(flag and head == 0 for head, _, _, flag in rule_masks)
    contradictory = False
    if not nf_constraint:
        exists = False
        for m in range(1 << len(occ)):
            if not consistent_mask(m):
                continue
            ok = True
            for head, pos, naf, flag in rule_masks:
                if flag and pos & ~m == 0 and head & m == 0:
                    ok = False
                    break
            if ok:
                exists = True
                break
        contradictory = not exists
    sets = sorted(found, key=Interpretation.key)
    if contradictory:
        sets.append(CONTRADICTORY)
    return AnswerSetResult(tuple(sets), contradictory)
