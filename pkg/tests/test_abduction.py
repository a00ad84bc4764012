"""Tests for extended abduction: transformations, explanations, oracles."""

from __future__ import annotations

import pytest

from abdukit.abduction import (
    BOT,
    CREDULOUS,
    NEGATIVE,
    POSITIVE,
    SKEPTICAL,
    AbducibleObservation,
    AbductiveProgram,
    Explanation,
    Observation,
    OracleBudgetExceeded,
    SkepticalBotUnsupported,
    anti_explanations,
    brute_force_explanations,
    build_update_program,
    compile_observations,
    explanations,
    normal_form,
    normalize_abducible_heads,
    u_minimal_filter,
)
from abdukit.config import RunConfig
from abdukit.core import Atom, Literal, Program, const, fact, var
from abdukit.parser import parse, parse_rule
from abdukit.solver import answer_sets


def ap_from(text: str) -> AbductiveProgram:
    unit = parse(text)
    return AbductiveProgram(unit.program, unit.abducibles)


def pairs(exps) -> set:
    return {
        (
            frozenset(str(r) for r in e.add),
            frozenset(str(r) for r in e.remove),
        )
        for e in exps
    }


def expect(*changes) -> set:
    out = set()
    for add, remove in changes:
        out.add(
            (
                frozenset(str(parse_rule(s)) for s in add),
                frozenset(str(parse_rule(s)) for s in remove),
            )
        )
    return out


CHAIN = """
p :- b.
q :- a, not b.
a.
#abducible a.
#abducible b.
"""


# ---------------------------------------------------------------------------
# observations


def test_observation_kinds_and_validation():
    p = Literal(Atom("p"))
    assert Observation.positive(p).kind == POSITIVE
    assert Observation.negative(p).kind == NEGATIVE
    assert Observation.bot().kind == BOT
    assert Observation.bot().literal is None
    with pytest.raises(ValueError):
        Observation("maybe", p)
    with pytest.raises(ValueError):
        Observation(BOT, p)
    with pytest.raises(ValueError):
        Observation(POSITIVE, None)
    with pytest.raises(ValueError):
        Observation.positive(Literal(Atom("p", (var("X"),))))
    assert str(Observation.negative(p)) == "not p"
    assert str(Observation.bot()) == "bot"


def test_abducible_observation_rejected():
    ap = ap_from(CHAIN)
    with pytest.raises(AbducibleObservation):
        explanations(ap, Observation.positive(Literal(Atom("a"))))
    with pytest.raises(AbducibleObservation):
        anti_explanations(ap, Observation.negative(Literal(Atom("b"))))
    with pytest.raises(AbducibleObservation):
        brute_force_explanations(ap, Observation.positive(Literal(Atom("a"))))


def test_observation_kind_must_match_direction():
    ap = ap_from(CHAIN)
    with pytest.raises(ValueError):
        explanations(ap, Observation.negative(Literal(Atom("p"))))
    with pytest.raises(ValueError):
        anti_explanations(ap, Observation.positive(Literal(Atom("p"))))
    with pytest.raises(ValueError):
        explanations(ap, Observation.positive(Literal(Atom("p"))), mode="guess")


# ---------------------------------------------------------------------------
# explanation values


def test_explanation_canonicalizes_and_sorts():
    r1 = parse_rule("s(X) :- t(X).")
    r2 = parse_rule("s(Y) :- t(Y).")
    e = Explanation(add=[r1], remove=[])
    assert e.add == frozenset([r2])
    assert e.size == 1
    small = Explanation(add=[parse_rule("a.")])
    assert small.sort_key() < Explanation(add=[parse_rule("a."), parse_rule("b.")]).sort_key()
    assert str(Explanation()) == "(no change)"
    assert str(Explanation(add=[parse_rule("a.")], remove=[parse_rule("b.")])) == "+a. -b."


# ---------------------------------------------------------------------------
# structural assumptions


def test_head_occurrence_is_detected():
    ap = ap_from("a :- q.\nq.\n#abducible a.")
    assert not ap.satisfies_assumptions()
    fixed = normalize_abducible_heads(ap)
    assert fixed.satisfies_assumptions()
    # a is no longer abducible; a fresh hypothesis feeds it through a bridge
    assert fact(Literal(Atom("a"))) not in fixed.abducibles
    bridges = [r for r in fixed.program if any(str(h) == "a" for h in r.head) and r.body]
    assert any("__a" in str(r) for r in bridges)


def test_mixed_disjunctive_fact_is_not_rewritten():
    # the offending fact mentions a non-abducible, so only the abducible
    # status of a changes; the fact itself stays
    ap = ap_from("a; c.\n#abducible a.\n#abducible b.")
    fixed = normalize_abducible_heads(ap)
    assert parse_rule("a; c.") in fixed.program
    assert fact(Literal(Atom("a"))) not in fixed.abducibles
    assert fact(Literal(Atom("b"))) in fixed.abducibles
    assert fixed.satisfies_assumptions()


def test_all_abducible_facts_are_rewritten_and_registered():
    ap = ap_from("a; b.\na :- q.\nq.\n#abducible a.\n#abducible b.")
    fixed = normalize_abducible_heads(ap)
    # a leaves the hypothesis set, so the all-abducible fact a; b is
    # rewritten with the fresh hypothesis and registered as abducible
    rewritten = [r for r in fixed.program if r.is_fact and len(r.head) == 2]
    assert len(rewritten) == 1
    assert rewritten[0] in fixed.abducibles
    assert fixed.satisfies_assumptions()


def test_conforming_program_is_left_alone():
    ap = ap_from(CHAIN)
    assert ap.satisfies_assumptions()
    assert normalize_abducible_heads(ap) == ap


def test_unregistered_disjunctive_fact_becomes_abducible():
    ap = ap_from("a; b.\n#abducible a.\n#abducible b.")
    fixed = normalize_abducible_heads(ap)
    assert parse_rule("a; b.") in fixed.abducibles
    assert fixed.satisfies_assumptions()


# ---------------------------------------------------------------------------
# normal form


def test_normal_form_keeps_fact_only_programs():
    ap = ap_from(CHAIN)
    nf, names = normal_form(ap)
    assert nf == ap
    assert names.entries == ()


def test_normal_form_names_rule_abducibles():
    ap = ap_from(
        """
flies(X) :- bird(X).
bird(X) :- penguin(X).
bird(polly).
penguin(tweety).
#abducible flies(X) :- bird(X).
#abducible -flies(X) :- penguin(X).
"""
    )
    nf, names = normal_form(ap)
    got = {str(r) for r in nf.program}
    assert got == {
        "__n1(V1).",
        "bird(polly).",
        "bird(V1) :- penguin(V1).",
        "flies(V1) :- __n1(V1), bird(V1).",
        "penguin(tweety).",
        "-flies(V1) :- __n2(V1), penguin(V1).",
    }
    assert {str(r) for r in nf.abducibles} == {"__n1(V1).", "__n2(V1)."}
    # the positive rule is in the program, so only its name has a fact
    flies_rule = parse_rule("flies(X) :- bird(X).")
    name = names.name_for(flies_rule)
    assert name is not None and name.predicate == "__n1"
    # ground name instances decode back to ground rule instances
    back = names.rule_for(Atom("__n1", (const("tweety"),)))
    assert back == parse_rule("flies(tweety) :- bird(tweety).")
    assert names.is_name("__n2") and not names.is_name("flies")


def test_normal_form_names_disjunctive_facts():
    ap = ap_from(
        """
p :- a.
p :- b.
a; b.
#abducible a.
#abducible b.
#abducible a; b.
"""
    )
    nf, names = normal_form(ap)
    assert {str(r) for r in nf.program} == {"__n1.", "a ; b :- __n1.", "p :- a.", "p :- b."}
    assert {str(r) for r in nf.abducibles} == {"__n1.", "a.", "b."}
    assert names.rule_for(Atom("__n1")) == parse_rule("a; b.")


def test_normal_form_names_single_present_instances():
    ap = ap_from(
        """
flies(tweety) :- bird(tweety).
bird(tweety).
bird(polly).
#abducible flies(X) :- bird(X).
"""
    )
    nf, _ = normal_form(ap)
    got = {str(r) for r in nf.program}
    # the bare instance leaves the program; its name instance stands for it
    assert "flies(tweety) :- bird(tweety)." not in got
    assert "__n1(tweety)." in got
    assert "__n1(polly)." not in got
    assert "flies(V1) :- __n1(V1), bird(V1)." in got


# ---------------------------------------------------------------------------
# the update transformation


def test_update_program_structure():
    ap = ap_from(CHAIN)
    up = build_update_program(ap)
    assert {str(r) for r in up.rules} == {
        "p :- b.",
        "q :- a, not b.",
        "a :- not __not0_a.",
        "__not0_a :- not a.",
        "b :- not __not0_b.",
        "__not0_b :- not b.",
        "__del0_a :- not a.",
        "__add0_b :- b.",
    }
    assert {str(a) for a in up.ua_plus} == {"__add0_b"}
    assert {str(a) for a in up.ua_minus} == {"__del0_a"}
    assert {str(a) for a in up.shadows} == {"__not0_a", "__not0_b"}
    assert up.update_atoms == up.ua_plus | up.ua_minus


def test_update_program_answer_sets_and_minimality():
    ap = ap_from(CHAIN)
    up = build_update_program(ap)
    res = answer_sets(up.rules)
    projections = {
        frozenset(str(l) for l in s.literals if not str(l).startswith("__not"))
        for s in res.sets
    }
    assert projections == {
        frozenset({"a", "b", "p", "__add0_b"}),
        frozenset({"b", "p", "__add0_b", "__del0_a"}),
        frozenset({"a", "q"}),
        frozenset({"__del0_a"}),
    }
    kept = u_minimal_filter(res, up.update_atoms)
    assert len(kept.sets) == 1
    assert {str(l) for l in kept.sets[0].literals if not str(l).startswith("__")} == {"a", "q"}
    assert not kept.contains_contradictory


def test_u_minimal_filter_keeps_equal_projections():
    ap = ap_from("p :- a.\nq :- a.\n#abducible a.")
    up = build_update_program(ap)
    res = answer_sets(up.rules)
    kept = u_minimal_filter(res, up.update_atoms)
    # the empty-change set projects to {}, strictly below {+a}
    assert len(kept.sets) == 1


def test_update_program_disjunctive_fact_encoding():
    cfg = RunConfig(encoding="disjunctive-fact")
    ap = ap_from(CHAIN)
    up = build_update_program(ap, cfg)
    assert "__not0_a ; a." in {str(r) for r in up.rules}
    res = answer_sets(up.rules, cfg)
    kept = u_minimal_filter(res, up.update_atoms)
    assert len(kept.sets) == 1


# ---------------------------------------------------------------------------
# explanations on the chain program


def test_explain_positive_chain():
    ap = ap_from(CHAIN)
    goal = Observation.positive(Literal(Atom("p")))
    assert pairs(explanations(ap, goal, CREDULOUS, True)) == expect((["b."], []))
    allp = explanations(ap, goal, CREDULOUS, False)
    assert pairs(allp) == expect((["b."], []), (["b."], ["a."]))
    flags = {frozenset(str(r) for r in e.remove): e.minimal for e in allp}
    assert flags[frozenset()] is True
    assert flags[frozenset({"a."})] is False
    assert pairs(explanations(ap, goal, SKEPTICAL, True)) == expect((["b."], []))


def test_anti_explain_negative_chain():
    ap = ap_from(CHAIN)
    goal = Observation.negative(Literal(Atom("q")))
    got = anti_explanations(ap, goal, CREDULOUS, True)
    assert pairs(got) == expect((["b."], []), ([], ["a."]))
    assert all(e.minimal for e in got)
    assert pairs(anti_explanations(ap, goal, SKEPTICAL, True)) == expect(
        (["b."], []), ([], ["a."])
    )


def test_combined_observations_chain():
    ap = ap_from(CHAIN)
    extended, goal = compile_observations(
        ap, [Literal(Atom("p"))], [Literal(Atom("q"))]
    )
    assert goal.kind == POSITIVE
    got = explanations(extended, goal, SKEPTICAL, True)
    assert pairs(got) == expect((["b."], []))
    assert pairs(explanations(extended, goal, CREDULOUS, True)) == expect((["b."], []))


def test_compile_observations_validation():
    ap = ap_from(CHAIN)
    with pytest.raises(ValueError):
        compile_observations(ap, [], [])
    with pytest.raises(AbducibleObservation):
        compile_observations(ap, [Literal(Atom("a"))])
    with pytest.raises(ValueError):
        compile_observations(ap, [Literal(Atom("p", (var("X"),)))])


# ---------------------------------------------------------------------------
# credulous and skeptical diverge on disjunction


DISJUNCTIVE = """
p; q :- a.
-q :- not b.
b.
#abducible a.
#abducible b.
"""


def test_credulous_explanations_disjunctive():
    ap = ap_from(DISJUNCTIVE)
    goal = Observation.positive(Literal(Atom("p")))
    assert pairs(explanations(ap, goal, CREDULOUS, False)) == expect(
        (["a."], []), (["a."], ["b."])
    )
    assert pairs(explanations(ap, goal, CREDULOUS, True)) == expect((["a."], []))


def test_skeptical_explanations_disjunctive():
    ap = ap_from(DISJUNCTIVE)
    goal = Observation.positive(Literal(Atom("p")))
    assert pairs(explanations(ap, goal, SKEPTICAL, False)) == expect((["a."], ["b."]))
    assert pairs(explanations(ap, goal, SKEPTICAL, True)) == expect((["a."], ["b."]))


# ---------------------------------------------------------------------------
# variables ground against program constants


def test_explanations_ground_variable_abducibles():
    ap = ap_from(
        """
g :- p(X), not r.
r :- q(a).
q(a).
q(b).
#abducible p(X).
#abducible q(X).
"""
    )
    goal = Observation.positive(Literal(Atom("g")))
    assert pairs(explanations(ap, goal, SKEPTICAL, True)) == expect(
        (["p(a)."], ["q(a)."]), (["p(b)."], ["q(a)."])
    )


def test_rule_abducibles_explain_through_names():
    ap = ap_from(
        """
flies(X) :- bird(X).
bird(X) :- penguin(X).
bird(polly).
penguin(tweety).
#abducible flies(X) :- bird(X).
#abducible -flies(X) :- penguin(X).
"""
    )
    cfg = RunConfig(max_universe=24)
    goal = Observation.positive(Literal(Atom("flies", (const("tweety"),)), positive=False))
    got = explanations(ap, goal, SKEPTICAL, True, cfg)
    assert pairs(got) == expect(
        ((["-flies(tweety) :- penguin(tweety)."], ["flies(tweety) :- bird(tweety)."]))
    )


def test_disjunctive_fact_abducible_round_trip():
    ap = ap_from(
        """
p :- a.
p :- b.
a; b.
#abducible a.
#abducible b.
#abducible a; b.
"""
    )
    goal = Observation.negative(Literal(Atom("p")))
    for mode in (CREDULOUS, SKEPTICAL):
        got = anti_explanations(ap, goal, mode, True)
        assert pairs(got) == expect(([], ["a; b."]))


# ---------------------------------------------------------------------------
# consistency restoration


def test_bot_restores_consistency():
    ap = ap_from("p.\n-p.\n#abducible p.")
    got = anti_explanations(ap, Observation.bot(), CREDULOUS, True)
    assert pairs(got) == expect(([], ["p."]))


def test_bot_on_consistent_program_needs_no_change():
    ap = ap_from(CHAIN)
    got = anti_explanations(ap, Observation.bot(), CREDULOUS, True)
    assert pairs(got) == {(frozenset(), frozenset())}


def test_bot_skeptical_is_rejected():
    ap = ap_from(CHAIN)
    with pytest.raises(SkepticalBotUnsupported):
        anti_explanations(ap, Observation.bot(), SKEPTICAL)
    with pytest.raises(SkepticalBotUnsupported):
        brute_force_explanations(ap, Observation.bot(), SKEPTICAL)


# ---------------------------------------------------------------------------
# well-formedness of results


def test_additions_and_removals_partition():
    ap = ap_from(CHAIN)
    goal = Observation.positive(Literal(Atom("p")))
    for mode in (CREDULOUS, SKEPTICAL):
        for exp in explanations(ap, goal, mode, False):
            assert not exp.add & exp.remove
            for r in exp.add:
                assert r not in ap.program
            for r in exp.remove:
                assert r in ap.program
            assert exp.mode == mode


def test_results_are_sorted_and_deduplicated():
    ap = ap_from(CHAIN)
    goal = Observation.negative(Literal(Atom("q")))
    got = anti_explanations(ap, goal, CREDULOUS, True)
    keys = [e.sort_key() for e in got]
    assert keys == sorted(keys)
    assert len(got) == len(set(pairs(got)))


# ---------------------------------------------------------------------------
# the brute-force oracle


def test_oracle_matches_on_chain():
    ap = ap_from(CHAIN)
    goal = Observation.positive(Literal(Atom("p")))
    for mode in (CREDULOUS, SKEPTICAL):
        for minimal in (False, True):
            assert pairs(explanations(ap, goal, mode, minimal)) == pairs(
                brute_force_explanations(ap, goal, mode, minimal)
            )
    anti = Observation.negative(Literal(Atom("q")))
    for mode in (CREDULOUS, SKEPTICAL):
        for minimal in (False, True):
            assert pairs(anti_explanations(ap, anti, mode, minimal)) == pairs(
                brute_force_explanations(ap, anti, mode, minimal)
            )


def test_oracle_budget():
    rules = ["p(a%d)." % i for i in range(13)]
    text = "\n".join(rules) + "\n#abducible p(X).\nq :- p(a0).\n"
    ap = ap_from(text)
    with pytest.raises(OracleBudgetExceeded):
        brute_force_explanations(ap, Observation.positive(Literal(Atom("q"))))
    # a raised cap allows the run
    got = brute_force_explanations(
        ap, Observation.positive(Literal(Atom("q"))), CREDULOUS, True, cap=13
    )
    assert pairs(got) == {(frozenset(), frozenset())}
