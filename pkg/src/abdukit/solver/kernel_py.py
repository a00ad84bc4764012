"""Pure-Python enumeration kernel.

Same contract as the compiled kernel in _kernel.pyx: keep the two in
lockstep (tests/test_kernel_equivalence.py holds them together).
"""

from __future__ import annotations

from typing import Sequence

NAME = "python"


def enumerate_answer_sets(
    forced: int,
    free_mask: int,
    conflict_first: int,
    heads: Sequence[int],
    poss: Sequence[int],
    nafs: Sequence[int],
    notfree: Sequence[int],
    has_naf_free_constraint: bool,
) -> tuple[list[int], bool]:
    """Enumerate answer-set masks over the head zone.

    Returns (masks of consistent answer sets, whether the contradictory
    set is an answer set).  Candidates are forced | s for every submask s
    of free_mask; a candidate is an answer set when it satisfies every
    rule and no proper subset above `forced` satisfies its reduct.
    """
    n = len(heads)
    rules = list(zip(heads, poss, nafs, notfree))
    answers: list[int] = []

    if forced & (forced >> 1) & conflict_first == 0:
        s = free_mask
        while True:
            cand = forced | s
            if cand & (cand >> 1) & conflict_first == 0:
                ok = True
                for head, pos, naf, _ in rules:
                    if naf & cand == 0 and pos & ~cand == 0 and head & cand == 0:
                        ok = False
                        break
                if ok and _is_minimal(cand, s, forced, rules):
                    answers.append(cand)
            if s == 0:
                break
            s = (s - 1) & free_mask

    contradictory = False
    if not has_naf_free_constraint:
        found = False
        if forced & (forced >> 1) & conflict_first == 0:
            s = free_mask
            while True:
                cand = forced | s
                if cand & (cand >> 1) & conflict_first == 0:
                    ok = True
                    for head, pos, naf, flag in rules:
                        if flag and pos & ~cand == 0 and head & cand == 0:
                            ok = False
                            break
                    if ok:
                        found = True
                        break
                if s == 0:
                    break
                s = (s - 1) & free_mask
        contradictory = not found
    return answers, contradictory


def _is_minimal(cand: int, s: int, forced: int, rules) -> bool:
    if s == 0:
        return True
    reduct = [(h, p) for h, p, naf, _ in rules if naf & cand == 0]
    y = (s - 1) & s
    while True:
        sub = forced | y
        ok = True
        for head, pos in reduct:
            if pos & ~sub == 0 and head & sub == 0:
                ok = False
                break
        if ok:
            return False
        if y == 0:
            break
        y = (y - 1) & s
    return True
