"""Bitmask encoding of a ground program for the enumeration kernels.

Layout: complementary pairs whose two literals both occur in some head sit
at adjacent bit positions (positive literal on the even bit), then the
remaining head literals.  Candidate answer sets only ever contain head
literals, so body-only literals get no bit: a rule whose positive body
mentions one can never fire and is dropped, and such literals are stripped
from NAF masks.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import AbdukitError, Literal, Program

_MAX_BITS = 62


@dataclass(frozen=True)
class Encoding:
    layout: tuple[Literal, ...]
    forced: int
    free_mask: int
    conflict_first: int
    heads: tuple[int, ...]
    poss: tuple[int, ...]
    nafs: tuple[int, ...]
    notfree: tuple[int, ...]
    has_naf_free_constraint: bool

    def decode(self, mask: int) -> frozenset[Literal]:
        out = []
        for i, lit in enumerate(self.layout):
            if mask >> i & 1:
                out.append(lit)
        return frozenset(out)


def encode(program: Program) -> Encoding:
    rules = program.sorted_rules()
    head_lits: set[Literal] = set()
    for r in rules:
        head_lits |= r.head

    paired_atoms = sorted(
        {l.atom for l in head_lits if l.complement() in head_lits and l.positive},
        key=lambda a: a.key(),
    )
    layout: list[Literal] = []
    conflict_first = 0
    for atom in paired_atoms:
        conflict_first |= 1 << len(layout)
        layout.append(Literal(atom, True))
        layout.append(Literal(atom, False))
    in_pairs = set(layout)
    for lit in sorted(head_lits - in_pairs, key=Literal.key):
        layout.append(lit)
    if len(layout) > _MAX_BITS:
        raise AbdukitError(
            "head zone has %d literals; the kernel supports at most %d"
            % (len(layout), _MAX_BITS)
        )
    index = {lit: i for i, lit in enumerate(layout)}

    heads: list[int] = []
    poss: list[int] = []
    nafs: list[int] = []
    notfree: list[int] = []
    has_nf_constraint = False
    # constraints first: they are the cheapest early rejections
    for r in sorted(rules, key=lambda r: (not r.is_constraint,)):
        if r.is_constraint and r.is_naf_free:
            has_nf_constraint = True
        pos = 0
        out_of_zone = False
        for lit in r.body_pos():
            i = index.get(lit)
            if i is None:
                out_of_zone = True
                break
            pos |= 1 << i
        if out_of_zone:
            continue  # can never fire on head-zone candidates
        head = 0
        for lit in r.head:
            head |= 1 << index[lit]
        naf = 0
        for lit in r.body_naf():
            i = index.get(lit)
            if i is not None:
                naf |= 1 << i
        heads.append(head)
        poss.append(pos)
        nafs.append(naf)
        notfree.append(int(r.is_naf_free))

    # least fixpoint of the NAF-free definite rules: a subset of every
    # satisfier of every reduct, so enumeration can start above it
    forced = 0
    changed = True
    while changed:
        changed = False
        for head, pos, _, flag in zip(heads, poss, nafs, notfree):
            if flag and head and head & (head - 1) == 0:
                if pos & ~forced == 0 and head & forced != head:
                    forced |= head
                    changed = True
    zone_mask = (1 << len(layout)) - 1
    return Encoding(
        layout=tuple(layout),
        forced=forced,
        free_mask=zone_mask & ~forced,
        conflict_first=conflict_first,
        heads=tuple(heads),
        poss=tuple(poss),
        nafs=tuple(nafs),
        notfree=tuple(notfree),
        has_naf_free_constraint=has_nf_constraint,
    )
