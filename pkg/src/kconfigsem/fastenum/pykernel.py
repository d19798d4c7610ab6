"""Pure-Python enumeration kernel.

Interprets the compiled form produced by :mod:`.compile`.  The C
kernel implements the same loop; when the extension is unavailable
this module is the import-time fallback.
"""

from __future__ import annotations

from .compile import (
    BOUND_CONST,
    CompiledEnumeration,
    DEF_ENTRY_SLOT,
    OP_AND,
    OP_CONST,
    OP_EQ,
    OP_NOT,
    OP_OR,
    OP_SLOT,
    TAG_STR,
    TAG_TRI,
)


def _eval_program(prog, idx, eval_tri, strid):
    stack = []
    push = stack.append
    i = 0
    n = len(prog)
    while i < n:
        op = prog[i]
        if op == OP_SLOT:
            s = prog[i + 1]
            push(eval_tri[s][idx[s]])
            i += 2
        elif op == OP_CONST:
            push(prog[i + 1])
            i += 2
        elif op == OP_NOT:
            stack[-1] = 2 - stack[-1]
            i += 1
        elif op == OP_AND:
            b = stack.pop()
            if b < stack[-1]:
                stack[-1] = b
            i += 1
        elif op == OP_OR:
            b = stack.pop()
            if b > stack[-1]:
                stack[-1] = b
            i += 1
        else:  # OP_EQ / OP_NEQ
            kx, px, ky, py = prog[i + 1 : i + 5]
            sx = strid[px][idx[px]] if kx else px
            sy = strid[py][idx[py]] if ky else py
            same = 2 if sx == sy else 0
            push(same if op == OP_EQ else 2 - same)
            i += 5
    return stack[-1]


def _assignment_valid(c: CompiledEnumeration, idx) -> bool:
    programs = c.programs
    eval_tri = c.cand_eval_tri
    tags = c.cand_tag
    strids = c.cand_strid
    has_num = c.cand_has_num
    nums = c.cand_num
    empties = c.cand_is_empty

    def ev(index: int) -> int:
        return _eval_program(programs[index], idx, eval_tri, strids)

    for cfg in c.configs:
        slot = cfg.slot
        j = idx[slot]
        v = eval_tri[slot][j]
        lower = ev(cfg.rev)
        if v < lower:
            return False
        upper = ev(cfg.prompt)
        if upper != 0 and lower <= upper and v > upper:
            return False
        if upper == 0:
            # Invisible: the default pins the value.
            if cfg.tri_type:
                chosen = 0
                for cond, kind, a, _b in cfg.defaults:
                    if ev(cond) > 0:
                        chosen = ev(a)
                        break
                forced = chosen if chosen > lower else lower
                if v != forced:
                    return False
            else:
                rtag = TAG_STR
                rstr = c.empty_strid
                for cond, kind, a, b in cfg.defaults:
                    if ev(cond) > 0:
                        if kind == DEF_ENTRY_SLOT:
                            rtag = tags[a][idx[a]]
                            rstr = strids[a][idx[a]]
                        else:
                            rtag, rstr = a, b
                        break
                if tags[slot][j] != rtag or strids[slot][j] != rstr:
                    return False
        if cfg.ranges and not empties[slot][j]:
            value_has = has_num[slot][j]
            value_num = nums[slot][j]
            for cond, lo_kind, lo_a, hi_kind, hi_a in cfg.ranges:
                if ev(cond) <= 0:
                    continue
                if not value_has:
                    return False
                if lo_kind == BOUND_CONST:
                    lo_ok, lo = 1, lo_a
                else:
                    lo_ok, lo = has_num[lo_a][idx[lo_a]], nums[lo_a][idx[lo_a]]
                if hi_kind == BOUND_CONST:
                    hi_ok, hi = 1, hi_a
                else:
                    hi_ok, hi = has_num[hi_a][idx[hi_a]], nums[hi_a][idx[hi_a]]
                if not lo_ok or not hi_ok:
                    return False
                if value_num < lo or value_num > hi:
                    return False

    for ch in c.choices:
        if ev(ch.prompt) <= 0:
            continue
        y_count = 0
        active = 0
        for slot in ch.member_slots:
            if tags[slot][idx[slot]] == TAG_TRI:
                rank = eval_tri[slot][idx[slot]]
                if rank == 2:
                    y_count += 1
                if rank > 0:
                    active += 1
        if y_count > 1:
            return False
        if y_count == 1:
            for slot in ch.member_slots:
                tri = tags[slot][idx[slot]] == TAG_TRI
                rank = eval_tri[slot][idx[slot]] if tri else -1
                if not (tri and (rank == 0 or rank == 2)):
                    return False
        if ch.boolean and y_count == 0:
            return False
        if ch.mandatory and active == 0:
            return False

    slot = c.modules_slot
    if slot >= 0 and tags[slot][idx[slot]] == TAG_TRI and eval_tri[slot][idx[slot]] == 0:
        for other in range(len(c.names)):
            if tags[other][idx[other]] == TAG_TRI and eval_tri[other][idx[other]] == 1:
                return False
    return True


def run(c: CompiledEnumeration, count_only: bool = False):
    counts = [len(v) for v in c.values]
    n = len(counts)
    if any(count == 0 for count in counts):
        return 0 if count_only else []
    idx = [0] * n
    results = []
    total = 0
    values = c.values
    while True:
        if _assignment_valid(c, idx):
            total += 1
            if not count_only:
                results.append(tuple(values[s][idx[s]] for s in range(n)))
        k = n - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < counts[k]:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            break
    return total if count_only else results
