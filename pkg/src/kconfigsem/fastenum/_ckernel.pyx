# cython: language_level=3, boundscheck=False, wraparound=False
"""C enumeration kernel.

Transliteration of pykernel.py: the compiled tuples are flattened
into int64 arrays once, then the odometer loop and validity checks
run without touching Python objects.  Only valid assignments are
materialized back into value tuples.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int64_t

cdef enum:
    OP_CONST = 0
    OP_SLOT = 1
    OP_NOT = 2
    OP_AND = 3
    OP_OR = 4
    OP_EQ = 5
    OP_NEQ = 6
    TAG_TRI = 1
    TAG_STR = 2
    DEF_ENTRY_SLOT = 2
    BOUND_CONST = 0


cdef int64_t* _alloc(Py_ssize_t count) except NULL:
    cdef int64_t* p = <int64_t*> PyMem_Malloc(
        (count if count > 0 else 1) * sizeof(int64_t)
    )
    if p == NULL:
        raise MemoryError()
    return p


cdef class _Kernel:
    cdef Py_ssize_t n_slots, n_cfgs, n_choices
    cdef int64_t modules_slot, empty_strid
    cdef int64_t* cand_off
    cdef int64_t* counts
    cdef int64_t* f_eval
    cdef int64_t* f_tag
    cdef int64_t* f_strid
    cdef int64_t* f_has
    cdef int64_t* f_num
    cdef int64_t* f_empty
    cdef int64_t* prog_off
    cdef int64_t* prog_code
    cdef int64_t* cfg_data   # slot, tri, prompt, rev, doff, dcnt, roff, rcnt
    cdef int64_t* def_data   # cond, kind, a, b
    cdef int64_t* rng_data   # cond, lo kind, lo a, hi kind, hi a
    cdef int64_t* ch_data    # prompt, boolean, mandatory, moff, mcnt
    cdef int64_t* mem_data
    cdef int64_t* stack
    cdef int64_t* idx

    def __cinit__(self, compiled):
        self.cand_off = self.counts = NULL
        self.f_eval = self.f_tag = self.f_strid = NULL
        self.f_has = self.f_num = self.f_empty = NULL
        self.prog_off = self.prog_code = NULL
        self.cfg_data = self.def_data = self.rng_data = NULL
        self.ch_data = self.mem_data = NULL
        self.stack = self.idx = NULL

        cdef Py_ssize_t n = len(compiled.names)
        cdef Py_ssize_t s, i, off
        self.n_slots = n
        self.modules_slot = compiled.modules_slot
        self.empty_strid = compiled.empty_strid

        tri_rows = compiled.cand_eval_tri
        cdef Py_ssize_t total = 0
        for s in range(n):
            total += len(tri_rows[s])
        self.cand_off = _alloc(n + 1)
        self.counts = _alloc(n)
        self.f_eval = _alloc(total)
        self.f_tag = _alloc(total)
        self.f_strid = _alloc(total)
        self.f_has = _alloc(total)
        self.f_num = _alloc(total)
        self.f_empty = _alloc(total)
        off = 0
        for s in range(n):
            self.cand_off[s] = off
            row = tri_rows[s]
            tag_row = compiled.cand_tag[s]
            str_row = compiled.cand_strid[s]
            has_row = compiled.cand_has_num[s]
            num_row = compiled.cand_num[s]
            empty_row = compiled.cand_is_empty[s]
            self.counts[s] = len(row)
            for i in range(len(row)):
                self.f_eval[off] = row[i]
                self.f_tag[off] = tag_row[i]
                self.f_strid[off] = str_row[i]
                self.f_has[off] = has_row[i]
                self.f_num[off] = num_row[i]
                self.f_empty[off] = empty_row[i]
                off += 1
        self.cand_off[n] = off

        programs = compiled.programs
        cdef Py_ssize_t n_progs = len(programs)
        total = 0
        for i in range(n_progs):
            total += len(programs[i])
        self.prog_off = _alloc(n_progs + 1)
        self.prog_code = _alloc(total)
        off = 0
        for i in range(n_progs):
            self.prog_off[i] = off
            for word in programs[i]:
                self.prog_code[off] = word
                off += 1
        self.prog_off[n_progs] = off

        configs = compiled.configs
        self.n_cfgs = len(configs)
        cdef Py_ssize_t n_defs = 0, n_rngs = 0
        for cfg in configs:
            n_defs += len(cfg.defaults)
            n_rngs += len(cfg.ranges)
        self.cfg_data = _alloc(self.n_cfgs * 8)
        self.def_data = _alloc(n_defs * 4)
        self.rng_data = _alloc(n_rngs * 5)
        cdef Py_ssize_t doff = 0, roff = 0
        i = 0
        for cfg in configs:
            self.cfg_data[i] = cfg.slot
            self.cfg_data[i + 1] = 1 if cfg.tri_type else 0
            self.cfg_data[i + 2] = cfg.prompt
            self.cfg_data[i + 3] = cfg.rev
            self.cfg_data[i + 4] = doff
            self.cfg_data[i + 5] = len(cfg.defaults)
            self.cfg_data[i + 6] = roff
            self.cfg_data[i + 7] = len(cfg.ranges)
            for rec in cfg.defaults:
                self.def_data[doff * 4 + 0] = rec[0]
                self.def_data[doff * 4 + 1] = rec[1]
                self.def_data[doff * 4 + 2] = rec[2]
                self.def_data[doff * 4 + 3] = rec[3]
                doff += 1
            for rec in cfg.ranges:
                self.rng_data[roff * 5 + 0] = rec[0]
                self.rng_data[roff * 5 + 1] = rec[1]
                self.rng_data[roff * 5 + 2] = rec[2]
                self.rng_data[roff * 5 + 3] = rec[3]
                self.rng_data[roff * 5 + 4] = rec[4]
                roff += 1
            i += 8

        choices = compiled.choices
        self.n_choices = len(choices)
        cdef Py_ssize_t n_members = 0
        for ch in choices:
            n_members += len(ch.member_slots)
        self.ch_data = _alloc(self.n_choices * 5)
        self.mem_data = _alloc(n_members)
        cdef Py_ssize_t moff = 0
        i = 0
        for ch in choices:
            self.ch_data[i] = ch.prompt
            self.ch_data[i + 1] = 1 if ch.boolean else 0
            self.ch_data[i + 2] = 1 if ch.mandatory else 0
            self.ch_data[i + 3] = moff
            self.ch_data[i + 4] = len(ch.member_slots)
            for slot in ch.member_slots:
                self.mem_data[moff] = slot
                moff += 1
            i += 5

        self.stack = _alloc(compiled.max_stack)
        self.idx = _alloc(n)
        for s in range(n):
            self.idx[s] = 0

    def __dealloc__(self):
        PyMem_Free(self.cand_off)
        PyMem_Free(self.counts)
        PyMem_Free(self.f_eval)
        PyMem_Free(self.f_tag)
        PyMem_Free(self.f_strid)
        PyMem_Free(self.f_has)
        PyMem_Free(self.f_num)
        PyMem_Free(self.f_empty)
        PyMem_Free(self.prog_off)
        PyMem_Free(self.prog_code)
        PyMem_Free(self.cfg_data)
        PyMem_Free(self.def_data)
        PyMem_Free(self.rng_data)
        PyMem_Free(self.ch_data)
        PyMem_Free(self.mem_data)
        PyMem_Free(self.stack)
        PyMem_Free(self.idx)

    cdef int64_t _eval(self, int64_t prog) noexcept:
        cdef Py_ssize_t i = self.prog_off[prog]
        cdef Py_ssize_t end = self.prog_off[prog + 1]
        cdef Py_ssize_t sp = 0
        cdef int64_t op, s, same, kx, px, ky, py, sx, sy
        cdef int64_t* code = self.prog_code
        cdef int64_t* stack = self.stack
        while i < end:
            op = code[i]
            if op == OP_SLOT:
                s = code[i + 1]
                stack[sp] = self.f_eval[self.cand_off[s] + self.idx[s]]
                sp += 1
                i += 2
            elif op == OP_CONST:
                stack[sp] = code[i + 1]
                sp += 1
                i += 2
            elif op == OP_NOT:
                stack[sp - 1] = 2 - stack[sp - 1]
                i += 1
            elif op == OP_AND:
                sp -= 1
                if stack[sp] < stack[sp - 1]:
                    stack[sp - 1] = stack[sp]
                i += 1
            elif op == OP_OR:
                sp -= 1
                if stack[sp] > stack[sp - 1]:
                    stack[sp - 1] = stack[sp]
                i += 1
            else:
                kx = code[i + 1]
                px = code[i + 2]
                ky = code[i + 3]
                py = code[i + 4]
                sx = self.f_strid[self.cand_off[px] + self.idx[px]] if kx else px
                sy = self.f_strid[self.cand_off[py] + self.idx[py]] if ky else py
                same = 2 if sx == sy else 0
                stack[sp] = same if op == OP_EQ else 2 - same
                sp += 1
                i += 5
        return stack[sp - 1]

    cdef bint _valid(self) noexcept:
        cdef Py_ssize_t ci, di, ri, chi, mi, other, base, cbase, off
        cdef Py_ssize_t pos, pos2
        cdef int64_t slot, v, lower, upper, chosen, forced
        cdef int64_t rtag, rstr, kind, a
        cdef int64_t value_has, value_num, lo_ok, hi_ok, lo, hi
        cdef int64_t y_count, active, rank

        for ci in range(self.n_cfgs):
            base = ci * 8
            slot = self.cfg_data[base]
            pos = self.cand_off[slot] + self.idx[slot]
            v = self.f_eval[pos]
            lower = self._eval(self.cfg_data[base + 3])
            if v < lower:
                return False
            upper = self._eval(self.cfg_data[base + 2])
            if upper != 0 and lower <= upper and v > upper:
                return False
            if upper == 0:
                if self.cfg_data[base + 1]:
                    chosen = 0
                    for di in range(self.cfg_data[base + 5]):
                        off = (self.cfg_data[base + 4] + di) * 4
                        if self._eval(self.def_data[off]) > 0:
                            chosen = self._eval(self.def_data[off + 2])
                            break
                    forced = chosen if chosen > lower else lower
                    if v != forced:
                        return False
                else:
                    rtag = TAG_STR
                    rstr = self.empty_strid
                    for di in range(self.cfg_data[base + 5]):
                        off = (self.cfg_data[base + 4] + di) * 4
                        if self._eval(self.def_data[off]) > 0:
                            kind = self.def_data[off + 1]
                            a = self.def_data[off + 2]
                            if kind == DEF_ENTRY_SLOT:
                                pos2 = self.cand_off[a] + self.idx[a]
                                rtag = self.f_tag[pos2]
                                rstr = self.f_strid[pos2]
                            else:
                                rtag = a
                                rstr = self.def_data[off + 3]
                            break
                    if self.f_tag[pos] != rtag or self.f_strid[pos] != rstr:
                        return False
            if self.cfg_data[base + 7] and not self.f_empty[pos]:
                value_has = self.f_has[pos]
                value_num = self.f_num[pos]
                for ri in range(self.cfg_data[base + 7]):
                    off = (self.cfg_data[base + 6] + ri) * 5
                    if self._eval(self.rng_data[off]) <= 0:
                        continue
                    if not value_has:
                        return False
                    if self.rng_data[off + 1] == BOUND_CONST:
                        lo_ok = 1
                        lo = self.rng_data[off + 2]
                    else:
                        a = self.rng_data[off + 2]
                        pos2 = self.cand_off[a] + self.idx[a]
                        lo_ok = self.f_has[pos2]
                        lo = self.f_num[pos2]
                    if self.rng_data[off + 3] == BOUND_CONST:
                        hi_ok = 1
                        hi = self.rng_data[off + 4]
                    else:
                        a = self.rng_data[off + 4]
                        pos2 = self.cand_off[a] + self.idx[a]
                        hi_ok = self.f_has[pos2]
                        hi = self.f_num[pos2]
                    if not lo_ok or not hi_ok:
                        return False
                    if value_num < lo or value_num > hi:
                        return False

        for chi in range(self.n_choices):
            cbase = chi * 5
            if self._eval(self.ch_data[cbase]) <= 0:
                continue
            y_count = 0
            active = 0
            for mi in range(self.ch_data[cbase + 4]):
                slot = self.mem_data[self.ch_data[cbase + 3] + mi]
                pos = self.cand_off[slot] + self.idx[slot]
                if self.f_tag[pos] == TAG_TRI:
                    rank = self.f_eval[pos]
                    if rank == 2:
                        y_count += 1
                    if rank > 0:
                        active += 1
            if y_count > 1:
                return False
            if y_count == 1:
                for mi in range(self.ch_data[cbase + 4]):
                    slot = self.mem_data[self.ch_data[cbase + 3] + mi]
                    pos = self.cand_off[slot] + self.idx[slot]
                    if self.f_tag[pos] != TAG_TRI or self.f_eval[pos] == 1:
                        return False
            if self.ch_data[cbase + 1] and y_count == 0:
                return False
            if self.ch_data[cbase + 2] and active == 0:
                return False

        slot = self.modules_slot
        if slot >= 0:
            pos = self.cand_off[slot] + self.idx[slot]
            if self.f_tag[pos] == TAG_TRI and self.f_eval[pos] == 0:
                for other in range(self.n_slots):
                    pos2 = self.cand_off[other] + self.idx[other]
                    if self.f_tag[pos2] == TAG_TRI and self.f_eval[pos2] == 1:
                        return False
        return True

    def execute(self, tuple values, bint count_only):
        cdef Py_ssize_t n = self.n_slots
        cdef Py_ssize_t s, k
        cdef int64_t total = 0
        cdef list results = []
        cdef list row
        for s in range(n):
            if self.counts[s] == 0:
                return 0 if count_only else []
            self.idx[s] = 0
        while True:
            if self._valid():
                total += 1
                if not count_only:
                    row = []
                    for s in range(n):
                        row.append((<tuple> values[s])[self.idx[s]])
                    results.append(tuple(row))
            k = n - 1
            while k >= 0:
                self.idx[k] += 1
                if self.idx[k] < self.counts[k]:
                    break
                self.idx[k] = 0
                k -= 1
            if k < 0:
                break
        return total if count_only else results


def run(compiled, count_only=False):
    kernel = _Kernel(compiled)
    return kernel.execute(compiled.values, bool(count_only))
