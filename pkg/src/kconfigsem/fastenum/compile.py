"""Compile a model and candidate universe into flat integer programs.

Enumeration checks every assignment of the candidate universe, so the
inner loop avoids the rich value objects entirely: expressions become
postfix opcode tuples, candidate values become parallel integer tables
(tristate rank, kind tag, interned rendering, numeric payload), and
the per-config checks become small records over those tables.  Both
the pure-Python kernel and the C kernel interpret this one compiled
form, which keeps their results aligned by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..evaluator import to_str
from ..expr import (
    BOTTOM,
    And,
    Eq,
    HexVal,
    IdOrConst,
    IntVal,
    KExpr,
    Leaf,
    LiftedConst,
    Neq,
    Not,
    Or,
    StrVal,
    Tri,
    TriVal,
)
from ..model import (
    MODULES_NAME,
    ConfigType,
    KconfigModel,
    TRI_TYPES,
)

OP_CONST = 0
OP_SLOT = 1
OP_NOT = 2
OP_AND = 3
OP_OR = 4
OP_EQ = 5
OP_NEQ = 6

TAG_BOTTOM = 0
TAG_TRI = 1
TAG_STR = 2
TAG_HEX = 3
TAG_INT = 4

# Default record kinds.
DEF_TRI_PROGRAM = 0
DEF_ENTRY_CONST = 1
DEF_ENTRY_SLOT = 2

# Range bound kinds.
BOUND_CONST = 0
BOUND_SLOT = 1

_INT64_LIMIT = 2**62


@dataclass(frozen=True)
class CompiledConfig:
    slot: int
    tri_type: bool
    prompt: int
    rev: int
    # (condition program, kind, a, b); see DEF_* kinds above.
    defaults: tuple[tuple[int, int, int, int], ...]
    # (condition program, lo kind, lo a, hi kind, hi a)
    ranges: tuple[tuple[int, int, int, int, int], ...]


@dataclass(frozen=True)
class CompiledChoice:
    prompt: int
    boolean: bool
    mandatory: bool
    member_slots: tuple[int, ...]


@dataclass(frozen=True)
class CompiledEnumeration:
    names: tuple[str, ...]
    values: tuple[tuple[LiftedConst, ...], ...]
    cand_eval_tri: tuple[tuple[int, ...], ...]
    cand_tag: tuple[tuple[int, ...], ...]
    cand_strid: tuple[tuple[int, ...], ...]
    cand_has_num: tuple[tuple[int, ...], ...]
    cand_num: tuple[tuple[int, ...], ...]
    cand_is_empty: tuple[tuple[int, ...], ...]
    programs: tuple[tuple[int, ...], ...]
    max_stack: int
    configs: tuple[CompiledConfig, ...]
    choices: tuple[CompiledChoice, ...]
    modules_slot: int
    empty_strid: int
    raw_product: int
    fits_small_ints: bool


def _in_type_domain(type_: ConfigType, v: LiftedConst) -> bool:
    # Mirrors the type check of the reference validator; enumeration
    # can drop statically impossible candidates up front.
    if type_ is ConfigType.BOOLEAN:
        return isinstance(v, TriVal) and v.value != Tri.M
    if type_ is ConfigType.TRISTATE:
        return isinstance(v, TriVal)
    if type_ is ConfigType.STRING:
        return isinstance(v, StrVal)
    if type_ is ConfigType.HEX:
        return isinstance(v, HexVal) or v == StrVal("")
    return isinstance(v, IntVal) or v == StrVal("")


class _Compiler:
    def __init__(self, model: KconfigModel, universe) -> None:
        self.model = model
        self.universe = universe
        self.slots: dict[str, int] = {
            name: i for i, name in enumerate(universe.names)
        }
        self.strings: dict[str, int] = {}
        self.programs: list[tuple[int, ...]] = []
        self.program_index: dict[tuple[int, ...], int] = {}
        self.max_stack = 1
        self.fits_small_ints = True

    def intern(self, s: str) -> int:
        return self.strings.setdefault(s, len(self.strings))

    def _num(self, number: int) -> int:
        if abs(number) >= _INT64_LIMIT:
            self.fits_small_ints = False
        return number

    def add_program(self, e: KExpr) -> int:
        code, depth = self._compile_expr(e)
        self.max_stack = max(self.max_stack, depth)
        program = tuple(code)
        index = self.program_index.get(program)
        if index is None:
            index = len(self.programs)
            self.programs.append(program)
            self.program_index[program] = index
        return index

    def _operand(self, item: IdOrConst) -> tuple[int, int]:
        """Encode a comparison operand as (kind, payload)."""

        if isinstance(item, str):
            return 1, self.slots[item]
        return 0, self.intern(to_str(item))

    def _compile_expr(self, e: KExpr) -> tuple[list[int], int]:
        if isinstance(e, Leaf):
            if isinstance(e.item, str):
                return [OP_SLOT, self.slots[e.item]], 1
            value = e.item.value if isinstance(e.item, TriVal) else Tri.N
            return [OP_CONST, int(value)], 1
        if isinstance(e, Not):
            code, depth = self._compile_expr(e.operand)
            return code + [OP_NOT], depth
        if isinstance(e, (And, Or)):
            left, dl = self._compile_expr(e.left)
            right, dr = self._compile_expr(e.right)
            op = OP_AND if isinstance(e, And) else OP_OR
            return left + right + [op], max(dl, 1 + dr)
        if isinstance(e, (Eq, Neq)):
            kx, px = self._operand(e.left)
            ky, py = self._operand(e.right)
            op = OP_EQ if isinstance(e, Eq) else OP_NEQ
            return [op, kx, px, ky, py], 1
        raise TypeError(f"not an expression node: {e!r}")

    def candidate_tables(self):
        values = []
        eval_tri = []
        tags = []
        strids = []
        has_num = []
        nums = []
        empties = []
        declared = {cfg.name: cfg for cfg in self.model.configs}
        for name in self.universe.names:
            cfg = declared.get(name)
            kept = []
            for v in self.universe.candidates(name):
                if cfg is None:
                    if v is BOTTOM:
                        kept.append(v)
                elif _in_type_domain(cfg.type, v):
                    kept.append(v)
            values.append(tuple(kept))
            slot_tri = []
            slot_tag = []
            slot_str = []
            slot_has = []
            slot_num = []
            slot_empty = []
            for v in kept:
                if v is BOTTOM:
                    slot_tri.append(0)
                    slot_tag.append(TAG_BOTTOM)
                    slot_str.append(self.intern(name))
                    slot_has.append(0)
                    slot_num.append(0)
                    slot_empty.append(0)
                    continue
                slot_str.append(self.intern(to_str(v)))
                if isinstance(v, TriVal):
                    slot_tri.append(int(v.value))
                    slot_tag.append(TAG_TRI)
                    slot_has.append(0)
                    slot_num.append(0)
                    slot_empty.append(0)
                elif isinstance(v, StrVal):
                    slot_tri.append(0)
                    slot_tag.append(TAG_STR)
                    slot_has.append(0)
                    slot_num.append(0)
                    slot_empty.append(1 if v.text == "" else 0)
                elif isinstance(v, HexVal):
                    slot_tri.append(0)
                    slot_tag.append(TAG_HEX)
                    slot_has.append(1)
                    slot_num.append(self._num(v.number))
                    slot_empty.append(0)
                else:
                    slot_tri.append(0)
                    slot_tag.append(TAG_INT)
                    slot_has.append(1)
                    slot_num.append(self._num(v.number))
                    slot_empty.append(0)
            eval_tri.append(tuple(slot_tri))
            tags.append(tuple(slot_tag))
            strids.append(tuple(slot_str))
            has_num.append(tuple(slot_has))
            nums.append(tuple(slot_num))
            empties.append(tuple(slot_empty))
        return (
            tuple(values),
            tuple(eval_tri),
            tuple(tags),
            tuple(strids),
            tuple(has_num),
            tuple(nums),
            tuple(empties),
        )

    def compile_config(self, cfg) -> CompiledConfig:
        tri_type = cfg.type in TRI_TYPES
        defaults = []
        for entry in cfg.defaults:
            cond = self.add_program(entry.condition)
            if tri_type:
                defaults.append((cond, DEF_TRI_PROGRAM, self.add_program(entry.value), 0))
            else:
                item = entry.value.item  # entry defaults are single leaves
                if isinstance(item, str):
                    defaults.append((cond, DEF_ENTRY_SLOT, self.slots[item], 0))
                else:
                    tag = {
                        TriVal: TAG_TRI,
                        StrVal: TAG_STR,
                        HexVal: TAG_HEX,
                        IntVal: TAG_INT,
                    }[type(item)]
                    defaults.append(
                        (cond, DEF_ENTRY_CONST, tag, self.intern(to_str(item)))
                    )
        ranges = []
        for rng in cfg.ranges:
            cond = self.add_program(rng.condition)
            encoded = [cond]
            for bound in (rng.lower, rng.upper):
                if isinstance(bound, str):
                    encoded.extend((BOUND_SLOT, self.slots[bound]))
                else:
                    encoded.extend((BOUND_CONST, self._num(bound.number)))
            ranges.append(tuple(encoded))
        return CompiledConfig(
            slot=self.slots[cfg.name],
            tri_type=tri_type,
            prompt=self.add_program(cfg.prompt),
            rev=self.add_program(cfg.reverse_dep),
            defaults=tuple(defaults),
            ranges=tuple(ranges),
        )

    def compile(self) -> CompiledEnumeration:
        (
            values,
            eval_tri,
            tags,
            strids,
            has_num,
            nums,
            empties,
        ) = self.candidate_tables()
        configs = tuple(self.compile_config(cfg) for cfg in self.model.configs)
        choices = tuple(
            CompiledChoice(
                prompt=self.add_program(ch.prompt),
                boolean=ch.type is ConfigType.BOOLEAN,
                mandatory=ch.mandatory,
                member_slots=tuple(self.slots[m] for m in ch.members),
            )
            for ch in self.model.choices
        )
        return CompiledEnumeration(
            names=self.universe.names,
            values=values,
            cand_eval_tri=eval_tri,
            cand_tag=tags,
            cand_strid=strids,
            cand_has_num=has_num,
            cand_num=nums,
            cand_is_empty=empties,
            programs=tuple(self.programs),
            max_stack=self.max_stack,
            configs=configs,
            choices=choices,
            modules_slot=self.slots.get(MODULES_NAME, -1),
            empty_strid=self.intern(""),
            raw_product=self.universe.size,
            fits_small_ints=self.fits_small_ints,
        )


def compile_enumeration(model: KconfigModel, universe) -> CompiledEnumeration:
    return _Compiler(model, universe).compile()
