"""Delivery assembly for cyclic multi-access caching.

``assemble`` reduces a demand round to the column table, routes every column
pair through a coloring strategy fitting the requested mode, precodes each
component with an MDS generator over one shared field, and verifies that
every user can decode before returning the plan. Rates come out of the
construction itself (transmission counts over split factors, exact
fractions), so they can be checked against the closed-form calculators.

Modes
-----
``linear``
    Whole-subfile transmissions. Pairs use the residue coloring when
    ``K-iL+1`` divides ``K``, first-fit otherwise (improved by the exact
    search when the component is small enough); an odd leftover column is
    treated as a plain single column.
``quadratic``
    Every subfile is cut into ``m = floor(K/(K-iL+1))`` parts and pairs use
    the shifted-window coloring; the leftover column rides at split ``2m``.
    The constructed rate equals the quadratic calculator exactly.
``divisor``
    Residue coloring with one divisor ``X | K`` (``X >= K-iL+1``) everywhere,
    padded to exactly ``X`` rows per component; the leftover column is
    halved. The constructed rate equals the divisor calculator exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .coloring import (
    Coloring,
    divisor_coloring,
    fractional_coloring,
    greedy_coloring,
    local_count,
)
from .errors import ParameterError
from .icp import (
    IcpInstance,
    IcpTable,
    StructuredIcpDesc,
    UnionIcpDesc,
    pair_columns,
    paired_column_indices,
    realize_single,
    realize_union_split,
    reduce_macc,
)
from .linalg_ff import (
    FieldSpec,
    TransmissionScheme,
    encode,
    field_for,
    require_all_decode,
    verify_scheme,
)
from .macc import MaccInstance
from .oracle import exhaustive_chi_l
from .rates import (
    rate_divisor,
    rate_linear,
    rate_quadratic,
    smallest_valid_divisor,
)

__all__ = [
    "PairPlan",
    "DeliveryPlan",
    "PlanCheck",
    "assemble",
    "pair_instance",
    "verify_plan",
    "plan_to_json",
]

_MODES = ("linear", "quadratic", "divisor")


@dataclass(frozen=True)
class PairPlan:
    """One scheduled component of a delivery plan.

    ``kind`` says how table cells map onto the component's local messages:
    ``union`` covers two columns whole-cell (possibly split), ``middle``
    covers one column with each cell halved into a two-sided instance, and
    ``column`` covers one column whole-cell. ``part_map[m-1]`` gives the
    table message and part index carried by local message ``m``;
    ``cell_split`` is the number of parts each table cell is cut into here.
    """

    columns: tuple[int, ...]
    desc: UnionIcpDesc | StructuredIcpDesc
    kind: str
    tag: str
    cell_split: int
    coloring: Coloring
    scheme: TransmissionScheme
    part_map: tuple[tuple[int, int], ...]

    @property
    def n_transmissions(self) -> int:
        return self.scheme.n_transmissions


@dataclass(frozen=True)
class DeliveryPlan:
    """Assembled, verified delivery schedule for one demand round.

    ``rate`` is in file units; ``subpacketization`` counts the parts each
    file ends up in (cells at ``base_split``, halved leftover cells at twice
    that). ``notes`` carries non-fatal observations such as a best-effort
    component exceeding its closed-form bound.
    """

    table: IcpTable
    mode: str
    divisor: int | None
    field: FieldSpec
    base_split: int
    pairs: tuple[PairPlan, ...]
    rate: Fraction
    subpacketization: int
    notes: tuple[str, ...] = ()

    @property
    def instance(self) -> MaccInstance:
        return self.table.instance

    @property
    def n_transmissions(self) -> int:
        return sum(p.n_transmissions for p in self.pairs)


@dataclass(frozen=True)
class PlanCheck:
    """Outcome of re-verifying a plan against its own table and calculator."""

    ok: bool
    users_ok: tuple[bool, ...]
    rate: Fraction
    subpacketization: int
    calculator_rate: Fraction | None
    calculator_subpacketization: int | None
    rate_equal: bool | None
    within_bound: bool | None


def pair_instance(pair: PairPlan) -> IcpInstance:
    """Rebuild the local index coding instance a pair's scheme was coded for."""
    if pair.kind == "column":
        return realize_single(pair.desc)
    if pair.kind == "middle":
        return realize_union_split(pair.desc, pair.cell_split // 2)
    return realize_union_split(pair.desc, pair.cell_split)


def _union_part_map(
    table: IcpTable, cols: tuple[int, int], split: int
) -> tuple[tuple[int, int], ...]:
    out = []
    for k in range(1, table.n_rows + 1):
        for t in (1, 2):
            g = table.entry(k, cols[t - 1])
            for j in range(1, split + 1):
                out.append((g, j))
    return tuple(out)


def _middle_part_map(
    table: IcpTable, col: int, half: int
) -> tuple[tuple[int, int], ...]:
    out = []
    for k in range(1, table.n_rows + 1):
        g = table.entry(k, col)
        for t in (1, 2):
            for j in range(1, half + 1):
                out.append((g, (t - 1) * half + j))
    return tuple(out)


def _column_part_map(table: IcpTable, col: int) -> tuple[tuple[int, int], ...]:
    return tuple((table.entry(k, col), 1) for k in range(1, table.n_rows + 1))


def _maybe_oracle(
    inst: IcpInstance, coloring: Coloring, tag: str, cap: int
) -> tuple[Coloring, str]:
    """Swap in the exact-search witness when the component fits and it wins."""
    if 0 < inst.n_nodes <= cap:
        best, witness = exhaustive_chi_l(inst, node_cap=inst.n_nodes)
        if best < local_count(inst, coloring):
            return witness, "oracle"
    return coloring, tag


def _best_effort(inst: IcpInstance, cap: int) -> tuple[Coloring, str]:
    """First-fit coloring, replaced by the exact search when it fits and wins."""
    return _maybe_oracle(inst, greedy_coloring(inst), "greedy", cap)


def assemble(
    instance: MaccInstance,
    demands=None,
    *,
    mode: str = "quadratic",
    divisor: int | None = None,
    field: FieldSpec | None = None,
    oracle_node_cap: int = 20,
) -> DeliveryPlan:
    """Build and verify a delivery plan for one demand round.

    Raises :class:`ParameterError` on invalid parameters and
    :class:`~.errors.VerificationError` if any component fails its own decode
    check (which would indicate a construction bug, not bad input).
    """
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    if instance.memory_index < 1:
        raise ParameterError(
            "zero-memory corner has no cached side information; "
            "delivery there is a plain broadcast"
        )
    table = reduce_macc(instance, demands)
    k = table.n_rows
    d = table.n_cols
    cov = table.coverage

    if d == 0:
        return DeliveryPlan(
            table=table,
            mode=mode,
            divisor=None,
            field=field if field is not None else field_for(1),
            base_split=1,
            pairs=(),
            rate=Fraction(0),
            subpacketization=k,
        )

    s = d + 1
    x: int | None = None
    if mode == "divisor":
        x = smallest_valid_divisor(k, s) if divisor is None else divisor
        if x < s or x > k or k % x:
            raise ParameterError(
                f"divisor must divide K={k} and be at least K-iL+1={s}, got {x}"
            )
    elif divisor is not None:
        raise ParameterError("an explicit divisor only applies to divisor mode")

    if mode == "quadratic" and d > 1 and k % s != 0:
        base_split = k // s
    else:
        base_split = 1

    unions, middle = pair_columns(table)
    pair_cols = paired_column_indices(table)
    mid_col = (d + 1) // 2 if d % 2 == 1 else None

    # plan every component first so one field can serve the whole schedule
    staged: list[tuple] = []  # (columns, desc, kind, tag, cell_split, coloring, inst, n_rows)
    for desc, cols in zip(unions, pair_cols):
        if mode == "divisor":
            coloring = divisor_coloring(desc, x)
            inst = realize_union_split(desc, 1)
            staged.append((cols, desc, "union", "divisor", 1, coloring, inst, x))
        elif k % s == 0:
            coloring = divisor_coloring(desc, s)
            inst = realize_union_split(desc, 1)
            staged.append((cols, desc, "union", "divisor", 1, coloring, inst, None))
        elif mode == "quadratic":
            coloring, m = fractional_coloring(desc)
            inst = realize_union_split(desc, m)
            staged.append((cols, desc, "union", "fractional", m, coloring, inst, None))
        else:
            # modulus K always divides K; local count min(a1 + 2*a2 + 2, K)
            inst = realize_union_split(desc, 1)
            coloring, tag = divisor_coloring(desc, k), "divisor"
            first_fit = greedy_coloring(inst)
            if local_count(inst, first_fit) < local_count(inst, coloring):
                coloring, tag = first_fit, "greedy"
            coloring, tag = _maybe_oracle(inst, coloring, tag, oracle_node_cap)
            staged.append((cols, desc, "union", tag, 1, coloring, inst, None))

    if middle is not None:
        c = middle.a1
        udesc = UnionIcpDesc(c, c, cov)
        if mode == "divisor":
            coloring = divisor_coloring(udesc, x)
            inst = realize_union_split(udesc, 1)
            staged.append(((mid_col,), udesc, "middle", "divisor", 2, coloring, inst, x))
        elif c == 0:
            # everyone-knows-everyone column: one summed transmission
            inst = realize_single(middle)
            coloring = greedy_coloring(inst)
            staged.append(((mid_col,), middle, "column", "clique", 1, coloring, inst, None))
        elif k % s == 0:
            coloring = divisor_coloring(udesc, s)
            inst = realize_union_split(udesc, 1)
            staged.append(((mid_col,), udesc, "middle", "divisor", 2, coloring, inst, None))
        elif mode == "quadratic":
            coloring, m = fractional_coloring(udesc)
            inst = realize_union_split(udesc, m)
            staged.append(((mid_col,), udesc, "middle", "fractional", 2 * m, coloring, inst, None))
        else:
            inst = realize_single(middle)
            coloring, tag = _best_effort(inst, oracle_node_cap)
            staged.append(((mid_col,), middle, "column", tag, 1, coloring, inst, None))

    if field is None:
        field = field_for(max(st[5].n_colors for st in staged))

    pairs = []
    for cols, desc, kind, tag, cell_split, coloring, inst, n_rows in staged:
        scheme = encode(inst, coloring, field=field, n_rows=n_rows)
        scheme = replace(scheme, split_factor=cell_split)
        require_all_decode(scheme, inst)
        if kind == "union":
            part_map = _union_part_map(table, cols, cell_split)
        elif kind == "middle":
            part_map = _middle_part_map(table, cols[0], cell_split // 2)
        else:
            part_map = _column_part_map(table, cols[0])
        pairs.append(
            PairPlan(
                columns=cols,
                desc=desc,
                kind=kind,
                tag=tag,
                cell_split=cell_split,
                coloring=coloring,
                scheme=scheme,
                part_map=part_map,
            )
        )

    rate = sum(
        (Fraction(p.n_transmissions, p.cell_split * k) for p in pairs), Fraction(0)
    )
    halved = any(p.cell_split > base_split for p in pairs)
    ktil = k + 1 if halved else k
    subpack = ktil * base_split

    notes: tuple[str, ...] = ()
    if mode == "linear":
        bound = rate_linear(k, instance.access_degree, instance.memory_index)
        if bound.applicable and bound.rate is not None and rate > bound.rate:
            notes = (
                f"best-effort components cost {rate}, above the closed-form "
                f"linear value {bound.rate}",
            )

    return DeliveryPlan(
        table=table,
        mode=mode,
        divisor=x,
        field=field,
        base_split=base_split,
        pairs=tuple(pairs),
        rate=rate,
        subpacketization=subpack,
        notes=notes,
    )


def _pair_users_ok(plan: DeliveryPlan) -> tuple[bool, ...]:
    """Fold per-component decode checks down to the K table users."""
    k = plan.table.n_rows
    ok = [True] * k
    for pair in plan.pairs:
        inst = pair_instance(pair)
        results = verify_scheme(pair.scheme, inst)
        per_user = len(inst.users) // k
        for idx, good in enumerate(results):
            if not good:
                ok[idx // per_user] = False
    return tuple(ok)


def verify_plan(plan: DeliveryPlan) -> PlanCheck:
    """Re-verify decodability and compare the plan against its calculator.

    For the ``quadratic`` and ``divisor`` modes the constructed rate and
    subpacketization must equal the closed-form values; ``linear`` only
    promises to stay at or below its bound when no best-effort component
    overshot (any overshoot is reported via ``within_bound``).
    """
    inst = plan.table.instance
    k, l, i = inst.n_caches, inst.access_degree, inst.memory_index
    users_ok = _pair_users_ok(plan)
    if plan.mode == "quadratic":
        rep = rate_quadratic(k, l, i)
    elif plan.mode == "divisor":
        rep = rate_divisor(k, l, i, divisor=plan.divisor)
    else:
        rep = rate_linear(k, l, i)
    calc_rate = rep.rate if rep.applicable else None
    calc_f = rep.subpacketization if rep.applicable else None
    rate_equal = None if calc_rate is None else plan.rate == calc_rate
    within = None if calc_rate is None else plan.rate <= calc_rate
    ok = all(users_ok)
    if plan.mode in ("quadratic", "divisor"):
        ok = ok and bool(rate_equal) and calc_f == plan.subpacketization
    return PlanCheck(
        ok=ok,
        users_ok=users_ok,
        rate=plan.rate,
        subpacketization=plan.subpacketization,
        calculator_rate=calc_rate,
        calculator_subpacketization=calc_f,
        rate_equal=rate_equal,
        within_bound=within,
    )


def _part_label(plan: DeliveryPlan, pair: PairPlan, local_msg: int) -> str:
    g, part = pair.part_map[local_msg - 1]
    base = plan.table.message_label(g)
    if pair.cell_split == 1:
        return base
    return f"{base}#{part}"


def plan_to_json(plan: DeliveryPlan) -> str:
    """Stable JSON rendering of a plan (schedule, colorings, coefficients)."""
    inst = plan.table.instance
    pairs = []
    for pair in plan.pairs:
        pairs.append(
            {
                "columns": list(pair.columns),
                "kind": pair.kind,
                "tag": pair.tag,
                "cell_split": pair.cell_split,
                "n_transmissions": pair.n_transmissions,
                "colors": list(pair.coloring.colors),
                "messages": [
                    {
                        "table_message": g,
                        "part": part,
                        "label": _part_label(plan, pair, m),
                    }
                    for m, (g, part) in enumerate(pair.part_map, start=1)
                ],
                "scheme": json.loads(pair.scheme.to_json()),
            }
        )
    payload = {
        "params": {
            "n_files": inst.n_files,
            "n_caches": inst.n_caches,
            "access_degree": inst.access_degree,
            "memory_index": inst.memory_index,
        },
        "demands": list(plan.table.demands.demands),
        "mode": plan.mode,
        "divisor": plan.divisor,
        "field": {"w": plan.field.w, "poly": plan.field.poly},
        "rate": {
            "num": plan.rate.numerator,
            "den": plan.rate.denominator,
            "decimal": f"{float(plan.rate):.6f}",
        },
        "subpacketization": plan.subpacketization,
        "base_split": plan.base_split,
        "n_transmissions": plan.n_transmissions,
        "notes": list(plan.notes),
        "pairs": pairs,
    }
    return json.dumps(payload, indent=2)
