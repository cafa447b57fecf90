"""Deciders for annihilator-based ring classes, with checkable certificates.

Two routes exist on purpose.  decide_* uses bitmask annihilator tables and
an early-stopping power chain; oracle_decide_generalized recomputes every
quantity from the definitions through the public ring operations.  The two
are cross-checked in the test suite and must never be merged.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings as _caps
from .errors import SizeCapExceeded
from .rings import (
    FiniteRing,
    annihilator,
    enumerate_ideals,
    idempotents,
    subset_power,
)

CLASS_NAMES = (
    "baer",
    "quasi_baer",
    "gen_baer_right",
    "gen_baer_left",
    "gen_quasi_baer_right",
    "gen_quasi_baer_left",
)


@dataclass(frozen=True)
class ClassVerdict:
    """Decision for one ring class.

    per_instance holds (members, n, e) triples for accepting runs: the
    instance's sorted element tuple, the accepted annihilator-chain depth,
    and the generating idempotent.  failing_instance is (members, n_reached,
    stable_annihilator) for the first rejected instance, with per_instance
    left empty.  instance_kind says what the instances were.
    """

    ring: FiniteRing
    class_name: str
    verdict: bool
    instance_kind: str
    per_instance: tuple
    failing_instance: tuple | None


# ---------------------------------------------------------------------------
# bitmask machinery (fast route)


def _singleton_ann_masks(ring, side):
    # masks[x] has bit a set iff x*a == 0 (right) or a*x == 0 (left)
    n = ring.order
    mul = ring.mul_table
    zero = ring.zero
    masks = []
    for x in range(n):
        m = 0
        for a in range(n):
            p = mul[x][a] if side == "right" else mul[a][x]
            if p == zero:
                m |= 1 << a
        masks.append(m)
    return masks


def _principal_idempotent_masks(ring, side):
    # mask(eR) -> smallest idempotent e (or Re for the left side)
    n = ring.order
    mul = ring.mul_table
    table = {}
    for e in idempotents(ring):
        m = 0
        for r in range(n):
            p = mul[e][r] if side == "right" else mul[r][e]
            m |= 1 << p
        table.setdefault(m, e)
    return table


def _mask_members(mask):
    members = []
    while mask:
        low = mask & -mask
        members.append(low.bit_length() - 1)
        mask ^= low
    return tuple(members)


def _ann_mask(singles, members, full):
    m = full
    for x in members:
        m &= singles[x]
    return m


def _instance_chain(ring, members, singles, genmap, full):
    """Annihilator chain for one instance; ('ok', n, e) or ('stuck', n, ann).

    Ascending chain: the annihilator of the n-fold product set grows with n,
    asserted along the way.  A plateau is final (the chain is constant from
    the first repeat), so stopping there is exact, and a plateau without an
    idempotent generator rejects the instance.
    """
    mul = ring.mul_table
    power = frozenset(members)
    ann_prev = None
    depth = 1
    while True:
        ann = _ann_mask(singles, power, full)
        if ann_prev is not None:
            assert ann | ann_prev == ann, "annihilator chain must ascend"
        e = genmap.get(ann)
        if e is not None:
            return ("ok", depth, e)
        if ann == ann_prev:
            return ("stuck", depth, ann)
        ann_prev = ann
        power = frozenset(mul[p][x] for p in power for x in members)
        depth += 1


# ---------------------------------------------------------------------------
# deciders


def decide_baer(ring, side="right"):
    """Baer decision: every nonempty subset's annihilator is idempotent-generated.

    Both sides are computed and cross-asserted equal (the class is known to
    be left-right symmetric); the returned certificate reports the requested
    side.  Subsets run in ascending bitmask order, so the reported failing
    subset is the first one in that order.
    """
    _check_side(side)
    mine = _baer_side(ring, side, keep=True)
    other = _baer_side(ring, "left" if side == "right" else "right", keep=False)
    assert mine[0] == other[0], "Baer verdict must be side-symmetric"
    verdict, per_instance, failing = mine
    return ClassVerdict(ring, "baer", verdict, "subset", per_instance, failing)


def _baer_side(ring, side, keep):
    if ring.order > _caps.SUBSET_ENUM_CAP:
        raise SizeCapExceeded(
            f"subset enumeration capped at order {_caps.SUBSET_ENUM_CAP}, ring has {ring.order}")
    singles = _singleton_ann_masks(ring, side)
    genmap = _principal_idempotent_masks(ring, side)
    full = (1 << ring.order) - 1
    per_instance = []
    for mask in range(1, 1 << ring.order):
        members = _mask_members(mask)
        ann = _ann_mask(singles, members, full)
        e = genmap.get(ann)
        if e is None:
            return False, (), (members, 1, _mask_members(ann))
        if keep:
            per_instance.append((members, 1, e))
    return True, tuple(per_instance), None


def decide_quasi_baer(ring):
    """Quasi-Baer decision over one-sided ideals, cross-asserted on both sides.

    The certificate reports the right side: right annihilators of right
    ideals, in ascending size-then-lexicographic ideal order.
    """
    mine = _quasi_baer_side(ring, "right", keep=True)
    other = _quasi_baer_side(ring, "left", keep=False)
    assert mine[0] == other[0], "quasi-Baer verdict must be side-symmetric"
    verdict, per_instance, failing = mine
    return ClassVerdict(ring, "quasi_baer", verdict, "right_ideal", per_instance, failing)


def _quasi_baer_side(ring, side, keep):
    singles = _singleton_ann_masks(ring, side)
    genmap = _principal_idempotent_masks(ring, side)
    full = (1 << ring.order) - 1
    per_instance = []
    for ideal in enumerate_ideals(ring, side):
        members = tuple(sorted(ideal))
        ann = _ann_mask(singles, members, full)
        e = genmap.get(ann)
        if e is None:
            return False, (), (members, 1, _mask_members(ann))
        if keep:
            per_instance.append((members, 1, e))
    return True, tuple(per_instance), None


def decide_generalized(ring, cls, side="right"):
    """Generalized Baer/quasi-Baer decision via the annihilator power chain.

    For each instance (every nonempty subset for 'baer', every side-matching
    ideal for 'quasi_baer') the chain over n-fold product sets runs until an
    idempotent-generated annihilator appears or the chain plateaus.  The two
    sides are genuinely independent classes here, so nothing is cross-asserted.
    """
    _check_cls(cls)
    _check_side(side)
    singles = _singleton_ann_masks(ring, side)
    genmap = _principal_idempotent_masks(ring, side)
    full = (1 << ring.order) - 1
    class_name = f"gen_{cls}_{side}"
    per_instance = []
    if cls == "baer":
        if ring.order > _caps.SUBSET_ENUM_CAP:
            raise SizeCapExceeded(
                f"subset enumeration capped at order {_caps.SUBSET_ENUM_CAP}, ring has {ring.order}")
        kind = "subset"
        instances = (_mask_members(mask) for mask in range(1, 1 << ring.order))
    else:
        kind = f"{side}_ideal"
        instances = (tuple(sorted(ideal)) for ideal in enumerate_ideals(ring, side))
    for members in instances:
        status, depth, payload = _instance_chain(ring, members, singles, genmap, full)
        if status == "ok":
            per_instance.append((members, depth, payload))
        else:
            failing = (members, depth, _mask_members(payload))
            return ClassVerdict(ring, class_name, False, kind, (), failing)
    return ClassVerdict(ring, class_name, True, kind, tuple(per_instance), None)


def _check_side(side):
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def _check_cls(cls):
    if cls not in ("baer", "quasi_baer"):
        raise ValueError(f"cls must be 'baer' or 'quasi_baer', got {cls!r}")


# ---------------------------------------------------------------------------
# definition-literal oracle


def oracle_decide_generalized(ring, cls, side="right", cap=8):
    """Slow reference decision straight from the definitions.

    For each instance and each n from 1 up to ring.order, the n-fold product
    set is rebuilt from scratch through subset_power, its annihilator through
    the public annihilator scan, and every idempotent is tried as generator.
    No chain plateau logic, no bitmask tables, no ideal dedup: this is the
    independent route the fast decider is checked against.
    """
    _check_cls(cls)
    _check_side(side)
    if ring.order > cap:
        raise SizeCapExceeded(f"oracle capped at order {cap}, ring has {ring.order}")
    class_name = f"gen_{cls}_{side}"
    if cls == "baer":
        kind = "subset"
        instances = [_mask_members(mask) for mask in range(1, 1 << ring.order)]
    else:
        kind = f"{side}_ideal"
        instances = [tuple(sorted(s)) for s in _oracle_ideals(ring, side)]
    per_instance = []
    for members in instances:
        accepted = None
        last_ann = None
        for n in range(1, ring.order + 1):
            power = subset_power(ring, members, n)
            ann = annihilator(ring, power, side)
            last_ann = ann
            for e in idempotents(ring):
                if side == "right":
                    gen = frozenset(ring.mul(e, r) for r in range(ring.order))
                else:
                    gen = frozenset(ring.mul(r, e) for r in range(ring.order))
                if gen == ann:
                    accepted = (n, e)
                    break
            if accepted is not None:
                break
        if accepted is None:
            failing = (members, ring.order, tuple(sorted(last_ann)))
            return ClassVerdict(ring, class_name, False, kind, (), failing)
        per_instance.append((members, accepted[0], accepted[1]))
    return ClassVerdict(ring, class_name, True, kind, tuple(per_instance), None)


def _oracle_ideals(ring, side):
    # Brute subset filter, independent of the grow-and-close enumeration.
    n = ring.order
    out = []
    for mask in range(1, 1 << n):
        if not (mask >> ring.zero) & 1:
            continue
        members = _mask_members(mask)
        member_set = set(members)
        ok = True
        for a in members:
            for b in members:
                if ring.add(a, b) not in member_set:
                    ok = False
                    break
            if not ok:
                break
            for r in range(n):
                p = ring.mul(a, r) if side == "right" else ring.mul(r, a)
                if p not in member_set:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(members))
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def recheck_class_verdict(ring, cv):
    """Re-derive every accepted triple with the public definitional operations."""
    side = "left" if cv.class_name.endswith("left") else "right"
    for members, n, e in cv.per_instance:
        ann = annihilator(ring, subset_power(ring, members, n), side)
        if side == "right":
            gen = frozenset(ring.mul(e, r) for r in range(ring.order))
        else:
            gen = frozenset(ring.mul(r, e) for r in range(ring.order))
        if ann != gen:
            return False
    return True
