"""Harder-Narasimhan and Jordan-Holder machinery over finitely presented
abelian categories.

A presentation lists objects with classes in a lattice, a zero object, and
subobject edges (sub, ambient, quotient). The engine works purely with the
listed data: greedy maximal-destabilizer steps walk direct edges, so the
filtration is reproducible and independent of input ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .charges import Order, evaluate_charge_row, phase_compare, phase_valid
from .errors import PresentationError
from .gaussian import GaussianRational

ClassVec = Tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    sub: str
    ambient: str
    quotient: str


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str
    message: str


@dataclass(frozen=True)
class CategoryPresentation:
    """Finite abelian-category presentation.

    Zero edges (zero below everything) and reflexive edges (everything below
    itself with zero quotient) are implied and added on construction when
    absent, so authored files only need the interesting extensions.
    """

    objects: Dict[str, ClassVec]
    edges: Tuple[Edge, ...]
    zero: str

    def __post_init__(self):
        objects = {str(k): tuple(int(x) for x in v) for k, v in self.objects.items()}
        if self.zero not in objects:
            raise PresentationError(f"zero object {self.zero!r} missing")
        edges = {(e.sub, e.ambient, e.quotient) for e in self.edges}
        for name in objects:
            if name != self.zero:
                edges.add((self.zero, name, name))
                edges.add((name, name, self.zero))
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "edges", tuple(Edge(*t) for t in sorted(edges)))

    # -- structure queries ----------------------------------------------------

    def class_of(self, name: str) -> ClassVec:
        try:
            return self.objects[name]
        except KeyError:
            raise PresentationError(f"unknown object id {name!r}") from None

    def up_edges(self) -> Dict[str, List[Edge]]:
        up: Dict[str, List[Edge]] = {name: [] for name in self.objects}
        for e in self.edges:
            up[e.sub].append(e)
        for lst in up.values():
            lst.sort(key=lambda e: (e.ambient, e.quotient))
        return up

    def subobjects_below(self, name: str) -> FrozenSet[str]:
        """All B with B <= name in the reflexive-transitive closure."""
        down: Dict[str, List[str]] = {n: [] for n in self.objects}
        for e in self.edges:
            if e.sub != e.ambient:
                down[e.ambient].append(e.sub)
        seen = {name}
        stack = [name]
        while stack:
            cur = stack.pop()
            for nxt in down[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)

    def leq(self, a: str, b: str) -> bool:
        return a in self.subobjects_below(b)


@dataclass(frozen=True)
class Filtration:
    """Chain 0 = A_0 < A_1 < ... < A_n = A along listed edges; the i-th factor
    class is the class of the quotient of the edge A_{i-1} < A_i."""

    steps: Tuple[str, ...]
    factor_classes: Tuple[ClassVec, ...]
    factor_ids: Tuple[str, ...]
    notes: Tuple[str, ...] = field(default=())


ChargeRow = Sequence[GaussianRational]


def _charge_of(cat: CategoryPresentation, charge: ChargeRow, name: str) -> GaussianRational:
    return evaluate_charge_row(charge, cat.class_of(name))


def validate(cat: CategoryPresentation, charge: ChargeRow) -> List[Violation]:
    """Structural and charge validation; an empty list means all invariants
    hold and every nonzero object has a charge in the allowed half-plane."""
    out: List[Violation] = []
    if any(x != 0 for x in cat.class_of(cat.zero)):
        out.append(Violation("zero-class", cat.zero, "zero object has nonzero class"))
    for e in cat.edges:
        for name in (e.sub, e.ambient, e.quotient):
            if name not in cat.objects:
                out.append(Violation("unknown-id", name, f"edge {e} references unknown id"))
                break
        else:
            ca = cat.class_of(e.ambient)
            cs = cat.class_of(e.sub)
            cq = cat.class_of(e.quotient)
            if len({len(ca), len(cs), len(cq)}) != 1 or any(
                    a != s + q for a, s, q in zip(ca, cs, cq)):
                out.append(Violation(
                    "additivity", e.ambient,
                    f"edge {e.sub} < {e.ambient} / {e.quotient}: "
                    "class(ambient) != class(sub) + class(quotient)"))
            if e.sub == cat.zero and e.quotient != e.ambient:
                out.append(Violation("zero-edge", e.ambient,
                                     "edge from zero must have quotient = ambient"))
            if e.sub == e.ambient and e.quotient != cat.zero:
                out.append(Violation("reflexive-edge", e.ambient,
                                     "reflexive edge must have quotient = zero"))
    # antisymmetry of the closure: no directed cycle through strict edges
    colors: Dict[str, int] = {}

    def dfs(node: str, stack: List[str]) -> Optional[List[str]]:
        colors[node] = 1
        for e in up[node]:
            if e.ambient == node:
                continue
            c = colors.get(e.ambient, 0)
            if c == 1:
                return stack + [node, e.ambient]
            if c == 0:
                cyc = dfs(e.ambient, stack + [node])
                if cyc:
                    return cyc
        colors[node] = 2
        return None

    up = cat.up_edges()
    for name in sorted(cat.objects):
        if colors.get(name, 0) == 0:
            cyc = dfs(name, [])
            if cyc:
                out.append(Violation("cycle", cyc[-1],
                                     "subobject relation is not a partial order: "
                                     + " < ".join(cyc)))
                break
    for name in sorted(cat.objects):
        if name == cat.zero:
            continue
        z = _charge_of(cat, charge, name)
        if not phase_valid(z):
            out.append(Violation(
                "invalid-charge", name,
                f"Z({name}) = {z} outside the upper half-plane union R_{{<0}}"))
    return out


def validate_or_raise(cat: CategoryPresentation, charge: ChargeRow) -> None:
    violations = validate(cat, charge)
    if violations:
        lines = "; ".join(f"[{v.code}] {v.subject}: {v.message}" for v in violations)
        raise PresentationError(f"invalid presentation: {lines}")


def is_semistable(cat: CategoryPresentation, charge: ChargeRow, a: str) -> bool:
    """No strict nonzero subobject of larger phase."""
    if a not in cat.objects or a == cat.zero:
        raise PresentationError(f"need a nonzero object id, got {a!r}")
    za = _charge_of(cat, charge, a)
    for b in cat.subobjects_below(a):
        if b in (a, cat.zero):
            continue
        if phase_compare(_charge_of(cat, charge, b), za) is Order.GT:
            return False
    return True


def hn_filtration(cat: CategoryPresentation, charge: ChargeRow, a: str) -> Filtration:
    """Greedy Harder-Narasimhan filtration.

    At each stage, among the direct continuations of the current step inside
    the subobject poset of ``a``, pick the one whose factor has maximal phase;
    ties prefer the inclusion-maximal continuation, then the smallest id (the
    id tie-break only fires on genuinely ambiguous presentations and is
    recorded in the filtration notes). The factors are re-checked to be
    semistable with strictly decreasing phases.
    """
    if a not in cat.objects or a == cat.zero:
        raise PresentationError(f"need a nonzero object id, got {a!r}")
    up = cat.up_edges()
    subs_a = cat.subobjects_below(a)
    steps = [cat.zero]
    factor_ids: List[str] = []
    notes: List[str] = []
    cur = cat.zero
    while cur != a:
        cands = [e for e in up[cur]
                 if e.ambient in subs_a and e.ambient != cur and e.quotient != cat.zero]
        if not cands:
            raise PresentationError(
                f"no subobject-edge continuation from {cur!r} towards {a!r}: "
                "presentation too sparse for a filtration")
        best: List[Edge] = []
        for e in cands:
            zf = _charge_of(cat, charge, e.quotient)
            if not best:
                best = [e]
                continue
            cmp = phase_compare(zf, _charge_of(cat, charge, best[0].quotient))
            if cmp is Order.GT:
                best = [e]
            elif cmp is Order.EQ:
                best.append(e)
        maximal = [e for e in best
                   if not any(o is not e and e.ambient != o.ambient
                              and cat.leq(e.ambient, o.ambient) for o in best)]
        maximal.sort(key=lambda e: (e.ambient, e.quotient))
        distinct_tops = {e.ambient for e in maximal}
        if len(distinct_tops) > 1:
            notes.append(
                f"ambiguous maximal destabilizer above {cur!r}: "
                f"incomparable candidates {sorted(distinct_tops)}; smallest id chosen")
        chosen = maximal[0]
        steps.append(chosen.ambient)
        factor_ids.append(chosen.quotient)
        cur = chosen.ambient
    factor_classes = tuple(cat.class_of(f) for f in factor_ids)
    # consistency: strictly decreasing phases and semistable factors
    for f1, f2 in zip(factor_ids, factor_ids[1:]):
        if phase_compare(_charge_of(cat, charge, f1),
                         _charge_of(cat, charge, f2)) is not Order.GT:
            raise PresentationError(
                f"greedy filtration of {a!r} has non-decreasing factor phases "
                f"({f1!r} then {f2!r}): presentation is inconsistent")
    for f in factor_ids:
        if not is_semistable(cat, charge, f):
            raise PresentationError(
                f"factor {f!r} of the filtration of {a!r} is not semistable: "
                "presentation is inconsistent")
    total = cat.class_of(a)
    sums = [sum(col) for col in zip(*factor_classes)] if factor_classes else [0] * len(total)
    if tuple(sums) != total:
        raise PresentationError("factor classes do not sum to the class of the object")
    return Filtration(tuple(steps), factor_classes, tuple(factor_ids), tuple(notes))


def jh_factors(cat: CategoryPresentation, charge: ChargeRow, a: str) -> List[ClassVec]:
    """Factor classes of a maximal chain of same-phase subobjects of a
    semistable object. All maximal chains are enumerated; their factor
    multisets must agree, otherwise the presentation is inconsistent."""
    if not is_semistable(cat, charge, a):
        raise PresentationError(f"{a!r} is not semistable; no JH factors")
    za = _charge_of(cat, charge, a)
    up = cat.up_edges()
    subs_a = cat.subobjects_below(a)

    def on_ray(name: str) -> bool:
        return phase_compare(_charge_of(cat, charge, name), za) is Order.EQ

    pool = {b for b in subs_a if b == cat.zero or (b != cat.zero and on_ray(b))}

    chains: List[Tuple[Tuple[str, ...], Tuple[str, ...]]] = []

    def dfs(cur: str, path: Tuple[str, ...], facs: Tuple[str, ...]):
        if cur == a:
            chains.append((path, facs))
            return
        for e in up[cur]:
            if (e.ambient in pool and e.ambient != cur and e.ambient in subs_a
                    and e.quotient != cat.zero and on_ray(e.quotient)):
                dfs(e.ambient, path + (e.ambient,), facs + (e.quotient,))

    dfs(cat.zero, (cat.zero,), ())
    if not chains:
        raise PresentationError(f"no same-phase chain from zero to {a!r}")
    step_sets = [frozenset(p) for p, _ in chains]
    maximal = [i for i, s in enumerate(step_sets)
               if not any(j != i and s < step_sets[j] for j in range(len(chains)))]
    multisets = {tuple(sorted(cat.class_of(f) for f in chains[i][1])) for i in maximal}
    if len(multisets) != 1:
        raise PresentationError(
            f"maximal same-phase chains of {a!r} have different factor multisets: "
            "presentation is inconsistent")
    best = min(maximal, key=lambda i: chains[i][0])
    return [cat.class_of(f) for f in chains[best][1]]


def seesaw_check(cat: CategoryPresentation, charge: ChargeRow) -> List[Violation]:
    """See-saw consistency on every edge with all three objects nonzero:
    phi(B) <= phi(A) iff phi(C) >= phi(A), and symmetrically. Any violation
    indicates an inconsistent charge/presentation pair."""
    out: List[Violation] = []
    for e in cat.edges:
        if cat.zero in (e.sub, e.ambient, e.quotient):
            continue
        zb = _charge_of(cat, charge, e.sub)
        za = _charge_of(cat, charge, e.ambient)
        zc = _charge_of(cat, charge, e.quotient)
        o_ba = phase_compare(zb, za)
        o_ca = phase_compare(zc, za)
        if (o_ba in (Order.LT, Order.EQ)) != (o_ca in (Order.GT, Order.EQ)):
            out.append(Violation("seesaw", e.ambient,
                                 f"edge {e.sub} < {e.ambient} / {e.quotient}: "
                                 f"phi(B)<=phi(A) is {o_ba} but phi(C)>=phi(A) is {o_ca}"))
        if (o_ba in (Order.GT, Order.EQ)) != (o_ca in (Order.LT, Order.EQ)):
            out.append(Violation("seesaw", e.ambient,
                                 f"edge {e.sub} < {e.ambient} / {e.quotient}: "
                                 f"phi(B)>=phi(A) is {o_ba} but phi(C)<=phi(A) is {o_ca}"))
    return out
