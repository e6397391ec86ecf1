"""Finite commuting squares and surjection families, with checkers.

A Square is four carriers and four maps

        q
    D ----> B
    |       |
  g |       | f
    v       v
    C ----> A
        p

commuting (f o q = p o g). check_covering_square asks that p is onto
and that D reaches every matched pair (b, c) with f(b) = p(c).
check_collection_square asks, for every a and every surjection
e: E ->> B_a with |E| up to a bound, for some c over a whose leg
q|D_c factors through e. Surjections are enumerated up to renaming of
E, which is sound because the condition never inspects E's element
names. At finite scale a covering square always passes the collection
check (pick any c over a and lift pointwise); the checker still runs
the honest search so the quantifiers stay executable, and the reports
record the witnesses it found.

The rest of the module covers families: is_amc_witness_family checks
that every surjection onto a base is factored through by some member,
is_collection_family checks the indexed variant where refining maps
must come from the family itself, refines computes factorizations,
and build_amc_square assembles the explicit square whose D is the
disjoint union of the graphs of a chosen family of fiber covers.
strong_amc_factor upgrades a witness family to the factor-through
form: it pulls the first member back along the given surjection and
refines the result inside the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import (
    CodomainMismatch,
    EmptyFamily,
    InvalidSquare,
    NoFactorization,
    NotASurjection,
    UnknownElement,
)
from .finite import Carrier, FinMap, Subset, compose, fiber, identity, image, is_surjection, pullback


@dataclass(frozen=True)
class Square:
    """A commuting square f o q = p o g; corners are read off the maps."""

    f: FinMap
    p: FinMap
    g: FinMap
    q: FinMap

    def __post_init__(self) -> None:
        if self.f.cod != self.p.cod:
            raise CodomainMismatch("f and p must share their codomain")
        if self.g.cod != self.p.dom:
            raise CodomainMismatch("g must land in the domain of p")
        if self.q.cod != self.f.dom:
            raise CodomainMismatch("q must land in the domain of f")
        if self.g.dom != self.q.dom:
            raise CodomainMismatch("g and q must share their domain")
        for di in range(len(self.g.dom)):
            if self.f.table[self.q.table[di]] != self.p.table[self.g.table[di]]:
                d = self.g.dom.name(di)
                raise InvalidSquare(
                    f"square does not commute at {d!r}: "
                    f"f(q({d})) = {self.f.cod.name(self.f.table[self.q.table[di]])!r} "
                    f"but p(g({d})) = {self.p.cod.name(self.p.table[self.g.table[di]])!r}"
                )

    @property
    def A(self) -> Carrier:
        return self.f.cod

    @property
    def B(self) -> Carrier:
        return self.f.dom

    @property
    def C(self) -> Carrier:
        return self.p.dom

    @property
    def D(self) -> Carrier:
        return self.g.dom


@dataclass(frozen=True)
class SurjectionFamily:
    """An indexed list of surjections onto one base carrier."""

    base: Carrier
    members: tuple[FinMap, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        for i, member in enumerate(self.members):
            if member.cod != self.base:
                raise CodomainMismatch(f"member {i} does not land in the base")
            if not is_surjection(member):
                missed = [a for a in self.base.names if len(fiber(member, a)) == 0]
                raise NotASurjection(f"member {i} misses {missed} of the base")


def covering_report(sq: Square) -> dict:
    """Is p onto, and does D reach every pair (b, c) with f(b) = p(c)?

    The counterexample names either an element of A outside the image
    of p, or an uncovered matched pair.
    """
    p_image = image(sq.p)
    for a in sq.A.names:
        if a not in p_image:
            return {
                "holds": False,
                "p_surjective": False,
                "pairs_surjective": None,
                "counterexample": {"kind": "p-misses", "element": a},
            }
    reached = {(sq.q.table[di], sq.g.table[di]) for di in range(len(sq.D))}
    for bi in range(len(sq.B)):
        for ci in range(len(sq.C)):
            if sq.f.table[bi] == sq.p.table[ci] and (bi, ci) not in reached:
                return {
                    "holds": False,
                    "p_surjective": True,
                    "pairs_surjective": False,
                    "counterexample": {
                        "kind": "pair-not-covered",
                        "pair": [sq.B.name(bi), sq.C.name(ci)],
                    },
                }
    return {
        "holds": True,
        "p_surjective": True,
        "pairs_surjective": True,
        "counterexample": None,
    }


def check_covering_square(sq: Square) -> bool:
    return covering_report(sq)["holds"]


@lru_cache(maxsize=None)
def _fiber_size_tuples(targets: int, bound: int) -> tuple[tuple[int, ...], ...]:
    """All (k_1 .. k_targets) with every k >= 1 and sum <= bound.

    Each tuple is one surjection onto a fixed ordered target, up to
    renaming of the (anonymous) domain; enumerated lexicographically.
    """
    if targets == 0:
        return ((),)
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], slots_left: int, budget: int) -> None:
        if slots_left == 0:
            out.append(tuple(prefix))
            return
        for k in range(1, budget - (slots_left - 1) + 1):
            prefix.append(k)
            rec(prefix, slots_left - 1, budget - k)
            prefix.pop()

    rec([], targets, bound)
    return tuple(out)


def surjections_onto(target: Carrier, bound: int, prefix: str = "e") -> Iterator[FinMap]:
    """Canonical surjections E ->> target with |E| <= bound.

    One representative per fiber-size tuple; domain elements are named
    prefix0, prefix1, ... and assigned to targets in blocks.
    """
    for sizes in _fiber_size_tuples(len(target), bound):
        total = sum(sizes)
        dom = Carrier(tuple(f"{prefix}{i}" for i in range(total)))
        table: list[int] = []
        for ti, k in enumerate(sizes):
            table.extend([ti] * k)
        yield FinMap(dom, target, tuple(table))


def default_square_bound(sq: Square) -> int:
    """Largest fiber of f, plus two."""
    sizes = [len(fiber(sq.f, a)) for a in sq.A.names]
    return (max(sizes) if sizes else 0) + 2


def collection_report(sq: Square, bound: int | None = None, record: bool = False) -> dict:
    """For every a and every surjection e: E ->> B_a with |E| <= bound,
    search for c over a and h: D_c -> E with e o h = q restricted to D_c.

    Fibers larger than the bound admit no surjection within the budget
    and are reported as skipped. Witnesses additionally note whether
    q restricted to D_c is itself onto B_a, which the covering
    condition implies but this check does not require.
    """
    if bound is None:
        bound = default_square_bound(sq)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    nA = len(sq.A)
    f_fibers: list[list[int]] = [[] for _ in range(nA)]
    for bi, ai in enumerate(sq.f.table):
        f_fibers[ai].append(bi)
    p_fibers: list[list[int]] = [[] for _ in range(nA)]
    for ci, ai in enumerate(sq.p.table):
        p_fibers[ai].append(ci)
    d_by_c: list[list[int]] = [[] for _ in range(len(sq.C))]
    for di, ci in enumerate(sq.g.table):
        d_by_c[ci].append(di)

    witnesses: list[dict] = []
    skipped: list[dict] = []
    for ai, a in enumerate(sq.A.names):
        fiber_b = f_fibers[ai]
        position = {bi: j for j, bi in enumerate(fiber_b)}
        if len(fiber_b) > bound:
            skipped.append({"a": a, "reason": f"fiber has {len(fiber_b)} elements, bound is {bound}"})
            continue
        for sizes in _fiber_size_tuples(len(fiber_b), bound):
            offsets: list[int] = []
            acc = 0
            for k in sizes:
                offsets.append(acc)
                acc += k
            found: tuple[int, dict[int, int]] | None = None
            for ci in p_fibers[ai]:
                h: dict[int, int] = {}
                ok = True
                for di in d_by_c[ci]:
                    j = position.get(sq.q.table[di])
                    if j is None:  # cannot happen in a commuting square
                        ok = False
                        break
                    h[di] = offsets[j]  # first element of e's fiber over q(d)
                if ok:
                    found = (ci, h)
                    break
            if found is None:
                return {
                    "holds": False,
                    "bound": bound,
                    "counterexample": {
                        "a": a,
                        "fiber": [sq.B.name(bi) for bi in fiber_b],
                        "fiber_sizes": list(sizes),
                        "domain_size": sum(sizes),
                    },
                    "witnesses": witnesses,
                    "skipped": skipped,
                }
            if record:
                ci, h = found
                hit = {sq.q.table[di] for di in d_by_c[ci]}
                witnesses.append(
                    {
                        "a": a,
                        "fiber_sizes": list(sizes),
                        "c": sq.C.name(ci),
                        "h": {sq.D.name(di): f"e{e}" for di, e in sorted(h.items())},
                        "q_restriction_onto_fiber": hit == set(fiber_b),
                    }
                )
    return {
        "holds": True,
        "bound": bound,
        "counterexample": None,
        "witnesses": witnesses,
        "skipped": skipped,
    }


def check_collection_square(sq: Square, bound: int | None = None) -> bool:
    return collection_report(sq, bound)["holds"]


def build_amc_square(f: FinMap, families: Mapping[str, Sequence[FinMap]]) -> Square:
    """The explicit square over f from a choice of fiber covers.

    For each a in cod(f), families[a] must be a nonempty list of maps
    into dom(f) whose image is exactly the fiber over a. The square
    has C = A with p the identity, and

        D = { (a, t, x) : t in families[a], x in dom(t) }

    with g the first projection and q(a, t, x) = t(x). The result
    passes both square checks at every bound.
    """
    A = f.cod
    B = f.dom
    for a in families:
        A.index(a)  # reject stray keys
    d_names: list[str] = []
    g_table: list[int] = []
    q_table: list[int] = []
    for ai, a in enumerate(A.names):
        fam = tuple(families.get(a, ()))
        if not fam:
            raise EmptyFamily(f"no surjections given for fiber over {a!r}")
        want = fiber(f, a).bits
        for ti, t in enumerate(fam):
            if t.cod != B:
                raise CodomainMismatch(f"cover t{ti} over {a!r} does not land in dom(f)")
            if image(t).bits != want:
                raise NotASurjection(f"cover t{ti} over {a!r} is not onto the fiber of {a!r}")
            for xi, x in enumerate(t.dom.names):
                d_names.append(f"({a},t{ti},{x})")
                g_table.append(ai)
                q_table.append(t.table[xi])
    D = Carrier(tuple(d_names))
    return Square(
        f=f,
        p=identity(A),
        g=FinMap(D, A, tuple(g_table)),
        q=FinMap(D, B, tuple(q_table)),
    )


def refines(p: FinMap, q: FinMap) -> FinMap | None:
    """The least f with q o f = p, or None when image(p) ⊄ image(q).

    Least means pointwise: f(y) is the first element of q's fiber over
    p(y) in declaration order.
    """
    if p.cod != q.cod:
        raise CodomainMismatch("refinement needs a common codomain")
    first_preimage: dict[int, int] = {}
    for zi in range(len(q.dom) - 1, -1, -1):
        first_preimage[q.table[zi]] = zi
    table: list[int] = []
    for yi in range(len(p.dom)):
        zi = first_preimage.get(p.table[yi])
        if zi is None:
            return None
        table.append(zi)
    return FinMap(p.dom, q.dom, tuple(table))


def default_family_bound(base_size: int) -> int:
    return base_size + 2


def amc_family_report(fam: SurjectionFamily, bound: int | None = None, record: bool = False) -> dict:
    """Does every surjection onto the base factor some member through it?

    For each canonical surjection p: Y ->> base with |Y| <= bound, look
    for an index i and f: Y_i -> Y with p o f = p_i.
    """
    if bound is None:
        bound = default_family_bound(len(fam.base))
    if bound < len(fam.base):
        raise ValueError("bound must be at least the size of the base")
    witnesses: list[dict] = []
    for p in surjections_onto(fam.base, bound, prefix="y"):
        found: tuple[int, FinMap] | None = None
        for i, member in enumerate(fam.members):
            lift = refines(member, p)
            if lift is not None:  # p is onto, so this never misses
                found = (i, lift)
                break
        if found is None:
            return {
                "holds": False,
                "bound": bound,
                "counterexample": {
                    "domain": list(p.dom.names),
                    "map": p.to_mapping(),
                },
                "witnesses": witnesses,
            }
        if record:
            i, lift = found
            witnesses.append(
                {
                    "surjection": {"domain": list(p.dom.names), "map": p.to_mapping()},
                    "member": i,
                    "factor": lift.to_mapping(),
                }
            )
    return {"holds": True, "bound": bound, "counterexample": None, "witnesses": witnesses}


def is_amc_witness_family(fam: SurjectionFamily, bound: int | None = None) -> bool:
    return amc_family_report(fam, bound)["holds"]


def collection_family_report(
    ys: Sequence[Carrier], bound: int | None = None, record: bool = False
) -> dict:
    """Is every surjection onto any member refined from within the family?

    For each index i and canonical surjection p: E ->> Y_i with
    |E| <= bound, look for i' and f: Y_{i'} -> E whose composite with p
    is onto Y_i.
    """
    if bound is None:
        bound = default_family_bound(max((len(y) for y in ys), default=0))
    if bound < 1:
        raise ValueError("bound must be at least 1")
    witnesses: list[dict] = []
    for i, target in enumerate(ys):
        if len(target) > bound:
            continue  # no surjection within budget, vacuous
        for p in surjections_onto(target, bound, prefix="e"):
            found: tuple[int, FinMap] | None = None
            for i2, source in enumerate(ys):
                # p o f hits at most |source| targets, so smaller sources can't work
                if len(source) < len(target):
                    continue
                if len(target) == 0:
                    if len(source) > 0:
                        continue
                    f = FinMap(source, p.dom, ())
                else:
                    first_over = {}
                    for ei in range(len(p.dom) - 1, -1, -1):
                        first_over[p.table[ei]] = ei
                    table = [
                        first_over[k] if k < len(target) else 0
                        for k in range(len(source))
                    ]
                    f = FinMap(source, p.dom, tuple(table))
                if is_surjection(compose(p, f)):
                    found = (i2, f)
                    break
            if found is None:
                return {
                    "holds": False,
                    "bound": bound,
                    "counterexample": {
                        "index": i,
                        "domain": list(p.dom.names),
                        "map": p.to_mapping(),
                    },
                    "witnesses": witnesses,
                }
            if record:
                i2, f = found
                witnesses.append(
                    {
                        "index": i,
                        "surjection": {"domain": list(p.dom.names), "map": p.to_mapping()},
                        "refining_index": i2,
                        "factor": f.to_mapping(),
                    }
                )
    return {"holds": True, "bound": bound, "counterexample": None, "witnesses": witnesses}


def is_collection_family(ys: Sequence[Carrier], bound: int | None = None) -> bool:
    return collection_family_report(ys, bound)["holds"]


def strong_amc_factor(fam: SurjectionFamily, f: FinMap) -> tuple[int, FinMap]:
    """An index j and g: Y_j -> dom(f) with f o g = p_j.

    Route: pull the first member back along f, giving a surjection
    u: T ->> base; then find a member p_j that u factors (p_j = u o k)
    and push k through the pullback projection. Deterministic: first
    member, first j, least maps throughout.
    """
    if f.cod != fam.base:
        raise CodomainMismatch("f must land in the family's base")
    if not is_surjection(f):
        missed = [a for a in fam.base.names if len(fiber(f, a)) == 0]
        raise NotASurjection(f"f misses {missed} of the base")
    if not fam.members:
        raise NoFactorization("the family has no members")
    first = fam.members[0]
    _, pr_z, _ = pullback(f, first)
    u = compose(f, pr_z)  # onto: f is onto and the pullback hits every fiber pair
    for j, member in enumerate(fam.members):
        k = refines(member, u)
        if k is not None:
            return j, compose(pr_z, k)
    raise NoFactorization("no member factors through the pulled-back surjection")
