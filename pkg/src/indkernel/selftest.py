"""Randomized invariant suites behind the `selftest` subcommand.

Each suite draws instances from gen with a Random seeded from the
INDKERNEL_SEED environment variable (default 0) and checks one family
of invariants. One line per suite is printed; the run fails if any
suite finds a violation.
"""

from __future__ import annotations

from random import Random
from typing import Callable

from . import dsl, gen, inddef, proofs, squares, topology, wtree
from .errors import DslError, DuplicateName
from .finite import Carrier, FinMap, compose, fiber


def _closure_vs_oracle(rng: Random) -> tuple[int, str | None]:
    for case in range(150):
        phi = gen.random_definition(rng)
        u = gen.random_subset(rng, phi.carrier)
        fast = inddef.closure(phi, u)
        slow = inddef.naive_closure_oracle(phi, u)
        if fast != slow:
            return case, f"closure {fast} != oracle {slow} on {phi}, seed {u}"
    return 150, None


def _closure_operator_laws(rng: Random) -> tuple[int, str | None]:
    for case in range(100):
        phi = gen.random_definition(rng)
        u = gen.random_subset(rng, phi.carrier)
        v = u | gen.random_subset(rng, phi.carrier)
        cu = inddef.closure(phi, u)
        if not u <= cu:
            return case, "closure is not extensive"
        if not cu <= inddef.closure(phi, v):
            return case, "closure is not monotone"
        if inddef.closure(phi, cu) != cu:
            return case, "closure is not idempotent"
        if not inddef.is_phi_closed(phi, cu):
            return case, "closure output is not closed"
    return 100, None


def _characterize_matches_closure(rng: Random) -> tuple[int, str | None]:
    for case in range(100):
        phi = gen.random_definition(rng)
        u = gen.random_subset(rng, phi.carrier)
        depth = len(phi.carrier) + 1
        if proofs.characterize(phi, u, depth) != inddef.closure(phi, u):
            return case, f"bounded derivations disagree with closure on {phi}"
    return 100, None


def _witness_compactness(rng: Random) -> tuple[int, str | None]:
    for case in range(80):
        phi = gen.random_definition(rng)
        u = gen.random_subset(rng, phi.carrier)
        basis = proofs.compactness_basis(phi)
        closed = inddef.closure(phi, u)
        for goal in closed.names():
            v = proofs.witness(phi, u, goal)
            if v is None or not v <= u or goal not in inddef.closure(phi, v) or v not in basis:
                return case, f"witness failed for {goal!r} in {phi}"
    return 80, None


def _tree_fold_identity(rng: Random) -> tuple[int, str | None]:
    for case in range(100):
        sig = gen.random_signature(rng)
        tree = wtree.random_tree(sig, rng)
        rebuilt = wtree.fold(sig, tree, lambda label, kids: wtree.sup(sig, label, kids))
        if rebuilt != tree:
            return case, "fold with sup did not reconstruct the tree"
        count = wtree.fold(sig, tree, lambda label, kids: 1 + sum(kids.values()))
        if count != wtree.node_count(tree):
            return case, "fold node count disagrees with subtree enumeration"
    return 100, None


def _covering_implies_collection(rng: Random) -> tuple[int, str | None]:
    for case in range(60):
        sq = gen.random_square(rng, max_size=4)
        if squares.check_covering_square(sq):
            for bound in range(1, 5):
                if not squares.check_collection_square(sq, bound):
                    return case, f"covering square failed the collection check at bound {bound}"
    return 60, None


def _amc_square_construction(rng: Random) -> tuple[int, str | None]:
    for case in range(30):
        target = gen.named_carrier(rng.randint(1, 3), "a")
        f = gen.random_surjection(rng, target, prefix="b")
        families = {
            a: [
                _into(f.dom, gen.random_surjection(
                    rng, Carrier(fiber(f, a).names()), prefix=f"t{a}_"))
                for _ in range(rng.randint(1, 2))
            ]
            for a in target.names
        }
        sq = squares.build_amc_square(f, families)
        if not squares.check_covering_square(sq) or not squares.check_collection_square(sq):
            return case, "constructed square failed a check"
    return 30, None


def _into(big: Carrier, s: FinMap) -> FinMap:
    """Reindex a map into a subcarrier as a map into the full carrier."""
    return FinMap(s.dom, big, tuple(big.index(s.cod.name(t)) for t in s.table))


def _refinement_preorder(rng: Random) -> tuple[int, str | None]:
    for case in range(60):
        target = gen.named_carrier(rng.randint(1, 4), "x")
        p = gen.random_surjection(rng, target, prefix="y")
        q = gen.random_surjection(rng, target, prefix="z")
        f = squares.refines(p, p)
        if f is None or compose(p, f).table != p.table:
            return case, "refinement is not reflexive"
        g = squares.refines(p, q)
        if g is None or compose(q, g).table != p.table:
            return case, "refinement between surjections failed"
    return 60, None


def _parser_roundtrip(rng: Random) -> tuple[int, str | None]:
    for case in range(50):
        ast = gen.random_ast(rng)
        if dsl.parse_rule_file(dsl.emit(ast)) != ast:
            return case, f"round trip changed the AST for:\n{dsl.emit(ast)}"
    alphabet = "abc xyz_01\n\t#->&<-set rule axiom seed goal$(é"
    for case in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))
        try:
            dsl.parse_rule_file(text)
        except (DslError, DuplicateName):
            pass
    return 550, None


def _cover_translation(rng: Random) -> tuple[int, str | None]:
    for case in range(60):
        cp = gen.random_cover_presentation(rng)
        u = gen.random_subset(rng, cp.base)
        phi = topology.to_inductive_definition(cp)
        closed = inddef.closure(phi, u)
        for a in cp.base.names:
            if topology.covers(cp, a, u) != (a in closed):
                return case, "cover relation disagrees with the closure"
            v = topology.compact_subcover(cp, a, u)
            if (v is None) == (a in closed):
                return case, "subcover existence disagrees with coverage"
            if v is not None and (not v <= u or not topology.covers(cp, a, v)):
                return case, "subcover is not a valid witness"
    return 60, None


SUITES: tuple[tuple[str, Callable[[Random], tuple[int, str | None]]], ...] = (
    ("closure-vs-oracle", _closure_vs_oracle),
    ("closure-operator-laws", _closure_operator_laws),
    ("bounded-derivations", _characterize_matches_closure),
    ("witness-compactness", _witness_compactness),
    ("tree-fold-identity", _tree_fold_identity),
    ("covering-implies-collection", _covering_implies_collection),
    ("amc-square-construction", _amc_square_construction),
    ("refinement-preorder", _refinement_preorder),
    ("parser-roundtrip", _parser_roundtrip),
    ("cover-translation", _cover_translation),
)


def run_selftest(seed: int, out=print) -> int:
    failures = 0
    for name, suite in SUITES:
        try:
            cases, problem = suite(Random(f"{seed}:{name}"))
        except Exception as exc:  # a crashed suite is a failed suite
            failures += 1
            out(f"FAIL {name}: crashed with {type(exc).__name__}: {exc}")
            continue
        if problem is None:
            out(f"ok   {name} ({cases} cases)")
        else:
            failures += 1
            out(f"FAIL {name} (case {cases}): {problem}")
    return 0 if failures == 0 else 1
