"""Coset translation actions and the regular-normalized subgroup search.

Given a pair (G, G') with G' core-free, the points are the left cosets of
G' and G acts by left translation.  The search enumerates every regular
subgroup of the full symmetric group on the points that is normalized by
the translation image of G; each one is a Hopf-Galois structure on the
extension the pair models.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor

from .catalog import iso_type
from .errors import BudgetExceeded, CapExceeded, NotNormalClosure
from .groups import FiniteGroup, GroupHom, SubgroupRef, automorphism_group
from .perms import Perm, PermSet

DEGREE_CAP = 12
CROSS_CHECK_CAP = 8
DEFAULT_NODE_BUDGET = 10_000_000


class NodeBudget:
    """A shared counter of search work; raises once the limit is hit.

    One node is one permutation product or conjugation computed inside the
    search.  Exhaustion is always loud, never a silent truncation.
    """

    def __init__(self, limit: int = DEFAULT_NODE_BUDGET):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, amount: int = 1) -> None:
        with self._lock:
            self.used += amount
            if self.used > self.limit:
                raise BudgetExceeded(
                    f"search budget of {self.limit} nodes exhausted")


class ExtensionProblem:
    """A pair (G, G') with G' core-free, modeling a separable extension
    together with its normal closure."""

    def __init__(self, group: FiniteGroup, subgroup: SubgroupRef):
        if subgroup.parent is not group:
            raise ValueError("subgroup must belong to the given group")
        if len(group) % subgroup.order:
            raise ValueError("subgroup order must divide the group order")
        self.group = group
        self.subgroup = subgroup
        self.degree = len(group) // subgroup.order
        if self.degree < 2:
            raise ValueError("degree-1 extensions are excluded")
        core = self._core()
        if core != {0}:
            raise NotNormalClosure(
                "the subgroup contains a nontrivial normal subgroup of order "
                f"{len(core)}; the pair does not model a normal closure")

    def _core(self) -> set[int]:
        g = self.group
        core = set(self.subgroup.members)
        for x in range(len(g)):
            if core == {0}:
                break
            xi = g.inv(x)
            core &= {g.mul(g.mul(x, m), xi) for m in core}
        return core

    @staticmethod
    def galois(group: FiniteGroup) -> ExtensionProblem:
        """The Galois case: G' trivial, the action is the regular one."""
        return ExtensionProblem(group, group.trivial_subgroup())

    def describe(self) -> str:
        return (f"G = {self.group.name} (order {len(self.group)}), "
                f"G' of order {self.subgroup.order}, degree {self.degree}")


class CosetAction:
    """Left-translation action of G on the cosets of G'.

    Point 0 is the coset G' itself; the remaining cosets are indexed by
    first appearance while scanning G in canonical element order, which
    makes every derived object deterministic.
    """

    def __init__(self, problem: ExtensionProblem,
                 generators: tuple[int, ...] | None = None):
        self.problem = problem
        g = problem.group
        sub = problem.subgroup.members
        coset_of = [-1] * len(g)
        reps = []
        for x in range(len(g)):
            if coset_of[x] >= 0:
                continue
            idx = len(reps)
            reps.append(x)
            for s in sub:
                coset_of[g.mul(x, s)] = idx
        self.reps = tuple(reps)
        self.coset_of = tuple(coset_of)
        self.generators = tuple(generators) if generators is not None \
            else g.generators()
        if g.closure_of(self.generators) != frozenset(range(len(g))):
            raise ValueError("the given indices do not generate the group")
        self._perm_cache: dict[int, Perm] = {}

    @property
    def degree(self) -> int:
        return self.problem.degree

    def translation(self, x: int) -> Perm:
        """The permutation of the cosets induced by left translation by x."""
        p = self._perm_cache.get(x)
        if p is None:
            g = self.problem.group
            p = Perm(tuple(self.coset_of[g.mul(x, r)] for r in self.reps))
            self._perm_cache[x] = p
        return p

    def generator_perms(self) -> list[Perm]:
        return [self.translation(x) for x in self.generators]


def coset_action(problem: ExtensionProblem,
                 generators: tuple[int, ...] | None = None) -> CosetAction:
    return CosetAction(problem, generators)


class HGStructure:
    """One Hopf-Galois structure: a regular, translation-normalized
    permutation subgroup N together with its abstract group and type."""

    def __init__(self, action: CosetAction, perms: PermSet):
        self.action = action
        self.perms = perms
        self.group = FiniteGroup.from_permutations(
            [p.images for p in perms], name=f"N(deg {perms.degree})")
        self.type_name = iso_type(self.group)
        self._pos = {p.images: i for i, p in enumerate(perms.elements)}
        self._conj_cache: dict[int, tuple[int, ...]] = {}
        self._hom: GroupHom | None = None

    def key(self) -> tuple:
        return self.perms.key()

    def conj_action(self, x: int) -> tuple[int, ...]:
        """Conjugation by the translation of x, as a map on N's indices."""
        out = self._conj_cache.get(x)
        if out is None:
            lam = self.action.translation(x)
            lam_inv = lam.inverse()
            out = tuple(self._pos[(lam * p * lam_inv).images]
                        for p in self.perms.elements)
            self._conj_cache[x] = out
        return out

    def action_hom(self) -> GroupHom:
        """The homomorphism G -> Aut(N) induced by translation conjugation."""
        if self._hom is None:
            self._hom = induced_action_hom(self.action, self.perms)
        return self._hom

    def generator_strings(self) -> list[str]:
        return [str(self.perms.elements[i]) for i in self.group.generators()]

    def __repr__(self) -> str:
        return f"<HGStructure type {self.type_name} degree {self.perms.degree}>"


def induced_action_hom(action: CosetAction, perms: PermSet) -> GroupHom:
    """The conjugation homomorphism from G into Aut(N) for a normalized N."""
    if not perms.is_normalized_by(action.generator_perms()):
        raise ValueError("the subgroup is not normalized by the translations")
    n_group = FiniteGroup.from_permutations([p.images for p in perms])
    aut = automorphism_group(n_group)
    pos = {p.images: i for i, p in enumerate(perms.elements)}
    g = action.problem.group
    images = []
    for x in range(len(g)):
        lam = action.translation(x)
        lam_inv = lam.inverse()
        table = tuple(pos[(lam * p * lam_inv).images] for p in perms.elements)
        images.append(aut.index_of(table))
    return GroupHom(g, aut, images, check=False)


# -- the search ----------------------------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def _semiregular_tuples(n: int, d: int):
    """Yield all permutations of {0..n-1} whose cycles all have length d."""
    images = [0] * n

    def rec(free: tuple[int, ...]):
        if not free:
            yield tuple(images)
            return
        a = free[0]
        rest = free[1:]
        for combo in itertools.permutations(rest, d - 1):
            cycle = (a,) + combo
            for i in range(d):
                images[cycle[i]] = cycle[(i + 1) % d]
            taken = set(combo)
            yield from rec(tuple(x for x in rest if x not in taken))

    yield from rec(tuple(range(n)))


def _uniform_cycle_length(t: tuple[int, ...]) -> int | None:
    n = len(t)
    seen = bytearray(n)
    d = 0
    for s in range(n):
        if seen[s]:
            continue
        ln = 0
        x = s
        while not seen[x]:
            seen[x] = 1
            x = t[x]
            ln += 1
        if d == 0:
            d = ln
        elif ln != d:
            return None
    return d


def _key(t: tuple[int, ...], n: int) -> int:
    k = 0
    for v in t:
        k = k * n + v
    return k


def _conj_orbit(t0, gen_pairs, n, budget):
    rng = range(n)
    orb = {t0}
    stack = [t0]
    while stack:
        a = stack.pop()
        for g, gi in gen_pairs:
            c = tuple(g[a[gi[i]]] for i in rng)
            if c not in orb:
                orb.add(c)
                stack.append(c)
    budget.spend(len(orb) * len(gen_pairs))
    return orb


def _stable_closure(seed, gen_pairs, n, budget):
    """Close a set of image tuples under products and translation
    conjugation; None as soon as it outgrows n elements or picks up a
    non-semiregular element (neither can happen inside a regular N)."""
    els = set(seed)
    if len(els) > n:
        budget.spend(len(els))
        return None
    rng = range(n)
    frontier = list(els)
    ops = 0
    while frontier:
        new = []
        snapshot = list(els)
        for a in frontier:
            for b in snapshot:
                ops += 2
                for c in (tuple(a[b[i]] for i in rng), tuple(b[a[i]] for i in rng)):
                    if c not in els:
                        if _uniform_cycle_length(c) is None:
                            budget.spend(ops)
                            return None
                        els.add(c)
                        new.append(c)
                        if len(els) > n:
                            budget.spend(ops)
                            return None
            for g, gi in gen_pairs:
                ops += 1
                c = tuple(g[a[gi[i]]] for i in rng)
                if c not in els:
                    if _uniform_cycle_length(c) is None:
                        budget.spend(ops)
                        return None
                    els.add(c)
                    new.append(c)
                    if len(els) > n:
                        budget.spend(ops)
                        return None
        frontier = new
    budget.spend(ops)
    return frozenset(els)


def _viable_atoms(n, gen_pairs, budget):
    """Stage 1: orbit inventory.

    Partition the semiregular permutations into conjugation orbits under
    the translation generators; each orbit small enough to fit in a regular
    subgroup is grown to the smallest translation-stable group containing
    it.  Every regular normalized N is a union of such atoms.
    """
    id_t = tuple(range(n))
    atoms: set[frozenset] = set()
    for d in _divisors(n):
        visited: set[int] = set()
        for t in _semiregular_tuples(n, d):
            k = _key(t, n)
            if k in visited:
                continue
            orbit = _conj_orbit(t, gen_pairs, n, budget)
            visited.update(_key(o, n) for o in orbit)
            if len(orbit) + 1 > n:
                continue
            orbit.add(id_t)
            grown = _stable_closure(orbit, gen_pairs, n, budget)
            if grown is not None:
                atoms.add(grown)
    return sorted(atoms, key=sorted)


def _combine_atoms(atoms, n, gen_pairs, budget, workers=1):
    """Stage 2: depth-first unions of atoms, closing after every step."""
    results: set[frozenset] = set()
    smaller = []
    for a in atoms:
        if len(a) == n:
            results.add(a)
        else:
            smaller.append(a)

    def run(top_indices):
        found = set()
        seen = set()

        def extend(p, start):
            if len(p) == n:
                found.add(p)
                return
            for j in range(start, len(smaller)):
                a = smaller[j]
                if a <= p:
                    continue
                q = _stable_closure(p | a, gen_pairs, n, budget)
                if q is None:
                    continue
                state = (q, j + 1)
                if state in seen:
                    continue
                seen.add(state)
                extend(q, j + 1)

        for j in top_indices:
            extend(smaller[j], j + 1)
        return found

    if workers <= 1 or len(smaller) <= 1:
        results |= run(range(len(smaller)))
    else:
        chunks = [range(w, len(smaller), workers) for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(run, chunks):
                results |= found
    return results


def enumerate_regular_normalized(action: CosetAction, *,
                                 degree_cap: int = DEGREE_CAP,
                                 budget: NodeBudget | None = None,
                                 workers: int = 1) -> list[HGStructure]:
    """All regular subgroups of Perm(points) normalized by the translation
    image of G, each exactly once, in canonical order.

    Every result is re-checked post hoc with the permutation-set predicates,
    independently of the pruning used by the search.
    """
    n = action.degree
    if n > degree_cap:
        raise CapExceeded(f"enumeration capped at degree {degree_cap}, got {n}")
    if budget is None:
        budget = NodeBudget()
    gen_perms = action.generator_perms()
    gen_pairs = [(p.images, p.inverse().images) for p in gen_perms]
    atoms = _viable_atoms(n, gen_pairs, budget)
    groups = _combine_atoms(atoms, n, gen_pairs, budget, workers=workers)
    structures = []
    for fs in sorted(groups, key=sorted):
        perms = PermSet(n, tuple(sorted(Perm(t) for t in fs)))
        if not (perms.is_regular() and perms.is_normalized_by(gen_perms)):
            raise RuntimeError("search produced an invalid subgroup; "
                               "this is a bug in the pruning")
        structures.append(HGStructure(action, perms))
    structures.sort(key=lambda s: (s.type_name, s.key()))
    return structures


def translation_structure(action: CosetAction, members) -> HGStructure:
    """The structure whose N is the translation image of a subgroup of G.

    Valid whenever the image is regular and normalized (e.g. the image of a
    normal complement of G'); raises ValueError otherwise.
    """
    perms = PermSet.from_perms({action.translation(x) for x in members},
                               degree=action.degree)
    if not perms.is_regular():
        raise ValueError("translation image is not regular on the cosets")
    if not perms.is_normalized_by(action.generator_perms()):
        raise ValueError("translation image is not normalized")
    return HGStructure(action, perms)


def enumerate_via_transversal(action: CosetAction, *,
                              cap: int = CROSS_CHECK_CAP,
                              budget: NodeBudget | None = None) -> list[PermSet]:
    """Independent second engine for small degrees.

    Regularity forces one element per image of point 0, so backtrack over
    that transversal directly, closing the partial group after every choice.
    Used to cross-check the orbit engine; returns the bare permutation sets.
    """
    n = action.degree
    if n > cap:
        raise CapExceeded(f"transversal engine capped at degree {cap}, got {n}")
    if budget is None:
        budget = NodeBudget()
    gen_perms = action.generator_perms()
    gen_pairs = [(p.images, p.inverse().images) for p in gen_perms]
    rng = range(n)
    id_t = tuple(rng)

    by_first: dict[int, list[tuple[int, ...]]] = {j: [] for j in range(1, n)}
    for d in _divisors(n):
        for t in _semiregular_tuples(n, d):
            by_first[t[0]].append(t)

    def close(seed):
        els = set(seed)
        changed = True
        ops = 0
        while changed:
            changed = False
            snapshot = list(els)
            for a in snapshot:
                for b in snapshot:
                    ops += 1
                    c = tuple(a[b[i]] for i in rng)
                    if c not in els:
                        if _uniform_cycle_length(c) is None or len(els) >= n:
                            budget.spend(ops)
                            return None
                        els.add(c)
                        changed = True
                for g, gi in gen_pairs:
                    ops += 1
                    c = tuple(g[a[gi[i]]] for i in rng)
                    if c not in els:
                        if _uniform_cycle_length(c) is None or len(els) >= n:
                            budget.spend(ops)
                            return None
                        els.add(c)
                        changed = True
        budget.spend(ops)
        return frozenset(els)

    results: set[frozenset] = set()
    visited: set[frozenset] = set()

    def dfs(p):
        if len(p) == n:
            results.add(p)
            return
        covered = {t[0] for t in p}
        j = min(x for x in range(n) if x not in covered)
        for cand in by_first[j]:
            q = close(p | {cand})
            if q is not None and q not in visited:
                visited.add(q)
                dfs(q)

    dfs(frozenset({id_t}))
    out = []
    for fs in sorted(results, key=sorted):
        perms = PermSet(n, tuple(sorted(Perm(t) for t in fs)))
        if not (perms.is_regular() and perms.is_normalized_by(gen_perms)):
            raise RuntimeError("transversal search produced an invalid subgroup")
        out.append(perms)
    return out
