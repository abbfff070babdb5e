"""The graded algebras A = Z2{v-, v+} and B = Z2{w-, w+}.

Every map is stored as an explicit value table on basis tensors and
extended linearly mod 2.  Composites such as ``delta1 * mu1`` are computed,
never used as definitions, so identities between maps can be checked
exhaustively on basis inputs.

``f * g`` is composition (f after g) and ``f @ g`` is the tensor product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

SPACE_BASIS = {"A": ("v-", "v+"), "B": ("w-", "w+")}
DEGREE = {"v-": -1, "v+": 1, "w-": -2, "w+": 2}
_SPACE_OF = {"v-": "A", "v+": "A", "w-": "B", "w+": "B"}

Tensor = tuple[str, ...]
Space = tuple[str, ...]


class DomainMismatch(ValueError):
    pass


def basis_tensors(space: Space) -> list[Tensor]:
    return [tuple(t) for t in itertools.product(*(SPACE_BASIS[s] for s in space))]


@dataclass(frozen=True)
class Element:
    """A mod-2 sum of basis tensors of ``space``."""

    space: Space
    terms: frozenset

    @classmethod
    def of(cls, *symbols: str) -> "Element":
        return cls(tuple(_SPACE_OF[s] for s in symbols), frozenset([tuple(symbols)]))

    @classmethod
    def zero(cls, space: Space) -> "Element":
        return cls(tuple(space), frozenset())

    @classmethod
    def sum(cls, space: Space, tensors: Iterable[Tensor]) -> "Element":
        acc: set = set()
        for t in tensors:
            acc ^= {t}
        return cls(tuple(space), frozenset(acc))

    def __add__(self, other: "Element") -> "Element":
        if self.space != other.space:
            raise DomainMismatch(f"cannot add {self.space} and {other.space}")
        return Element(self.space, self.terms ^ other.terms)

    def __matmul__(self, other: "Element") -> "Element":
        return Element(self.space + other.space,
                       frozenset(a + b for a in self.terms for b in other.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int | None:
        """Degree if homogeneous and nonzero, else None."""
        degs = {sum(DEGREE[s] for s in t) for t in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join("⊗".join(t) if t else "1" for t in sorted(self.terms))


@dataclass(frozen=True, eq=False)
class LinearMap:
    name: str
    source: Space
    target: Space
    table: Mapping[Tensor, frozenset]

    def __call__(self, x: Element) -> Element:
        if x.space != self.source:
            raise DomainMismatch(f"{self.name} expects {self.source}, got {x.space}")
        acc: set = set()
        for t in x.terms:
            acc ^= self.table[t]
        return Element(self.target, frozenset(acc))

    def __mul__(self, other: "LinearMap") -> "LinearMap":
        if other.target != self.source:
            raise DomainMismatch(f"cannot compose {self.name} after {other.name}: "
                                 f"{other.target} != {self.source}")
        table = {t: self(Element(other.target, other.table[t])).terms for t in basis_tensors(other.source)}
        return LinearMap(f"{self.name}∘{other.name}", other.source, self.target, table)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        table = {}
        for t in basis_tensors(self.source + other.source):
            left, right = t[:len(self.source)], t[len(self.source):]
            table[t] = frozenset(a + b for a in self.table[left] for b in other.table[right])
        return LinearMap(f"({self.name}⊗{other.name})", self.source + other.source,
                         self.target + other.target, table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and all(
            self.table[t] == other.table[t] for t in basis_tensors(self.source))

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not any(self.table.values())

    @property
    def degree(self) -> int | None:
        """Common degree shift of all nonzero basis images, or None if inhomogeneous."""
        shifts = set()
        for t, image in self.table.items():
            d_in = sum(DEGREE[s] for s in t)
            for u in image:
                shifts.add(sum(DEGREE[s] for s in u) - d_in)
        return shifts.pop() if len(shifts) == 1 else None

    def matrix(self) -> list[list[int]]:
        """0/1 matrix, rows indexed by target basis, columns by source basis."""
        rows = basis_tensors(self.target)
        return [[int(r in self.table[c]) for c in basis_tensors(self.source)] for r in rows]


def _linear(name: str, source: str, target: str, values: Mapping[Tensor, Iterable[Tensor]]) -> LinearMap:
    src, tgt = tuple(source), tuple(target)
    table = {}
    for t in basis_tensors(src):
        image = set()
        for u in values.get(t, ()):
            image ^= {u}
        table[t] = frozenset(image)
    return LinearMap(name, src, tgt, table)


P, M, WP, WM = "v+", "v-", "w+", "w-"

identity_A = _linear("A", "A", "A", {(P,): [(P,)], (M,): [(M,)]})
identity_B = _linear("B", "B", "B", {(WP,): [(WP,)], (WM,): [(WM,)]})
phi1 = _linear("φ1", "AA", "AA", {(a, b): [(b, a)] for a in (P, M) for b in (P, M)})
phi2 = _linear("φ2", "BB", "BB", {(a, b): [(b, a)] for a in (WP, WM) for b in (WP, WM)})

mu1 = _linear("μ1", "AA", "A", {(P, P): [(P,)], (P, M): [(M,)], (M, P): [(M,)]})
delta1 = _linear("δ1", "A", "AA", {(P,): [(P, M), (M, P)], (M,): [(M, M)]})
eta1 = _linear("η1", "", "A", {(): [(P,)]})
eps1 = _linear("ε1", "A", "", {(M,): [()]})
beta1 = _linear("β1", "AA", "", {(P, M): [()], (M, P): [()]})
iota = _linear("ι", "B", "AA", {(WP,): [(P, P)], (WM,): [(M, M)]})
pi = _linear("π", "AA", "B", {(P, P): [(WP,)], (M, M): [(WM,)]})
mu2 = _linear("μ2", "BB", "B", {(WP, WP): [(WP,)], (WP, WM): [(WM,)], (WM, WP): [(WM,)]})
delta2 = _linear("δ2", "B", "BB", {(WP,): [(WP, WM), (WM, WP)], (WM,): [(WM, WM)]})
eta2 = _linear("η2", "", "B", {(): [(WP,)]})
eps2 = _linear("ε2", "B", "", {(WM,): [()]})
eta1bar = _linear("η̄1", "", "A", {(): [(M,)]})
eta2bar = _linear("η̄2", "", "B", {(): [(WM,)]})
eps1bar = _linear("ε̄1", "A", "", {(P,): [()]})
eps2bar = _linear("ε̄2", "B", "", {(WP,): [()]})
tau = _linear("τ", "A", "A", {(M,): [(P,)]})
sigma = _linear("σ", "B", "A", {(WM,): [(M,)]})

# Transition maps governing the differential.  T1..T5 occur at crossings,
# T6 and T7 at turn-backs.
T1 = _linear("T1", "AA", "AA", {(P, P): [(P, M), (M, P)], (P, M): [(M, M)], (M, P): [(M, M)]})
T2 = _linear("T2", "A", "AB", {(P,): [(P, WM)], (M,): [(M, WM)]})
T3 = _linear("T3", "AB", "A", {(P, WP): [(P,)], (M, WP): [(M,)]})
T4 = _linear("T4", "B", "BB", {(WP,): [(WP, WM), (WM, WP)], (WM,): [(WM, WM)]})
T5 = _linear("T5", "BB", "B", {(WP, WP): [(WP,)], (WP, WM): [(WM,)], (WM, WP): [(WM,)]})
T6 = _linear("T6", "A", "B", {(M,): [(WM,)]})
T7 = _linear("T7", "AA", "A", {(P, P): [(P,)], (P, M): [(M,)], (M, P): [(M,)]})

STRUCTURE_MAPS: dict[str, LinearMap] = {
    "mu1": mu1, "delta1": delta1, "eta1": eta1, "eps1": eps1, "beta1": beta1,
    "iota": iota, "pi": pi, "mu2": mu2, "delta2": delta2, "eta2": eta2, "eps2": eps2,
    "eta1bar": eta1bar, "eta2bar": eta2bar, "eps1bar": eps1bar, "eps2bar": eps2bar,
    "tau": tau, "sigma": sigma, "phi1": phi1, "phi2": phi2,
}
T_MAPS: dict[str, LinearMap] = {"T1": T1, "T2": T2, "T3": T3, "T4": T4, "T5": T5, "T6": T6, "T7": T7}


def structure_map(name: str, x: Element) -> Element:
    """Apply a named structure map.  ``flip`` swaps the two factors of any pair."""
    if name == "flip":
        if len(x.space) != 2:
            raise DomainMismatch(f"flip expects two tensor factors, got {x.space}")
        return Element(x.space[::-1], frozenset((b, a) for a, b in x.terms))
    try:
        f = STRUCTURE_MAPS[name]
    except KeyError:
        raise ValueError(f"unknown structure map {name!r}") from None
    return f(x)


def t_map(name: str, x: Element) -> Element:
    try:
        f = T_MAPS[name]
    except KeyError:
        raise ValueError(f"unknown transition map {name!r}") from None
    return f(x)


def sign_table(name: str) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """A T-map as a table on sign bits (1 for '+', 0 for '-').

    Input and output factors are ordered as in the map's signature: open (A)
    factors before closed (B) factors.
    """
    f = T_MAPS[name]
    return {
        tuple(int(s.endswith("+")) for s in t): sorted(tuple(int(s.endswith("+")) for s in u)
                                                       for u in f.table[t])
        for t in basis_tensors(f.source)
    }
