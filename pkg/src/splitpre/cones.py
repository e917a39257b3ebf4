"""Representing preorders by monotone functions into a finite chain.

For a relation R on W and a chain p, the central object is the set of all
functions f: W -> p with f(x) <= f(y) whenever x R y.  The characteristic
function of the cone over x (1 on everything x reaches, 0 elsewhere) always
lands in that set exactly when R is transitive, and the whole set recovers a
preorder completely; the criterion functions below expose those facts so the
test suite can check them against the direct definitions.

Functions are encoded as base-p numerals with index 0 least significant.
The same encoding is shared with `representation`, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BoundExceededError
from .relations import FiniteRelation

# Refuse sweeps over more than this many functions rather than truncating.
DEFAULT_CAP = 4096


@dataclass(frozen=True)
class Chain:
    """The linear order 0 < 1 < ... < size-1, with least element 0."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"a chain needs at least the two values 0 and 1, got size {self.size}")


@dataclass(frozen=True)
class FuncTable:
    """A function from {0, ..., len(values)-1} into a chain, given by its value tuple."""

    values: tuple[int, ...]

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def encode_func(f: FuncTable, p: int) -> int:
    """Base-p code of a function table, index 0 least significant."""
    code = 0
    for i in reversed(range(len(f))):
        code = code * p + f[i]
    return code


def decode_func(code: int, domain_size: int, p: int) -> FuncTable:
    values = []
    for _ in range(domain_size):
        values.append(code % p)
        code //= p
    return FuncTable(tuple(values))


def cone_char(r: FiniteRelation, x: int, chain: Chain) -> FuncTable:
    """Characteristic function of the cone over x: 1 on {y : x R y}, else 0."""
    if not 0 <= x < r.size:
        raise ValueError(f"node {x} out of range for universe of size {r.size}")
    row = int(r.rows[x])
    return FuncTable(tuple((row >> y) & 1 for y in range(r.size)))


def is_monotone(r: FiniteRelation, f: FuncTable) -> bool:
    """Does x R y always force f(x) <= f(y)?"""
    if len(f) != r.size:
        raise ValueError("function table does not match the universe")
    for i, j in r.pairs:
        if f[i] > f[j]:
            return False
    return True


def _check_cap(n_funcs: int, cap: int) -> None:
    if n_funcs > cap:
        raise BoundExceededError(
            f"sweep over {n_funcs} functions exceeds the cap {cap}")


def monotone_set(r: FiniteRelation, chain: Chain, cap: int = DEFAULT_CAP) -> frozenset[FuncTable]:
    """All functions into the chain that are monotone for r, by exhaustive filter."""
    p = chain.size
    n_funcs = p ** r.size
    _check_cap(n_funcs, cap)
    mask = kernels.monotone_mask(r.rows, p)
    return frozenset(decode_func(code, r.size, p) for code in np.nonzero(mask)[0])


def reflexivity_criterion(r: FiniteRelation, chain: Chain) -> bool:
    """Every cone characteristic function sends its apex to 1.

    Holds exactly when r is reflexive.
    """
    return all(cone_char(r, x, chain)[x] == 1 for x in range(r.size))


def transitivity_criterion(r: FiniteRelation, chain: Chain) -> bool:
    """Every cone characteristic function is monotone for r.

    Holds exactly when r is transitive.
    """
    return all(is_monotone(r, cone_char(r, x, chain)) for x in range(r.size))


def recovery_criterion(r: FiniteRelation, chain: Chain, cap: int = DEFAULT_CAP) -> bool:
    """x R y holds exactly when every monotone function orders x below y.

    For a chain this characterizes the preorders among all relations.
    """
    p = chain.size
    n_funcs = p ** r.size
    _check_cap(n_funcs, cap)
    mask = kernels.monotone_mask(r.rows, p)
    codes = np.nonzero(mask)[0]
    if r.size == 0:
        return True
    digits = (codes[:, None] // (p ** np.arange(r.size, dtype=np.int64))) % p
    for x in range(r.size):
        for y in range(r.size):
            dominated = bool(np.all(digits[:, x] <= digits[:, y]))
            if ((x, y) in r) != dominated:
                return False
    return True
