"""The representation of split preorders in the category of binary relations.

A chain p sends the ordinal m to the function space of all maps m -> p,
identified with the codes 0 .. p^m - 1.  An arrow r: m -> n goes to the
relation relating (f1, f2) exactly when the function gluing f1 on the source
zone with f2 on the target zone is monotone for r.  This preserves
identities and composition and is injective on arrows, which is also what
makes the split-preorder composition a genuine category; `verify_functoriality`
and `verify_faithfulness` check those facts mechanically on given instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .arrows import SplitPreorder, compose, enumerate_split_preorders, untarget, unsource
from .cones import DEFAULT_CAP, Chain, FuncTable, is_monotone
from .errors import BoundExceededError
from .relations import RelArrow, transitive_closure


def pair_glue(f1: FuncTable, f2: FuncTable) -> FuncTable:
    """Glue a source-zone function and a target-zone function into one table.

    The tagged universe is flattened source-first, so the glued table is just
    the concatenation; its code is code(f1) + code(f2) * p^len(f1).
    """
    return FuncTable(f1.values + f2.values)


def _check_caps(chain: Chain, r: SplitPreorder, cap: int) -> None:
    if chain.size ** r.src > cap or chain.size ** r.tgt > cap:
        raise BoundExceededError(
            f"function space for arrow {r.src} -> {r.tgt} over chain {chain.size} "
            f"exceeds the cap {cap}")


def repr_arrow(chain: Chain, r: SplitPreorder, cap: int = DEFAULT_CAP) -> RelArrow:
    """The relation between code spaces p^src and p^tgt induced by r.

    Codes (c1, c2) are related iff the glued function is monotone for r.
    """
    _check_caps(chain, r, cap)
    p = chain.size
    mask = kernels.monotone_mask(r.rows, p)
    # Flat code = c1 + c2 * p^src, so rows of the reshape run over c2.
    matrix = mask.reshape(p ** r.tgt, p ** r.src).T
    return RelArrow.from_matrix(matrix)


def in_repr(chain: Chain, r: SplitPreorder, f1: FuncTable, f2: FuncTable) -> bool:
    """Pointwise membership test, without building the whole code relation."""
    if len(f1) != r.src or len(f2) != r.tgt:
        raise ValueError("function tables do not match the arrow's endpoints")
    return is_monotone(r.relation(), pair_glue(f1, f2))


def glue_witness(r: SplitPreorder, p: SplitPreorder, f1: FuncTable, f2: FuncTable,
                 chain: Chain) -> FuncTable:
    """The middle-zone function witnessing one composite pair (f1, f2).

    Given r: m -> n, p: n -> k and a pair (f1, f2) related by the composite's
    representation, returns f3 on the middle ordinal with (f1, f3) related by
    r's representation and (f3, f2) by p's.  Each middle node y takes the
    maximum of f1 over the source nodes reaching y in the unrestricted closed
    working relation and of f2 over the target nodes reaching y, or 0 when
    nothing reaches y.
    """
    composite = compose(p, r)
    if not in_repr(chain, composite, f1, f2):
        raise ValueError(
            "witness construction needs (f1, f2) to be related by the composite's "
            "representation")
    m, n, k = r.src, r.tgt, p.tgt
    working = untarget(r, k).union(unsource(p, m))
    closed = transitive_closure(working)
    values = []
    for y in range(n):
        middle = np.uint64(1) << np.uint64(m + y)
        candidates = [f1[x] for x in range(m) if closed.rows[x] & middle]
        candidates += [f2[z] for z in range(k) if closed.rows[m + n + z] & middle]
        values.append(max(candidates) if candidates else 0)
    return FuncTable(tuple(values))


@dataclass(frozen=True)
class LawReport:
    """Outcome of a mechanical law check, with the first counterexample if any."""

    ok: bool
    checked: int
    counterexample: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_functoriality(chain: Chain, p: SplitPreorder, r: SplitPreorder,
                         cap: int = DEFAULT_CAP) -> LawReport:
    """Compare the composite's representation with the composed representations.

    Left side: represent compose(p, r).  Right side: represent r and p
    separately and compose the code relations.  Reports the first differing
    code pair on failure.
    """
    left = repr_arrow(chain, compose(p, r), cap=cap)
    right_first = repr_arrow(chain, r, cap=cap)
    right_second = repr_arrow(chain, p, cap=cap)
    product = right_first.matrix.astype(np.uint8) @ right_second.matrix.astype(np.uint8)
    right = RelArrow.from_matrix(product > 0)
    if left == right:
        return LawReport(ok=True, checked=left.dom * left.cod)
    diff = np.argwhere(left.matrix != right.matrix)
    c1, c2 = (int(v) for v in diff[0])
    return LawReport(
        ok=False,
        checked=left.dom * left.cod,
        counterexample=(
            f"code pair ({c1}, {c2}) is {'present' if left.matrix[c1, c2] else 'absent'} "
            f"in the composite's representation but not in the composed one, "
            f"for r = {r!r} and p = {p!r}"),
    )


def verify_faithfulness(m: int, n: int, chain: Chain, cap: int = DEFAULT_CAP) -> LawReport:
    """Check injectivity of the representation over all arrows m -> n."""
    seen: dict[RelArrow, SplitPreorder] = {}
    count = 0
    for arrow in enumerate_split_preorders(m, n):
        image = repr_arrow(chain, arrow, cap=cap)
        if image in seen:
            return LawReport(
                ok=False,
                checked=count + 1,
                counterexample=(
                    f"arrows {seen[image]!r} and {arrow!r} share the representation "
                    f"{sorted(image.pairs)}"),
            )
        seen[image] = arrow
        count += 1
    return LawReport(ok=True, checked=count)
