"""The truncated Weil algebra WO_q and its Vey basis."""

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from app.core.exact_scalar import TWO_PI
from app.core.exterior import MultiForm
from app.core.utils.error import ParameterOutOfRangeError
from app.core.utils.linalg import rank
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("weil_wo")


@dataclass(frozen=True, order=True, slots=True)
class WOMonomial:
    """h_I c_J with I a set of odd indices and J a multiset of Chern indices."""

    h: tuple[int, ...] = ()
    c: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return sum(2 * i - 1 for i in self.h) + sum(2 * k for k in self.c)

    @property
    def weight(self) -> int:
        return sum(self.c)

    @property
    def is_pontryagin(self) -> bool:
        return not self.h and all(k % 2 == 0 for k in self.c)

    def label(self) -> str:
        if not self.h and not self.c:
            return "1"
        parts = [f"h{i}" for i in self.h]
        for k, e in sorted(Counter(self.c).items()):
            parts.append(f"c{k}" if e == 1 else f"c{k}^{e}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.label()


WOElement = dict[WOMonomial, Fraction]


def _partitions(limit: int, largest: int) -> list[tuple[int, ...]]:
    """Nondecreasing tuples with parts ≤ largest and sum ≤ limit."""

    result: list[tuple[int, ...]] = [()]
    for total in range(1, limit + 1):
        result.extend(_exact(total, largest))
    return result


def _exact(total: int, largest: int) -> list[tuple[int, ...]]:
    if total == 0:
        return [()]
    out = []
    for first in range(1, min(total, largest) + 1):
        for rest in _exact(total - first, first):
            out.append(tuple(sorted((first,) + rest)))
    return sorted(set(out))


def wo_basis(q: int) -> list[WOMonomial]:
    """All monomials h_I c_J of WO_q, i.e. odd I ⊂ {1..q} and |J| ≤ q."""

    if q < 1:
        raise ParameterOutOfRangeError(f"q must be positive, got {q}")
    odd = [i for i in range(1, q + 1, 2)]
    chern = _partitions(q, q)
    monomials = [
        WOMonomial(tuple(h), c)
        for size in range(len(odd) + 1)
        for h in itertools.combinations(odd, size)
        for c in chern
    ]
    return sorted(monomials, key=lambda m: (m.degree, m))


def wo_differential(element: WOElement, q: int) -> WOElement:
    """d h_i = c_i, d c_j = 0, extended as an antiderivation and truncated above weight q."""

    result: WOElement = {}
    for monomial, coefficient in element.items():
        for r, i in enumerate(monomial.h):
            c = tuple(sorted(monomial.c + (i,)))
            if sum(c) > q:
                continue
            image = WOMonomial(monomial.h[:r] + monomial.h[r + 1 :], c)
            value = result.get(image, Fraction(0)) + (-coefficient if r % 2 else coefficient)
            if value:
                result[image] = value
            else:
                result.pop(image, None)
    return result


def vey_basis(q: int) -> list[WOMonomial]:
    """Monomial basis of H(WO_q), without the unit.

    Pontryagin classes c_J with only even indices and 0 < |J| ≤ q, and the exotic
    classes h_I c_J with i_1 ≤ every odd j in J, i_1 + |J| ≥ q + 1 and |J| ≤ q.
    """

    basis = []
    for monomial in wo_basis(q):
        if not monomial.h:
            if monomial.c and monomial.is_pontryagin:
                basis.append(monomial)
            continue
        first = monomial.h[0]
        if any(k % 2 == 1 and k < first for k in monomial.c):
            continue
        if first + monomial.weight >= q + 1:
            basis.append(monomial)
    logger.debug("Vey basis", extra={"q": q, "size": len(basis)})
    return basis


def vey_dimensions(q: int) -> dict[int, int]:
    """Betti numbers predicted by the Vey basis, counting the unit in degree 0."""

    counts = Counter(m.degree for m in vey_basis(q))
    counts[0] += 1
    return dict(sorted(counts.items()))


def wo_cohomology(q: int) -> dict[int, int]:
    """Betti numbers of WO_q by exact rank computation, nonzero degrees only."""

    by_degree: dict[int, list[WOMonomial]] = {}
    for monomial in wo_basis(q):
        by_degree.setdefault(monomial.degree, []).append(monomial)
    top = max(by_degree)
    ranks: dict[int, int] = {}
    for degree in range(top + 1):
        source = by_degree.get(degree, [])
        target = by_degree.get(degree + 1, [])
        if not source or not target:
            ranks[degree] = 0
            continue
        column = {m: j for j, m in enumerate(source)}
        rows = {m: i for i, m in enumerate(target)}
        matrix = [[Fraction(0)] * len(source) for _ in target]
        for m in source:
            for image, c in wo_differential({m: Fraction(1)}, q).items():
                matrix[rows[image]][column[m]] = c
        ranks[degree] = rank(matrix, len(source))
    betti = {}
    for degree, monomials in sorted(by_degree.items()):
        value = len(monomials) - ranks[degree] - ranks.get(degree - 1, 0)
        if value:
            betti[degree] = value
    logger.info("Computed H(WO_q)", extra={"q": q, "degrees": len(betti)})
    return betti


def gv_normalize(form: MultiForm, q: int) -> MultiForm:
    """GV = (2π)^{q+1} Δ(h_1 c_1^q); clears the π of the Chern-Weil map."""

    if q < 1:
        raise ParameterOutOfRangeError(f"codimension must be positive, got {q}")
    return form.scale(TWO_PI ** (q + 1))
