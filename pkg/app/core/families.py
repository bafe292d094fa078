"""Constructors for the five parabolic families.

Each builder returns the algebra in an adapted basis (Cartan, then u, then v,
then the remaining Levi root vectors) together with the split data used to
integrate along the fiber of G/P → G/K_G.
"""

from collections.abc import Sequence
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache

from app.core.exact_scalar import ExactScalar
from app.core.lie_core import (
    Backend,
    Family,
    FamilySpec,
    LieAlgebraData,
    Subspace,
    entry_covector,
    structure_from_matrices,
    validate_lie,
)
from app.core.root_core import RootSystemData, f4_root_data
from app.core.split_basis import FiberBlock, SplitBasisData
from app.core.utils.error import FamilyConstructionError, ValidationFailedError
from app.core.utils.matrices import (
    CoordinateSolver,
    SparseMatrix,
    Vector,
    combine,
    commutator,
    multiply,
    transpose,
    unit,
)
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("families")


def _name(prefix: str, *indices: int) -> str:
    if all(i < 10 for i in indices):
        return prefix + "".join(str(i) for i in indices)
    return prefix + ",".join(str(i) for i in indices)


def _plus(a: Vector, b: Vector, sign: int = 1) -> Vector:
    result = dict(a)
    for k, c in b.items():
        value = result.get(k, Fraction(0)) + sign * c
        if value:
            result[k] = value
        else:
            result.pop(k, None)
    return result


def _kernel_in(name: str, indices: Sequence[int], covector: Vector) -> Subspace:
    """Subspace of span{e_i : i in indices} killed by a covector."""

    loaded = [i for i in indices if covector.get(i)]
    vectors: list[Vector] = [{i: Fraction(1)} for i in indices if not covector.get(i)]
    if loaded:
        pivot, rest = loaded[0], loaded[1:]
        for i in rest:
            vectors.append({i: Fraction(1), pivot: -covector[i] / covector[pivot]})
    return Subspace(name, tuple(vectors))


class _MatrixBuilder:
    """Accumulates labelled basis matrices and named index groups."""

    def __init__(self) -> None:
        self.labels: list[str] = []
        self.matrices: list[SparseMatrix] = []
        self.groups: dict[str, list[int]] = {}

    def add(self, group: str, label: str, matrix: SparseMatrix) -> int:
        self.labels.append(label)
        self.matrices.append(matrix)
        self.groups.setdefault(group, []).append(len(self.labels) - 1)
        return len(self.labels) - 1

    def build(
        self,
        spec: FamilySpec,
        killing_scale: int,
        root_pairs: list[tuple[int, int]],
        extra: dict[str, Subspace] | None = None,
    ) -> LieAlgebraData:
        solver = CoordinateSolver(self.matrices)
        structure = structure_from_matrices(self.matrices, solver.coordinates)
        cartan = self.groups["h"]
        r = cartan + self.groups.get("levi", [])
        subspaces = {
            "h": Subspace.coordinate("h", cartan),
            "u": Subspace.coordinate("u", self.groups["u"]),
            "v": Subspace.coordinate("v", self.groups["v"]),
            "r": Subspace.coordinate("r", r),
            "p": Subspace.coordinate("p", r + self.groups["u"]),
        }
        subspaces.update(extra or {})
        data = LieAlgebraData(
            family=spec,
            labels=tuple(self.labels),
            structure=structure,
            subspaces=subspaces,
            backend=Backend.MATRIX,
            matrices=tuple(self.matrices),
            killing_scale=Fraction(killing_scale),
            root_pairs=tuple(root_pairs),
            solver=solver,
        )
        logger.info("Built Lie algebra", extra={"family": str(spec), "dim": data.dim})
        return data


def _covector_sum(data: LieAlgebraData, pairs: Sequence[tuple[int, int, int]]) -> Vector:
    """Σ sign · E^∨_ij over (i, j, sign) triples."""

    result: Vector = {}
    for i, j, sign in pairs:
        result = _plus(result, entry_covector(data, i, j), sign)
    return result


def _dual(index: int) -> Vector:
    return {index: Fraction(1)}


def _pair_split(data: LieAlgebraData) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    plus = tuple(_plus(_dual(u), _dual(v)) for u, v in data.root_pairs)
    minus = tuple(_plus(_dual(v), _dual(u), -1) for u, v in data.root_pairs)
    return plus, minus


def _hermitian_generators(data: LieAlgebraData, first: SparseMatrix) -> tuple[Vector, ...]:
    generators = [data.coordinates_of(first)]
    for u, v in data.root_pairs:
        generators.append({u: Fraction(1), v: Fraction(1)})
    return tuple(generators)


def build_sl(q: int) -> tuple[LieAlgebraData, SplitBasisData]:
    """sl(q+1, R) with the parabolic stabilising a line."""

    spec = FamilySpec(Family.SL_PROJ, q)
    m = q + 1
    builder = _MatrixBuilder()
    for i in range(1, m):
        builder.add("h", _name("H_", i), combine((1, unit(i, i)), (-1, unit(m, m))))
    u = [builder.add("u", _name("E_", 1, k), unit(1, k)) for k in range(2, m + 1)]
    v = [builder.add("v", _name("E_", k, 1), unit(k, 1)) for k in range(2, m + 1)]
    for i in range(2, m + 1):
        for j in range(2, m + 1):
            if i != j:
                builder.add("levi", _name("E_", i, j), unit(i, j))
    index = {label: k for k, label in enumerate(builder.labels)}

    def skew(i: int, j: int) -> Vector:
        return {index[_name("E_", i, j)]: Fraction(1), index[_name("E_", j, i)]: Fraction(-1)}

    k_p = Subspace("k_P", tuple(skew(i, j) for i in range(2, m + 1) for j in range(i + 1, m + 1)))
    k_g = Subspace("k_G", tuple(skew(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)))
    data = builder.build(spec, 2 * m, list(zip(u, v)), {"k_P": k_p, "k_G": k_g})
    plus, _ = _pair_split(data)
    # fiber covectors E^∨_1k - E^∨_k1
    minus = tuple(_plus(_dual(i), _dual(j), -1) for i, j in data.root_pairs)
    split = SplitBasisData(
        distinguished=entry_covector(data, 1, 1),
        plus=plus,
        minus=minus,
    )
    return data, split


def build_so(n: int) -> tuple[LieAlgebraData, SplitBasisData]:
    """so(n+1, 1) preserving J = E_{1,N} + E_{N,1} - Σ E_kk, the conformal family."""

    spec = FamilySpec(Family.SO_CONF, n)
    size = n + 2
    middle = range(2, n + 2)
    builder = _MatrixBuilder()
    builder.add("h", "a", combine((1, unit(1, 1)), (-1, unit(size, size))))
    u = [
        builder.add("u", f"tv_{j}", combine((1, unit(1, j)), (1, unit(j, size))))
        for j in middle
    ]
    v = [
        builder.add("v", f"v_{j}", combine((1, unit(j, 1)), (1, unit(size, j))))
        for j in middle
    ]
    for k in middle:
        for h in middle:
            if k < h:
                builder.add("levi", _name("A_", k, h), combine((1, unit(k, h)), (-1, unit(h, k))))
    fiber = tuple(_plus(_dual(vj), _dual(uj), -1) for uj, vj in zip(u, v))
    levi = builder.groups.get("levi", [])
    k_p = Subspace.coordinate("k_P", levi)
    k_g = Subspace("k_G", tuple(_dual(i) for i in levi) + fiber)
    data = builder.build(
        spec,
        n,
        list(zip(u, v)),
        {"k_P": k_p, "k_G": k_g, "m_fiber": Subspace("m_fiber", fiber)},
    )
    plus, minus = _pair_split(data)
    split = SplitBasisData(
        distinguished=_dual(data.index("a")),
        plus=plus,
        minus=minus,
        base_generators=_hermitian_generators(data, combine((1, unit(1, 1)), (-1, unit(size, size)))),
        metric_scale=Fraction(n),
        fiber_norm=ExactScalar.of(2) ** Fraction(n, 2),
    )
    return data, split


def build_su(n: int) -> tuple[LieAlgebraData, SplitBasisData]:
    """sl(n+2, C) as the complexification of su(n+1, 1), the CR family."""

    spec = FamilySpec(Family.SU_CR, n)
    size = n + 2
    middle = range(2, n + 2)
    builder = _MatrixBuilder()
    for i in range(1, size):
        builder.add("h", _name("H_", i), combine((1, unit(i, i)), (-1, unit(size, size))))
    upper = [(1, k) for k in middle] + [(1, size)] + [(k, size) for k in middle]
    u = [builder.add("u", _name("E_", i, j), unit(i, j)) for i, j in upper]
    v = [builder.add("v", _name("E_", j, i), unit(j, i)) for i, j in upper]
    for i in middle:
        for j in middle:
            if i != j:
                builder.add("levi", _name("E_", i, j), unit(i, j))
    data = builder.build(spec, 2 * size, list(zip(u, v)))
    distinguished = _covector_sum(data, [(1, 1, 1), (size, size, -1)])
    data = _with_kernel(data, distinguished)
    plus, minus = _pair_split(data)
    split = SplitBasisData(
        distinguished=distinguished,
        plus=plus,
        minus=minus,
        base_generators=_hermitian_generators(data, combine((1, unit(1, 1)), (-1, unit(size, size)))),
        metric_scale=Fraction(2 * size),
        fiber_norm=ExactScalar.of(2) ** (3 * n + 1),
    )
    return data, split


def _with_kernel(data: LieAlgebraData, distinguished: Vector) -> LieAlgebraData:
    """Attach k_P = r ∩ ker(distinguished), the compact part of the Levi factor."""

    subspaces = dict(data.subspaces)
    subspaces["k_P"] = _kernel_in("k_P", data.subspace("r").indices, distinguished)
    return replace(data, subspaces=subspaces)


def _sp_form(m: int) -> SparseMatrix:
    """J' = [[0, I'], [-I', 0]] with I' = -E_{1m} - E_{m1} + Σ_{middle} E_kk."""

    inner: SparseMatrix = {(1, m): Fraction(-1), (m, 1): Fraction(-1)}
    for k in range(2, m):
        inner[(k, k)] = Fraction(1)
    form: SparseMatrix = {}
    for (i, j), value in inner.items():
        form[(i, m + j)] = value
        form[(m + i, j)] = -value
    return form


def build_sp(n: int) -> tuple[LieAlgebraData, SplitBasisData]:
    """sp(n+2, C) as the complexification of sp(n+1, 1), the quaternionic contact family."""

    spec = FamilySpec(Family.SP, n)
    m = n + 2
    two_m = 2 * m
    middle = range(2, m)
    form = _sp_form(m)
    builder = _MatrixBuilder()

    def e(i: int, j: int, c: int = 1) -> tuple[int, SparseMatrix]:
        return c, unit(i, j)

    builder.add("h", "H_1", combine(e(1, 1), e(two_m, two_m, -1)))
    for k in middle:
        builder.add("h", _name("H_", k), combine(e(k, k), e(m + k, m + k, -1)))
    builder.add("h", _name("H_", m), combine(e(m, m), e(m + 1, m + 1, -1)))

    lower: list[tuple[str, SparseMatrix]] = []
    lower += [(f"u1_{k}", combine(e(k, 1), e(two_m, m + k))) for k in middle]
    lower += [(f"u2_{k}", combine(e(m, k), e(m + k, m + 1))) for k in middle]
    lower += [(f"x1_{k}", combine(e(k, m + 1, -1), e(m, m + k))) for k in middle]
    lower += [(f"x2_{k}", combine(e(m + k, 1, -1), e(two_m, k))) for k in middle]
    lower += [("y1", unit(m, m + 1)), ("y2", unit(two_m, 1))]
    lower += [("v", combine(e(m, 1), e(two_m, m + 1, -1)))]
    for label, matrix in lower:
        if combine((1, multiply(transpose(matrix), form)), (1, multiply(form, matrix))):
            raise FamilyConstructionError(f"{label} is not in sp")
    u = [builder.add("u", f"t{label}", transpose(matrix)) for label, matrix in lower]
    v = [builder.add("v", label, matrix) for label, matrix in lower]

    cartan = [builder.matrices[i] for i in builder.groups["h"]]

    def weight(matrix: SparseMatrix) -> tuple[Fraction, ...]:
        values = []
        for h in cartan:
            image = commutator(h, matrix)
            key = next(iter(matrix))
            ratio = image.get(key, Fraction(0)) / matrix[key]
            if combine((1, image), (-ratio, matrix)):
                raise FamilyConstructionError("candidate is not a weight vector")
            values.append(ratio)
        return tuple(values)

    taken = {weight(builder.matrices[i]) for i in u + v}
    # remaining root vectors J'(E_ab + E_ba), one per unused nonzero weight
    for a in range(1, two_m + 1):
        for b in range(a, two_m + 1):
            candidate = multiply(form, combine(e(a, b), e(b, a)))
            if a == b:
                candidate = {key: value / 2 for key, value in candidate.items()}
            w = weight(candidate)
            if not any(w) or w in taken:
                continue
            taken.add(w)
            builder.add("levi", _name("R_", a, b), candidate)
    if len(builder.labels) != m * (2 * m + 1):
        raise FamilyConstructionError(f"sp basis has {len(builder.labels)} elements")

    data = builder.build(spec, 2 * (n + 3), list(zip(u, v)))
    h_first, h_last = data.index("H_1"), data.index(_name("H_", m))
    distinguished = {h_first: Fraction(1), h_last: Fraction(-1)}
    data = _with_kernel(data, distinguished)
    plus, minus = _pair_split(data)
    weights = tuple(Fraction(2) if label == "v" else Fraction(1) for label, _ in lower)
    split = SplitBasisData(
        distinguished=distinguished,
        plus=plus,
        minus=minus,
        base_generators=_hermitian_generators(
            data,
            combine(e(1, 1), e(two_m, two_m, -1), e(m, m, -1), e(m + 1, m + 1)),
        ),
        metric_scale=Fraction(4 * (n + 3)),
        fiber_norm=ExactScalar.of(2) ** Fraction(12 * n + 7, 2),
        reference_weights=weights,
    )
    return data, split


def _root_label(root: tuple[Fraction, ...], sign: int) -> str:
    parts = ",".join(str(sign * x) for x in root)
    return f"E[{parts}]"


def algebra_from_roots(roots: RootSystemData) -> LieAlgebraData:
    """Cartan, then E_α (α∈ψ), then E_-α (α∈ψ), then the Levi root vectors.

    Only [h, E_±α] and [E_α, E_-α] are stored.
    """

    rank = roots.rank
    labels = [f"H_{i}" for i in range(rank)]
    index: dict[tuple[tuple[Fraction, ...], int], int] = {}
    for sign, group in ((1, roots.psi), (-1, roots.psi), (1, roots.levi_roots), (-1, roots.levi_roots)):
        for root in group:
            index[(root, sign)] = len(labels)
            labels.append(_root_label(root, sign))
    structure: dict[tuple[int, int], Vector] = {}
    for (root, sign), k in index.items():
        for i in range(rank):
            if root[i]:
                structure[(i, k)] = {k: sign * root[i]}
        if sign == 1:
            partner = index[(root, -1)]
            coroot = roots.coroots[root]
            structure[(k, partner)] = {i: c for i, c in enumerate(coroot) if c}
    killing: dict[tuple[int, int], Fraction] = {}
    for i in range(rank):
        for j in range(rank):
            if i <= j and roots.cartan_pairing[i][j]:
                killing[(i, j)] = roots.cartan_pairing[i][j]
    for root in roots.positive_roots:
        killing[(index[(root, 1)], index[(root, -1)])] = roots.normalizations[root]
    u = [index[(root, 1)] for root in roots.psi]
    v = [index[(root, -1)] for root in roots.psi]
    levi = [index[(root, s)] for root in roots.levi_roots for s in (1, -1)]
    cartan = list(range(rank))
    subspaces = {
        "h": Subspace.coordinate("h", cartan),
        "u": Subspace.coordinate("u", u),
        "v": Subspace.coordinate("v", v),
        "r": Subspace.coordinate("r", cartan + levi),
        "p": Subspace.coordinate("p", cartan + levi + u),
    }
    data = LieAlgebraData(
        family=roots.family,
        labels=tuple(labels),
        structure=structure,
        subspaces=subspaces,
        backend=Backend.ROOT_DATA,
        stored_killing=killing,
        closed_covectors=frozenset(cartan),
        root_pairs=tuple(zip(u, v)),
    )
    failures = validate_lie(data)
    if failures:
        first = failures[0]
        raise ValidationFailedError(f"{roots.family}: {first.axiom} at {first.witness}: {first.detail}")
    logger.info("Built root-data algebra", extra={"family": str(roots.family), "dim": data.dim})
    return data


def build_f4() -> tuple[LieAlgebraData, SplitBasisData]:
    roots = f4_root_data()
    data = algebra_from_roots(roots)
    distinguished = {3: Fraction(1)}
    data = _with_kernel(data, distinguished)
    plus, minus = _pair_split(data)
    sqrt2 = ExactScalar.of(2).sqrt()
    integral = sum(1 for root in roots.psi if root[3].denominator == 1)
    split = SplitBasisData(
        distinguished=distinguished,
        plus=plus,
        minus=minus,
        base_generators=(_dual(3),) + tuple(_plus(_dual(u), _dual(v)) for u, v in data.root_pairs),
        # |H_3|² = 18 and |E_α + E_-α|² = 2 B(E_α, E_-α) = 2
        stored_base_norms=(ExactScalar.of(18).sqrt(),) + (sqrt2,) * len(roots.psi),
        # so(N) inside f4 carries (N - 2)/9 times its own Killing form
        fiber_blocks=(
            FiberBlock(integral, 8, Fraction(8 - 2, 9)),
            FiberBlock(len(roots.psi) - integral, 9, Fraction(9 - 2, 9)),
        ),
    )
    return data, split


@lru_cache(maxsize=32)
def build_family(spec: FamilySpec) -> tuple[LieAlgebraData, SplitBasisData]:
    match spec.family:
        case Family.SL_PROJ:
            assert spec.n is not None
            return build_sl(spec.n)
        case Family.SO_CONF:
            assert spec.n is not None
            return build_so(spec.n)
        case Family.SU_CR:
            assert spec.n is not None
            return build_su(spec.n)
        case Family.SP:
            assert spec.n is not None
            return build_sp(spec.n)
        case Family.F4:
            return build_f4()
