"""Connection, curvature and Chern-Weil images on the complement v of p."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.exact_scalar import TWO_PI, ExactScalar
from app.core.exterior import MultiForm, ce_d, hat_d, wedge
from app.core.lie_core import Family, FamilySpec, LieAlgebraData
from app.core.root_core import delta_c1_root, delta_h1_root, f4_root_data, root_data_from_algebra
from app.core.split_basis import SplitBasisData
from app.core.utils.error import (
    BackendMismatchError,
    CurvatureConsistencyError,
    InternalConsistencyError,
)
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("chern_weil")

FormMatrix = list[list[MultiForm]]


@dataclass(frozen=True)
class CharacteristicResult:
    family: FamilySpec
    delta_h1: MultiForm
    delta_c1: MultiForm
    delta_gv: MultiForm
    reference: MultiForm
    reference_label: str
    gv_coefficient: ExactScalar
    notes: tuple[str, ...] = ()
    c_G: ExactScalar | None = None
    r_G: ExactScalar | None = None
    extras: dict[str, ExactScalar] = field(default_factory=dict)

    @property
    def normalized_coefficient(self) -> ExactScalar:
        """The coefficient with the (2π)^{q+1} of the Chern-Weil map cleared."""

        return self.gv_coefficient * TWO_PI ** (self.family.q + 1)


def pittie_connection(data: LieAlgebraData) -> FormMatrix:
    """θ_ij(X) = η_i([X, Y_j]) for X in p, and θ vanishes on v."""

    if not data.complete:
        raise BackendMismatchError("the connection needs full structure constants")
    p = data.subspace("p").indices
    v = data.subspace("v").indices
    position = {y: i for i, y in enumerate(v)}
    entries: list[list[dict[int, Fraction]]] = [[{} for _ in v] for _ in v]
    for x in p:
        for j, y in enumerate(v):
            for k, c in data.bracket(x, y).items():
                i = position.get(k)
                if i is not None:
                    entries[i][j][x] = c
    return [[MultiForm.covector(data.dim, entry) for entry in row] for row in entries]


def matrix_product(a: FormMatrix, b: FormMatrix, dim: int) -> FormMatrix:
    size = len(a)
    result: FormMatrix = []
    for i in range(size):
        row = []
        for j in range(size):
            degree = (a[i][0].degree if size else 0) + (b[0][j].degree if size else 0)
            entry = MultiForm.zero(dim, degree)
            for k in range(size):
                entry = entry + wedge(a[i][k], b[k][j])
            row.append(entry)
        result.append(row)
    return result


def curvature(theta: FormMatrix, data: LieAlgebraData) -> FormMatrix:
    """Ω = dΘ + Θ∧Θ, checked entrywise against the projected differential d̂Θ."""

    square = matrix_product(theta, theta, data.dim)
    omega: FormMatrix = []
    for i, row in enumerate(theta):
        out = []
        for j, entry in enumerate(row):
            value = ce_d(entry, data) + square[i][j]
            if value != hat_d(entry, data):
                raise CurvatureConsistencyError(f"{data.family}: entry ({i}, {j})")
            out.append(value)
        omega.append(out)
    logger.debug("Curvature verified", extra={"family": str(data.family), "size": len(theta)})
    return omega


def trace(matrix: FormMatrix, dim: int, degree: int) -> MultiForm:
    total = MultiForm.zero(dim, degree)
    for i, row in enumerate(matrix):
        total = total + row[i]
    return total


def delta_h1(theta: FormMatrix, dim: int) -> MultiForm:
    """Δ(h_1) = (1/2π) tr Θ."""

    return trace(theta, dim, 1).scale(TWO_PI.inverse())


def chern_forms(omega: FormMatrix, dim: int, top: int) -> list[MultiForm]:
    """c_0, ..., c_top of Ω/2π through the Newton identities."""

    size = len(omega)
    power_sums: list[MultiForm] = [MultiForm.one(dim)]
    current = omega
    for k in range(1, top + 1):
        if k > 1:
            current = matrix_product(current, omega, dim)
        power_sums.append(trace(current, dim, 2 * k))
    elementary = [MultiForm.one(dim)]
    for k in range(1, top + 1):
        total = MultiForm.zero(dim, 2 * k)
        for i in range(1, k + 1):
            term = wedge(elementary[k - i], power_sums[i])
            total = total + (term if i % 2 else -term)
        elementary.append(total.scale(Fraction(1, k)))
    if size == 0:
        elementary = elementary[:1] + [MultiForm.zero(dim, 2 * k) for k in range(1, top + 1)]
    return [c.scale(TWO_PI ** (-k)) for k, c in enumerate(elementary)]


def delta_cJ(omega: FormMatrix, exponents: Mapping[int, int], dim: int) -> MultiForm:
    """Δ(c_J) = ∏_k c_k(Ω/2π)^{J_k}."""

    top = max((k for k, e in exponents.items() if e), default=0)
    chern = chern_forms(omega, dim, top)
    result = MultiForm.one(dim)
    for k in sorted(exponents):
        for _ in range(exponents[k]):
            result = wedge(result, chern[k])
    return result


def _render_covector(vector: Mapping[int, Fraction], labels: tuple[str, ...]) -> str:
    parts = []
    for k in sorted(vector):
        c = vector[k]
        name = f"{labels[k]}^∨"
        prefix = "" if abs(c) == 1 else f"{abs(c)}·"
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {prefix}{name}")
    text = " ".join(parts).removeprefix("+ ")
    return text if len(vector) == 1 else f"({text})"


def reference_form(data: LieAlgebraData, split: SplitBasisData) -> tuple[MultiForm, str]:
    """The top form the reported coefficients refer to, and a readable label."""

    dist = MultiForm.covector(data.dim, split.distinguished)
    head = _render_covector(split.distinguished, data.labels)
    if split.reference_weights is None:
        form = dist
        for u, v in data.root_pairs:
            pair = wedge(MultiForm.basis(data.dim, u), MultiForm.basis(data.dim, v))
            form = wedge(form, pair)
        pairs = "∧".join(f"{data.labels[u]}^∨∧{data.labels[v]}^∨" for u, v in data.root_pairs)
        return form, f"{head}∧{pairs}"
    zeta = MultiForm(
        data.dim,
        2,
        {(min(u, v), max(u, v)): w if u < v else -w for (u, v), w in zip(data.root_pairs, split.reference_weights)},
    )
    return wedge(dist, zeta.power(len(data.root_pairs))), f"{head}∧ζ^{len(data.root_pairs)}"


def _on_root_pairs(form: MultiForm, data: LieAlgebraData) -> MultiForm:
    pairs = {tuple(sorted(pair)) for pair in data.root_pairs}
    terms = {m: c for m, c in form.terms.items() if m in pairs}
    return MultiForm(form.dim, form.degree, terms, form.prefactor, trusted=True)


def _delta_h1_c1_for(data: LieAlgebraData) -> tuple[MultiForm, MultiForm, list[str]]:
    notes: list[str] = []
    if data.complete:
        theta = pittie_connection(data)
        omega = curvature(theta, data)
        h1 = delta_h1(theta, data.dim)
        roots = root_data_from_algebra(data)
        if delta_h1_root(roots, data) != h1:
            raise InternalConsistencyError("connection and root descriptions of Δ(h1) differ")
        c1 = chern_forms(omega, data.dim, 1)[1]
        if c1 != ce_d(h1, data):
            raise InternalConsistencyError("c1(Ω) differs from dΔ(h1)")
        if _on_root_pairs(c1, data) != delta_c1_root(roots, data):
            raise InternalConsistencyError("curvature and root descriptions of Δ(c1) differ")
        notes.append("Δ(h1) from the connection, matched by the root sum over ψ")
        return h1, c1, notes
    if data.family.family is not Family.F4:
        raise BackendMismatchError(f"no stored root data for {data.family}")
    roots = f4_root_data()
    h1 = delta_h1_root(roots, data)
    c1 = ce_d(h1, data)
    if c1 != delta_c1_root(roots, data):
        raise InternalConsistencyError("dΔ(h1) differs from the root sum for Δ(c1)")
    notes.append("Δ(h1) from the root sum over ψ")
    return h1, c1, notes


def delta_gv(data: LieAlgebraData, split: SplitBasisData) -> CharacteristicResult:
    """Δ(h_1 c_1^q) and its coefficient against the family's reference top form."""

    q = data.family.q
    h1, c1, notes = _delta_h1_c1_for(data)
    gv = wedge(h1, c1.power(q))
    reference, label = reference_form(data, split)
    coefficient = gv.ratio_to(reference)
    logger.info(
        "Computed Δ(GV)",
        extra={"family": str(data.family), "coefficient": coefficient.render()},
    )
    return CharacteristicResult(
        family=data.family,
        delta_h1=h1,
        delta_c1=c1,
        delta_gv=gv,
        reference=reference,
        reference_label=label,
        gv_coefficient=coefficient,
        notes=tuple(notes),
    )
