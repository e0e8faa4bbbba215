"""The quiver algebra B of the orbifold Y, its modules, and first-order deformations.

Vertices: the poles N and S, one vertex per edge e_i, and for each finite
pair an ordered vertex (i, j) and (j, i).  Arrows:

    f_Ni: N -> i,  f_Si: S -> i,  h_ij: i -> (i, j),  g_ij: (i, j) -> (j, i)

Relations for each finite pair i < j:

    g_ij h_ij f_Ni = h_ji f_Nj         (N-triangle)
    g_ji h_ji f_Sj = h_ij f_Si         (S-triangle)
    prod_k (g_ij g_ji - t_ijk) = 0     on V_(j,i)

In B the last relation is (g_ij g_ji)^m = 1 (t at the roots of unity).
Matrices act on column vectors and paths are listed in the order arrows
are traversed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coxeter import CoxeterMatrix, group_for
from .cyclotomic import CyclotomicValue
from .errors import InvalidInputError
from .laurent import ParamIndex, parameters
from .linsolve import Elimination, Equation, eliminate, express_in_span, span_basis


# ---------------------------------------------------------------- matrices

def mat_zero(rows: int, cols: int, zero) -> list:
    return [[zero] * cols for _ in range(rows)]


def mat_identity(n: int, zero, one) -> list:
    out = mat_zero(n, n, zero)
    for q in range(n):
        out[q][q] = one
    return out


def mat_mul(a: list, b: list, zero) -> list:
    cols = len(b[0]) if b else 0
    out = mat_zero(len(a), cols, zero)
    for r, row in enumerate(a):
        acc = out[r]
        for c, x in enumerate(row):
            if not x:
                continue
            for q, y in enumerate(b[c]):
                if y:
                    acc[q] = acc[q] + x * y
    return out


def mat_sub(a: list, b: list) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: list, c) -> list:
    return [[c * x for x in row] for row in a]


def mat_is_zero(a: list) -> bool:
    return not any(x for row in a for x in row)


def mat_inverse(a: list, zero, one) -> list:
    n = len(a)
    work = [list(row) + e for row, e in zip(a, mat_identity(n, zero, one))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise InvalidInputError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col] ** -1
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            c = work[r][col]
            if r != col and c:
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


# ---------------------------------------------------------------- quiver

@dataclass(frozen=True)
class Arrow:
    name: tuple  # ("f", "N", i), ("f", "S", i), ("h", i, j), ("g", i, j)
    source: object
    target: object

    def label(self) -> str:
        kind, *rest = self.name
        return kind + "_" + "".join(str(x) for x in rest)


@dataclass(frozen=True)
class Relation:
    kind: str  # "N", "S" or "order"
    pair: tuple[int, int]
    lhs: tuple = ()  # arrow names, in traversal order
    rhs: tuple = ()

    def label(self) -> str:
        i, j = self.pair
        return {"N": f"N-triangle({i},{j})", "S": f"S-triangle({i},{j})", "order": f"order({i},{j})"}[self.kind]


@dataclass
class Quiver:
    matrix: CoxeterMatrix
    vertices: list
    arrows: dict  # name -> Arrow
    relations: list

    def to_json(self) -> dict:
        def vname(v):
            return v if isinstance(v, str) else "".join(str(x) for x in v) if isinstance(v, tuple) else str(v)

        return {
            "vertices": [vname(v) for v in self.vertices],
            "arrows": [
                {"name": a.label(), "source": vname(a.source), "target": vname(a.target)}
                for a in self.arrows.values()
            ],
            "relations": [
                {
                    "name": rel.label(),
                    "lhs": [self.arrows[n].label() for n in rel.lhs],
                    "rhs": [self.arrows[n].label() for n in rel.rhs],
                }
                if rel.kind != "order"
                else {"name": rel.label(), "order": self.matrix.m(*rel.pair)}
                for rel in self.relations
            ],
        }


def build_quiver(matrix: CoxeterMatrix) -> Quiver:
    r = matrix.rank
    vertices: list = ["N", "S"] + list(range(r))
    arrows: dict = {}

    def add(name, source, target):
        arrows[name] = Arrow(name, source, target)

    for i in range(r):
        add(("f", "N", i), "N", i)
        add(("f", "S", i), "S", i)
    relations = []
    for i, j in matrix.finite_pairs():
        vertices += [(i, j), (j, i)]
        add(("h", i, j), i, (i, j))
        add(("h", j, i), j, (j, i))
        add(("g", i, j), (i, j), (j, i))
        add(("g", j, i), (j, i), (i, j))
        relations.append(Relation("N", (i, j), (("f", "N", i), ("h", i, j), ("g", i, j)), (("f", "N", j), ("h", j, i))))
        relations.append(Relation("S", (i, j), (("f", "S", j), ("h", j, i), ("g", j, i)), (("f", "S", i), ("h", i, j))))
        relations.append(Relation("order", (i, j)))
    for rel in relations:
        for path in (rel.lhs, rel.rhs):
            for a, b in zip(path, path[1:]):
                assert arrows[a].target == arrows[b].source
        if rel.kind != "order":
            assert arrows[rel.lhs[0]].source == arrows[rel.rhs[0]].source
            assert arrows[rel.lhs[-1]].target == arrows[rel.rhs[-1]].target
    return Quiver(matrix, vertices, arrows, relations)


@dataclass
class QuiverModule:
    """Dimension per vertex and one exact matrix (target x source) per arrow."""

    quiver: Quiver
    conductor: int
    dims: dict
    maps: dict = field(default_factory=dict)

    @property
    def zero(self):
        return CyclotomicValue(self.conductor)

    @property
    def one(self):
        return CyclotomicValue.rational(self.conductor, 1)

    def check_shapes(self) -> None:
        for name, arrow in self.quiver.arrows.items():
            mat = self.maps.get(name)
            rows, cols = self.dims[arrow.target], self.dims[arrow.source]
            if mat is None or len(mat) != rows or any(len(row) != cols for row in mat):
                raise InvalidInputError(f"dimension mismatch on arrow {arrow.label()}: expected {rows}x{cols}")

    def path(self, names) -> list:
        first = self.quiver.arrows[names[0]]
        out = mat_identity(self.dims[first.source], self.zero, self.one)
        for name in names:
            out = mat_mul(self.maps[name], out, self.zero)
        return out

    def monodromy(self, i: int, j: int) -> list:
        """g_ij g_ji on V_(j,i)."""
        return mat_mul(self.maps[("g", i, j)], self.maps[("g", j, i)], self.zero)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "dims": {("".join(map(str, v)) if isinstance(v, tuple) else str(v)): d for v, d in self.dims.items()},
        }


def _root_values(module: QuiverModule, i: int, j: int, tau: Mapping | None = None) -> list:
    """t_ijk = zeta_m^k (1 + tau_ijk) for k = 1..m, as cyclotomic numbers."""
    m = module.quiver.matrix.m(i, j)
    n = module.conductor
    out = []
    for k in range(1, m + 1):
        z = CyclotomicValue.zeta(n, k * (n // m))
        if tau is not None:
            z = z * (1 + Fraction(tau.get(ParamIndex(i, j, k, m), 0)))
        out.append(z)
    return out


def verify_module(module: QuiverModule, tau: Mapping | None = None) -> list[str]:
    """Labels of the relations that fail, with t at tau (exact, not truncated)."""
    module.check_shapes()
    failed = []
    for rel in module.quiver.relations:
        if rel.kind == "order":
            g = module.monodromy(*rel.pair)
            value = mat_identity(len(g), module.zero, module.one)
            for t_k in _root_values(module, *rel.pair, tau):
                value = mat_mul(value, mat_sub(g, mat_scale(mat_identity(len(g), module.zero, module.one), t_k)), module.zero)
            ok = mat_is_zero(value)
        else:
            ok = module.path(rel.lhs) == module.path(rel.rhs)
        if not ok:
            failed.append(rel.label())
    return failed


# ---------------------------------------------------------------- modules

def module_from_representation(matrix: CoxeterMatrix, rho: Mapping, conductor: int | None = None) -> QuiverModule:
    """Module of a representation of W_+ given by matrices rho[(0, i)] for a_0i.

    Every vertex space is the representation space U; f and h arrows are
    identities, f_Si = rho(a_0i), and for i < j, g_ij = 1 while
    g_ji = rho(a_0i) rho(a_0j)^-1, so g_ij g_ji acts as a_ij.
    """
    quiver = build_quiver(matrix)
    n = conductor or matrix.conductor()
    zero, one = CyclotomicValue(n), CyclotomicValue.rational(n, 1)

    def lift(x):
        return x if isinstance(x, CyclotomicValue) else CyclotomicValue.rational(n, x)

    dim = None
    blocks = {0: None}
    for i in range(1, matrix.rank):
        if (0, i) not in rho:
            raise InvalidInputError(f"missing matrix for a_0{i}")
        mat = [[lift(x) for x in row] for row in rho[(0, i)]]
        if dim is None:
            dim = len(mat)
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise InvalidInputError("representation matrices must be square of one size")
        blocks[i] = mat
    if dim is None:
        dim = int(rho.get("dim", 1))
    ident = mat_identity(dim, zero, one)
    blocks[0] = ident
    dims = {v: dim for v in quiver.vertices}
    maps = {}
    for name in quiver.arrows:
        kind = name[0]
        if kind == "f":
            maps[name] = ident if name[1] == "N" else blocks[name[2]]
        elif kind == "h":
            maps[name] = ident
        else:
            _, a, b = name
            if a < b:
                maps[name] = ident
            else:  # g_ab with a > b
                maps[name] = mat_mul(blocks[b], mat_inverse(blocks[a], zero, one), zero)
    return QuiverModule(quiver, n, dims, maps)


def regular_representation(matrix: CoxeterMatrix, budget: int | None = None) -> tuple[list, dict]:
    """Even elements of finite W and the permutation matrices of left multiplication by a_0i."""
    group = group_for(matrix, budget)
    even = [w for layer in group.enumerate(group.budget) for w in layer if len(w) % 2 == 0]
    index = {w: q for q, w in enumerate(even)}
    rho = {}
    for i in range(1, matrix.rank):
        mat = [[0] * len(even) for _ in even]
        for col, w in enumerate(even):
            image = group.left_multiply(0, group.left_multiply(i, w))
            mat[index[image]][col] = 1
        rho[(0, i)] = mat
    return even, rho


def regular_module(matrix: CoxeterMatrix, budget: int | None = None) -> QuiverModule:
    _, rho = regular_representation(matrix, budget)
    return module_from_representation(matrix, rho)


def trivial_module(matrix: CoxeterMatrix) -> QuiverModule:
    return module_from_representation(matrix, {(0, i): [[1]] for i in range(1, matrix.rank)})


# ---------------------------------------------------------------- deformations

@dataclass
class DeformationResult:
    feasible: bool
    tau: dict
    elimination: Elimination
    obstruction_basis: list  # basis of the functionals tau must annihilate
    correction: dict | None = None  # arrow name -> {(row, col): value}
    certificate: dict | None = None  # equation index -> multiplier
    certificate_value: object = None

    def to_json(self) -> dict:
        out = {
            "feasible": self.feasible,
            "equations": len(self.elimination.equations),
            "rank": len(self.elimination.pivots),
            "obstruction_space": [functional_to_json(f) for f in self.obstruction_basis],
        }
        if self.correction is not None:
            out["nonzero_correction_entries"] = sum(len(v) for v in self.correction.values())
        if self.certificate is not None:
            out["certificate"] = {
                "equations": len(self.certificate),
                "value": self.certificate_value.to_json(),
            }
        return out


def functional_to_json(form: Mapping) -> list:
    return [{"param": str(p), "coeff": c.to_json() if hasattr(c, "to_json") else str(c)} for p, c in sorted(form.items())]


def _product_terms(module: QuiverModule, g0: list, roots: list) -> list:
    """[(L_k, R_k)] with L_k = prod_{l<k}(g0 - t_l), R_k = prod_{l>k}(g0 - t_l)."""
    n = len(g0)
    zero, one = module.zero, module.one
    ident = mat_identity(n, zero, one)
    factors = [mat_sub(g0, mat_scale(ident, r)) for r in roots]
    prefix = [ident]
    for f in factors:
        prefix.append(mat_mul(prefix[-1], f, zero))
    suffix = [ident]
    for f in reversed(factors):
        suffix.append(mat_mul(f, suffix[-1], zero))
    suffix.reverse()
    return [(prefix[k], suffix[k + 1]) for k in range(len(roots))]


def _sandwich(eqs: dict, left: list, arrow, right: list) -> None:
    """eqs[(a, b)] += (left X_arrow right)_ab as a sparse linear form in X."""
    left_nz = [[(c, x) for c, x in enumerate(row) if x] for row in left]
    right_cols: dict = {}
    for d, row in enumerate(right):
        for b, y in enumerate(row):
            if y:
                right_cols.setdefault(b, []).append((d, y))
    for a, lrow in enumerate(left_nz):
        for b, rcol in right_cols.items():
            form = eqs.setdefault((a, b), {})
            for c, x in lrow:
                for d, y in rcol:
                    key = (arrow, c, d)
                    s = form.get(key)
                    s = x * y if s is None else s + x * y
                    if s:
                        form[key] = s
                    else:
                        form.pop(key, None)


def deformation_equations(module: QuiverModule) -> list[Equation]:
    """Linear equations on first-order corrections X_arrow with right-hand side linear in tau."""
    zero, one = module.zero, module.one
    equations = []
    for rel in module.quiver.relations:
        i, j = rel.pair
        if rel.kind == "order":
            g_ij, g_ji = module.maps[("g", i, j)], module.maps[("g", j, i)]
            g0 = mat_mul(g_ij, g_ji, zero)
            roots = _root_values(module, i, j)
            m = module.quiver.matrix.m(i, j)
            eqs: dict = {}
            rhs_terms: dict = {}
            for k, (left, right) in enumerate(_product_terms(module, g0, roots), start=1):
                _sandwich(eqs, left, ("g", i, j), mat_mul(g_ji, right, zero))
                _sandwich(eqs, mat_mul(left, g_ij, zero), ("g", j, i), right)
                lr = mat_mul(left, right, zero)
                p = ParamIndex(i, j, k, m)
                for a, row in enumerate(lr):
                    for b, x in enumerate(row):
                        if x:
                            rhs_terms.setdefault((a, b), {})[p] = roots[k - 1] * x
            size = len(g0)
            for a in range(size):
                for b in range(size):
                    coeffs = eqs.get((a, b), {})
                    rhs = rhs_terms.get((a, b), {})
                    if coeffs or rhs:
                        equations.append(Equation(coeffs, rhs, (rel.label(), a, b)))
            continue
        eqs = {}
        for sign, path in ((1, rel.lhs), (-1, rel.rhs)):
            for pos, name in enumerate(path):
                before = module.path(path[:pos]) if pos else None
                after = module.path(path[pos + 1:]) if pos + 1 < len(path) else None
                src = module.dims[module.quiver.arrows[name].source]
                tgt = module.dims[module.quiver.arrows[name].target]
                right = before if before is not None else mat_identity(src, zero, one)
                left = after if after is not None else mat_identity(tgt, zero, one)
                if sign < 0:
                    left = mat_scale(left, -one)
                _sandwich(eqs, left, name, right)
        for (a, b), coeffs in sorted(eqs.items()):
            if coeffs:
                equations.append(Equation(coeffs, {}, (rel.label(), a, b)))
    return equations


def deformation_system(module: QuiverModule) -> Elimination:
    failed = verify_module(module)
    if failed:
        raise InvalidInputError(f"module violates relations of B: {failed}")
    return eliminate(deformation_equations(module))


def first_order_deformation(
    module: QuiverModule,
    tau: Mapping,
    elimination: Elimination | None = None,
    preferred: list | None = None,
) -> DeformationResult:
    """Solve for first-order corrections with t_ijk = zeta^k (1 + tau_ijk).

    ``tau`` maps ParamIndex (i < j) to rationals; missing entries are 0.
    Returns a correction or a combination y of the equations with
    y * lhs = 0 and y * rhs(tau) != 0.  When infeasible, the first
    functional of ``preferred`` that lies in the obstruction span and is
    nonzero at tau is used for the certificate.
    """
    elim = elimination or deformation_system(module)
    n = module.conductor
    params = {p: CyclotomicValue.rational(n, Fraction(v)) for p, v in tau.items() if v}
    basis = span_basis([ob.functional for ob in elim.obstructions])
    for form in preferred or ():
        value = _evaluate(form, params, module.zero)
        if value:
            y = certificate_for(elim, form)
            if y is not None:
                return DeformationResult(False, dict(tau), elim, basis, certificate=y, certificate_value=value)
    for ob in elim.obstructions:
        value = _evaluate(ob.functional, params, module.zero)
        if value:
            return DeformationResult(False, dict(tau), elim, basis, certificate=ob.combination, certificate_value=value)
    values = elim.solve(params, module.zero)
    correction: dict = {}
    for (arrow, r, c), v in values.items():
        correction.setdefault(arrow, {})[(r, c)] = v
    return DeformationResult(True, dict(tau), elim, basis, correction=correction)


def _evaluate(form: Mapping, params: Mapping, zero):
    total = zero
    for p, c in form.items():
        if p in params:
            total = total + c * params[p]
    return total


def check_certificate(elim: Elimination, combination: Mapping) -> dict:
    """Recompute y * lhs from the original equations; returns the functional y * rhs.

    Raises if y * lhs is not identically zero.
    """
    lhs, rhs = elim.residual(combination)
    if lhs:
        raise AssertionError(f"combination leaves {len(lhs)} unknowns with nonzero coefficient")
    return rhs


def check_correction(module: QuiverModule, tau: Mapping, correction: Mapping) -> bool:
    """Every equation holds for the correction (independent re-evaluation)."""
    n = module.conductor
    params = {p: CyclotomicValue.rational(n, Fraction(v)) for p, v in tau.items() if v}
    for eq in deformation_equations(module):
        lhs = module.zero
        for (arrow, r, c), a in eq.coeffs.items():
            x = correction.get(arrow, {}).get((r, c))
            if x is not None:
                lhs = lhs + a * x
        if lhs != _evaluate(eq.rhs, params, module.zero):
            return False
    return True


def certificate_for(elim: Elimination, functional: Mapping):
    """Row combination realizing ``functional`` (an element of the obstruction span), or None."""
    forms = [ob.functional for ob in elim.obstructions]
    lam = express_in_span(dict(functional), forms)
    if lam is None:
        return None
    combination: dict = {}
    for idx, c in lam.items():
        for r, y in elim.obstructions[idx].combination.items():
            s = combination.get(r)
            s = c * y if s is None else s + c * y
            if s:
                combination[r] = s
            else:
                combination.pop(r, None)
    return combination


def generic_tau(matrix: CoxeterMatrix, seed: int = 0, bound: int = 9) -> dict:
    rng = random.Random(seed)
    return {p: Fraction(rng.randint(1, bound), rng.randint(1, bound)) * rng.choice((1, -1)) for p in parameters(matrix)}
