"""Sparse exact Gauss-Jordan elimination with a parametric right-hand side.

Each equation is ``sum_v a_v x_v = sum_p b_p tau_p``: the right-hand side is
a linear form in parameters tau rather than a number, so one elimination
answers feasibility for every tau at once.  Rows that lose all unknowns
give the obstruction functionals; the row combination producing each is
tracked so infeasibility comes with a checkable certificate.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


def _axpy(target: dict, factor, source: dict) -> None:
    """target += factor * source, dropping zeros."""
    for key, v in source.items():
        s = target.get(key)
        s = factor * v if s is None else s + factor * v
        if s:
            target[key] = s
        else:
            target.pop(key, None)


@dataclass
class Equation:
    coeffs: dict
    rhs: dict
    label: object = None


@dataclass
class Obstruction:
    functional: dict  # parameter -> coefficient
    combination: dict  # equation index -> multiplier


@dataclass
class Elimination:
    equations: list
    pivots: list = field(default_factory=list)  # [(var, coeffs_without_pivot, rhs)]
    obstructions: list = field(default_factory=list)

    def functional_values(self, params: dict) -> list:
        return [evaluate_form(ob.functional, params) for ob in self.obstructions]

    def is_feasible(self, params: dict) -> bool:
        return not any(self.functional_values(params))

    def solve(self, params: dict, zero) -> dict:
        """Particular solution with all free unknowns set to zero."""
        values: dict = {}
        for var, coeffs, rhs in reversed(self.pivots):
            v = evaluate_form(rhs, params, zero)
            for other, a in coeffs.items():
                x = values.get(other)
                if x is not None:
                    v = v - a * x
            if v:
                values[var] = v
        return values

    def residual(self, combination: dict) -> tuple[dict, dict]:
        """(sum y_r * lhs_r, sum y_r * rhs_r) for a row combination y."""
        lhs: dict = {}
        rhs: dict = {}
        for r, y in combination.items():
            eq = self.equations[r]
            _axpy(lhs, y, eq.coeffs)
            _axpy(rhs, y, eq.rhs)
        return lhs, rhs


def evaluate_form(form: dict, params: dict, zero=0):
    total = zero
    for p, c in form.items():
        v = params.get(p)
        if v:
            total = total + c * v
    return total


def eliminate(equations: list[Equation], track: bool = True) -> Elimination:
    rows = []
    for r, eq in enumerate(equations):
        rows.append([dict(eq.coeffs), dict(eq.rhs), {r: 1} if track else {}])
    result = Elimination(equations)
    columns: dict = {}
    for r, (coeffs, _, _) in enumerate(rows):
        for var in coeffs:
            columns.setdefault(var, set()).add(r)
    active = set(range(len(rows)))
    heap = [(len(row[0]), r) for r, row in enumerate(rows)]
    heapq.heapify(heap)
    pivot_vars = set()
    while heap:
        size, r = heapq.heappop(heap)
        if r not in active:
            continue
        coeffs, rhs, origin = rows[r]
        if size != len(coeffs):
            heapq.heappush(heap, (len(coeffs), r))
            continue
        active.discard(r)
        if not coeffs:
            if rhs:
                result.obstructions.append(Obstruction(rhs, origin))
            continue
        var = min(coeffs, key=lambda v: (len(columns[v]), repr(v)))
        inv = coeffs[var] ** -1
        for key in coeffs:
            coeffs[key] = coeffs[key] * inv
        for key in rhs:
            rhs[key] = rhs[key] * inv
        for key in origin:
            origin[key] = origin[key] * inv
        for other in list(columns[var]):
            if other == r or other not in active:
                continue
            o_coeffs, o_rhs, o_origin = rows[other]
            factor = -o_coeffs[var]
            before = set(o_coeffs)
            _axpy(o_coeffs, factor, coeffs)
            _axpy(o_rhs, factor, rhs)
            if track:
                _axpy(o_origin, factor, origin)
            after = set(o_coeffs)
            for v in before - after:
                columns[v].discard(other)
            for v in after - before:
                columns.setdefault(v, set()).add(other)
            heapq.heappush(heap, (len(o_coeffs), other))
        for v in coeffs:
            columns[v].discard(r)
        pivot_vars.add(var)
        rest = {v: a for v, a in coeffs.items() if v != var}
        result.pivots.append((var, rest, rhs))
    return result


def span_basis(forms: list[dict]) -> list[dict]:
    """Row-reduced basis of the span of linear forms (small, dense)."""
    basis: list[tuple[object, dict]] = []
    for form in forms:
        form = dict(form)
        for key, b in basis:
            c = form.get(key)
            if c:
                _axpy(form, -c, b)
        if not form:
            continue
        key = min(form, key=repr)
        inv = form[key] ** -1
        form = {k: v * inv for k, v in form.items()}
        for idx, (k2, b) in enumerate(basis):
            c = b.get(key)
            if c:
                _axpy(b, -c, form)
        basis.append((key, form))
    return [b for _, b in basis]


def express_in_span(target: dict, forms: list[dict]):
    """Coefficients lambda with sum lambda_r forms[r] == target, or None."""
    # eliminate on the transpose: unknowns are the lambdas
    equations = []
    keys = set(target)
    for f in forms:
        keys |= set(f)
    for key in sorted(keys, key=repr):
        coeffs = {r: f[key] for r, f in enumerate(forms) if key in f}
        rhs = {"target": target[key]} if key in target else {}
        equations.append(Equation(coeffs, rhs, key))
    elim = eliminate(equations, track=False)
    if elim.obstructions:
        return None
    return elim.solve({"target": 1}, 0)
