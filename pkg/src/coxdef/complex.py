"""The 2-complex Sigma attached to W(M) and its orbifold quotient by W_+."""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import INF, CoxeterMatrix, group_for


@dataclass
class CellComplex2:
    """Vertices are canonical words; edges {w, s_i w}; faces are 2m_ij-gons.

    ``edges`` maps frozenset({w, s_i w}) to the label i.  Each face is
    stored as ``((i, j), cycle)`` with cycle the vertex sequence
    w, s_i w, s_j s_i w, ... of length 2 m_ij.
    """

    matrix: CoxeterMatrix
    vertices: list
    edges: dict = field(default_factory=dict)
    faces: list = field(default_factory=list)
    complete: bool = False

    @property
    def counts(self) -> dict:
        return {"vertices": len(self.vertices), "edges": len(self.edges), "faces": len(self.faces)}

    def faces_by_pair(self) -> dict:
        out: dict = {}
        for pair, _ in self.faces:
            out[pair] = out.get(pair, 0) + 1
        return out

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            **self.counts,
            "faces_by_pair": [[i, j, n] for (i, j), n in sorted(self.faces_by_pair().items())],
            "euler_characteristic": euler_characteristic(self),
        }


def build_sigma(matrix: CoxeterMatrix, length: int | None = None, budget: int | None = None) -> CellComplex2:
    """Sigma on the ball of radius ``length``, or all of it when W is finite.

    With ``length=None`` the enumeration runs until a layer comes out empty;
    for infinite W this ends in a BudgetExceededError.
    """
    group = group_for(matrix, budget)
    if length is None:
        layers = group.enumerate(group.budget)
        complete = True
    else:
        layers = group.enumerate(length)
        complete = len(layers) <= length
    vertices = [w for layer in layers for w in layer]
    vset = set(vertices)
    edges = {}
    for w in vertices:
        for i in range(matrix.rank):
            v = group.left_multiply(i, w)
            if v in vset:
                edges.setdefault(frozenset((w, v)), i)
    faces = []
    seen = set()
    for i, j in matrix.finite_pairs():
        m = matrix.m(i, j)
        for w in vertices:
            cycle = [w]
            for step in range(2 * m - 1):
                letter = i if step % 2 == 0 else j
                cycle.append(group.left_multiply(letter, cycle[-1]))
            key = ((i, j), frozenset(cycle))
            if key in seen or not all(v in vset for v in cycle):
                continue
            seen.add(key)
            faces.append(((i, j), tuple(cycle)))
    return CellComplex2(matrix, vertices, edges, faces, complete)


def euler_characteristic(c: CellComplex2) -> int:
    return len(c.vertices) - len(c.edges) + len(c.faces)


def face_is_closed(c: CellComplex2, face) -> bool:
    """The cycle's consecutive vertices (cyclically) are joined by edges."""
    (i, j), cycle = face
    n = len(cycle)
    for q in range(n):
        key = frozenset((cycle[q], cycle[(q + 1) % n]))
        if c.edges.get(key) != (i if q % 2 == 0 else j):
            return False
    return True


def right_translate(c: CellComplex2, g: tuple) -> dict:
    """Vertex map v -> v g (the action of W on Sigma commuting with edge labels)."""
    group = group_for(c.matrix)
    return {v: group.multiply(v, g) for v in c.vertices}


def orbifold_stats(matrix: CoxeterMatrix) -> dict:
    """Y = Sigma / W_+: poles N and S, edges e_i, a disk D_ij per finite pair."""
    return {
        "vertices": ["N", "S"],
        "edges": [f"e{i}" for i in range(matrix.rank)],
        "disks": [
            {"pair": [i, j], "isotropy": matrix.m(i, j)}
            for i, j in matrix.pairs()
            if matrix.m(i, j) != INF
        ],
    }
