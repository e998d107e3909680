"""Structured 1D/2D simplicial meshes with oriented incidence structure.

Simplices are stored as strictly increasing vertex tuples, so every signed
incidence (coboundary) matrix is determined by the alternating-face rule and
is independent of construction order.  Sub-meshes are closures of cell
subsets of a parent mesh; their degree-of-freedom maps are plain index
injections, which keeps all restriction operators exact.
"""

from itertools import combinations

import numpy as np
import scipy.sparse as sp


class Mesh:
    """Simplicial complex of dimension 1 or 2.

    Attributes:
        dim: topological dimension n (1 or 2).
        vertices: (num_vertices, dim) coordinate array.
        simplices: dict q -> (count, q+1) int array, rows strictly increasing.
        cell_measures: dict q -> positive measures (1 for vertices, lengths
            for edges, areas for triangles).
    """

    def __init__(self, dim, vertices, simplices):
        if dim not in (1, 2):
            raise ValueError(f"mesh dimension must be 1 or 2, got {dim}")
        self.dim = dim
        self.vertices = np.asarray(vertices, dtype=float).reshape(-1, dim)
        self.simplices = {}
        for q in range(dim + 1):
            arr = np.asarray(simplices[q], dtype=np.int64).reshape(-1, q + 1)
            if q > 0 and not np.all(arr[:, 1:] > arr[:, :-1]):
                raise ValueError(f"{q}-simplices must have strictly increasing vertex tuples")
            self.simplices[q] = arr
        self._index = {q: {tuple(row): i for i, row in enumerate(self.simplices[q])}
                       for q in range(dim + 1)}
        self._check_closure()
        self.cell_measures = {q: self._measures(q) for q in range(dim + 1)}
        self._cob_cache = {}

    def _check_closure(self):
        for q in range(1, self.dim + 1):
            lower = self._index[q - 1]
            for row in self.simplices[q]:
                for face in combinations(row, q):
                    if face not in lower:
                        raise ValueError(f"face {face} of a {q}-simplex is missing")

    def _measures(self, q):
        if q == 0:
            return np.ones(len(self.simplices[0]))
        pts = self.vertices[self.simplices[q]]
        if q == 1:
            m = np.linalg.norm(pts[:, 1] - pts[:, 0], axis=1)
        else:
            u = pts[:, 1] - pts[:, 0]
            v = pts[:, 2] - pts[:, 0]
            m = 0.5 * np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
        if np.any(m <= 0):
            raise ValueError(f"degenerate {q}-simplex (nonpositive measure)")
        return m

    def num(self, q):
        """Number of q-simplices."""
        return len(self.simplices[q])

    def simplex_index(self, q, vertex_tuple):
        return self._index[q][tuple(vertex_tuple)]

    def barycenters(self, q):
        """(count, dim) array of q-simplex barycenters."""
        return self.vertices[self.simplices[q]].mean(axis=1)

    def coboundary(self, q):
        if q not in self._cob_cache:
            self._cob_cache[q] = coboundary_matrix(self, q)
        return self._cob_cache[q]


def build_interval_mesh(a, b, cells):
    """Uniform mesh of the interval (a, b) with the given number of cells."""
    if not a < b:
        raise ValueError(f"invalid range: need a < b, got a={a}, b={b}")
    if cells < 1:
        raise ValueError("need at least one cell")
    verts = np.linspace(a, b, cells + 1)
    edges = np.column_stack([np.arange(cells), np.arange(1, cells + 1)])
    return Mesh(1, verts, {0: np.arange(cells + 1)[:, None], 1: edges})


def build_triangle_mesh(x0, y0, x1, y1, nx, ny):
    """Structured triangulation of the rectangle (x0,x1) x (y0,y1).

    Each of the nx*ny grid quads is split into two triangles along the
    diagonal of increasing vertex index.
    """
    if not (x0 < x1 and y0 < y1):
        raise ValueError("invalid range: need x0 < x1 and y0 < y1")
    if nx < 1 or ny < 1:
        raise ValueError("need at least one cell per direction")
    xs = np.linspace(x0, x1, nx + 1)
    ys = np.linspace(y0, y1, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    verts = np.column_stack([X.ravel(), Y.ravel()])

    def vid(i, j):
        return i * (ny + 1) + j

    tris = []
    for i in range(nx):
        for j in range(ny):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append(sorted((v00, v10, v11)))
            tris.append(sorted((v00, v01, v11)))
    tris = np.array(sorted(map(tuple, tris)), dtype=np.int64)

    edge_set = set()
    for t in tris:
        edge_set.update(combinations(t, 2))
    edges = np.array(sorted(edge_set), dtype=np.int64)
    nv = (nx + 1) * (ny + 1)
    return Mesh(2, verts, {0: np.arange(nv)[:, None], 1: edges, 2: tris})


def coboundary_matrix(mesh, q):
    """Signed incidence matrix realizing the exterior derivative on q-cochains.

    Shape is (#(q+1)-simplices, #q-simplices); the face obtained by omitting
    vertex j of a (q+1)-simplex carries the sign (-1)^j.  Entries are exact
    integers, so d o d = 0 holds in integer arithmetic.
    """
    if not 0 <= q < mesh.dim:
        raise ValueError(f"degree out of range: q={q} for mesh of dimension {mesh.dim}")
    upper = mesh.simplices[q + 1]
    rows, cols, vals = [], [], []
    for r, simplex in enumerate(upper):
        for j in range(q + 2):
            face = tuple(np.delete(simplex, j))
            rows.append(r)
            cols.append(mesh.simplex_index(q, face))
            vals.append(-1 if j % 2 else 1)
    return sp.csr_matrix(
        (np.array(vals, dtype=np.int64), (rows, cols)),
        shape=(len(upper), mesh.num(q)),
    )


class SubMesh:
    """Closure of a subset of top-dimensional cells of a parent mesh.

    Attributes:
        parent: the parent Mesh.
        cells: sorted parent indices of the included top cells.
        local: the sub-complex as a standalone Mesh (vertices renumbered
            monotonically, so orientations agree with the parent).
        dof_map: dict q -> sorted parent indices of the local q-simplices;
            local index i corresponds to parent simplex dof_map[q][i].
    """

    def __init__(self, parent, cells, local, dof_map):
        self.parent = parent
        self.cells = cells
        self.local = local
        self.dof_map = dof_map
        self._inverse = {q: {int(p): i for i, p in enumerate(dof_map[q])}
                         for q in dof_map}

    def num(self, q):
        return self.local.num(q)

    def local_index(self, q, parent_index):
        return self._inverse[q][int(parent_index)]

    def contains(self, q, parent_index):
        return int(parent_index) in self._inverse[q]


def extract_submesh(mesh, cells):
    """Build the SubMesh spanned by the given top-cell subset (with closure)."""
    cells = np.unique(np.asarray(cells, dtype=np.int64))
    if cells.size == 0:
        raise ValueError("empty cell subset")
    n = mesh.dim
    if cells[0] < 0 or cells[-1] >= mesh.num(n):
        raise ValueError("cell index out of range")

    dof_map = {n: cells}
    for q in range(n - 1, -1, -1):
        faces = set()
        for c in cells:
            simplex = mesh.simplices[n][c]
            faces.update(combinations(simplex, q + 1))
        dof_map[q] = np.array(sorted(mesh.simplex_index(q, f) for f in faces),
                              dtype=np.int64)

    vert_parents = mesh.simplices[0][dof_map[0], 0]
    renum = {int(v): i for i, v in enumerate(vert_parents)}
    local_simplices = {}
    for q in range(n + 1):
        rows = mesh.simplices[q][dof_map[q]]
        local_simplices[q] = np.vectorize(renum.__getitem__)(rows).reshape(rows.shape)
    local = Mesh(n, mesh.vertices[vert_parents], local_simplices)
    return SubMesh(mesh, cells, local, dof_map)


def selection_matrix(sub_from, sub_to, q):
    """0/1 matrix realizing restriction of q-cochains between nested sub-meshes.

    Every q-simplex of ``sub_to`` must be present in ``sub_from``; the result
    has exactly one 1 per row.
    """
    rows = np.arange(sub_to.num(q))
    cols = np.array([sub_from.local_index(q, p) for p in sub_to.dof_map[q]],
                    dtype=np.int64)
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_matrix((data, (rows, cols)), shape=(sub_to.num(q), sub_from.num(q)))
