"""Ordered covers of a mesh by cell subsets and their multi-index intersections.

A cover is a finite ordered family of cell subsets whose union is the whole
mesh.  For every strictly increasing multi-index with nonempty intersection
the cover stores the intersection sub-mesh and provides the 0/1 restriction
matrices between nested intersections; the alternating difference operator is
assembled from these.
"""

import numpy as np

from .mesh import extract_submesh, selection_matrix


class Cover:
    """Open cover of a mesh, modeled as cell subsets with shared cells as overlap.

    Attributes:
        mesh: the covered parent Mesh.
        sets: list of sorted cell-index arrays, one per cover set.
        levels: dict p -> list of (multi_index, SubMesh), multi-indices in
            lexicographic order; only levels with a nonempty intersection
            appear.
    """

    def __init__(self, mesh, sets, levels):
        self.mesh = mesh
        self.sets = sets
        self.levels = levels
        self._submeshes = {idx: sm for lvl in levels.values() for idx, sm in lvl}
        self._restrictions = {}

    @property
    def n_sets(self):
        return len(self.sets)

    @property
    def max_level(self):
        return max(self.levels)

    def multi_indices(self, p):
        return [idx for idx, _ in self.levels.get(p, [])]

    def submesh(self, idx):
        idx = tuple(int(i) for i in idx)
        if idx not in self._submeshes:
            raise KeyError(f"unknown multi-index {idx}")
        return self._submeshes[idx]

    def restriction(self, q, idx_from, idx_to):
        """Restriction of q-cochains from intersection idx_from to the deeper idx_to."""
        key = (q, tuple(idx_from), tuple(idx_to))
        if key not in self._restrictions:
            self._restrictions[key] = selection_matrix(
                self.submesh(idx_from), self.submesh(idx_to), q)
        return self._restrictions[key]


def build_cover(mesh, sets):
    """Validate the cell subsets and enumerate all nonempty intersections.

    Raises:
        ValueError: if a set is empty, an index is out of range, or the
            union of the sets does not cover every cell of the mesh.
    """
    n = mesh.dim
    clean = []
    for i, s in enumerate(sets):
        arr = np.unique(np.asarray(s, dtype=np.int64))
        if arr.size == 0:
            raise ValueError(f"cover set {i} is empty")
        if arr[0] < 0 or arr[-1] >= mesh.num(n):
            raise ValueError(f"cover set {i} has cell indices out of range")
        clean.append(arr)
    union = np.unique(np.concatenate(clean))
    if union.size != mesh.num(n):
        missing = np.setdiff1d(np.arange(mesh.num(n)), union)
        raise ValueError(f"not a cover: cells {missing[:10].tolist()} are in no set")

    cell_sets = [set(map(int, s)) for s in clean]
    levels = {}
    alive = {(i,): cell_sets[i] for i in range(len(clean))}
    p = 0
    while alive:
        levels[p] = [(idx, extract_submesh(mesh, sorted(cells)))
                     for idx, cells in sorted(alive.items())]
        nxt = {}
        for idx, cells in alive.items():
            for j in range(idx[-1] + 1, len(clean)):
                inter = cells & cell_sets[j]
                if inter:
                    nxt[idx + (j,)] = inter
        alive = nxt
        p += 1
    return Cover(mesh, clean, levels)


def intersection_cells(cover, idx):
    """Cells common to all cover sets named by the multi-index."""
    idx = tuple(int(i) for i in idx)
    if len(idx) == 0 or any(b <= a for a, b in zip(idx, idx[1:])):
        raise KeyError(f"multi-index must be strictly increasing, got {idx}")
    if idx[0] < 0 or idx[-1] >= cover.n_sets:
        raise KeyError(f"unknown cover-set index in {idx}")
    cells = set(map(int, cover.sets[idx[0]]))
    for i in idx[1:]:
        cells &= set(map(int, cover.sets[i]))
    return np.array(sorted(cells), dtype=np.int64)


def delta_sign(idx, i):
    """Sign of cover-set index i inside multi-index idx under the alternating rule.

    For unordered index pairs this realizes the antisymmetric convention
    (swapping two indices flips the sign) without storing duplicates.
    """
    idx = tuple(idx)
    if i not in idx:
        raise KeyError(f"{i} not in multi-index {idx}")
    return -1 if idx.index(i) % 2 else 1


def subsets_with_sign(idx):
    """All (position, sub-multi-index) pairs obtained by deleting one entry."""
    idx = tuple(idx)
    return [(j, idx[:j] + idx[j + 1:]) for j in range(len(idx))]


def all_multi_indices(cover):
    """All nonempty multi-indices, ordered by level then lexicographically."""
    out = []
    for p in sorted(cover.levels):
        out.extend(cover.multi_indices(p))
    return out
