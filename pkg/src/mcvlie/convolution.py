"""Additive convolution and middle convolution of residue tuples, in two
flavours: the one-variable block construction on a plain matrix tuple, and
the arrangement version along a line, which enlarges a Pfaffian system to
its Y-closure.

Both share the same skeleton: the convolution multiplies the rank by the
number of (transverse) hyperplanes; the middle convolution quotients by the
kernel-block subspace and the joint kernel of the convolved generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, Line, codim2_flats, split_parallel, y_closure
from .errors import InputError, InternalInvariantError, PreconditionError
from .exactcore import (
    ExactMatrix,
    InvarianceError,
    Subspace,
    kernel,
    matrix_to_json,
    quotient_map,
    rat,
    rat_str,
    right_inverse,
    subspace_sum,
)
from .holonomy import PfaffianSystem, check_integrability, zero_extend


def _validate_tuple(mats):
    mats = list(mats)
    if not mats:
        raise PreconditionError("need at least one residue matrix")
    d = mats[0].rows
    for m in mats:
        if not m.is_square or m.rows != d:
            raise PreconditionError("residue matrices must be square of equal size")
    return mats, len(mats), d


def dr_convolution(mats, lam) -> list:
    """Convolved generator matrices: the i-th output has block row i equal to
    (A_1, ..., A_i + lam·Id, ..., A_n) and every other block row zero."""
    mats, n, d = _validate_tuple(mats)
    lam = rat(lam)
    out = []
    zero = ExactMatrix.zeros(d, d)
    for i in range(n):
        grid = []
        for r in range(n):
            if r == i:
                grid.append(
                    [m.add_scaled_identity(lam) if j == i else m for j, m in enumerate(mats)]
                )
            else:
                grid.append([zero] * n)
        out.append(ExactMatrix.block(grid))
    return out


def dr_k_l(mats, lam):
    """The two canonical subspaces of the convolved space: k collects the
    kernels of the inputs blockwise, l is the joint kernel of the convolved
    generators.  At lam = 0 the joint kernel coincides with the relation
    space {(v_i): sum A_i v_i = 0}, which is cross-checked."""
    mats, n, d = _validate_tuple(mats)
    lam = rat(lam)
    conv = dr_convolution(mats, lam)
    cols = []
    for i, a in enumerate(mats):
        ker = kernel(a)
        for j in range(ker.dim):
            v = [Fraction(0)] * (n * d)
            col = ker.basis.col(j)
            for r in range(d):
                v[i * d + r] = col[r]
            cols.append(v)
    k = Subspace(n * d, columns=cols)
    l = kernel(ExactMatrix.vstack(conv))
    if lam == 0:
        if l != kernel(ExactMatrix.hstack(mats)):
            raise InternalInvariantError(
                "joint kernel at lam = 0 disagrees with the relation space"
            )
    return k, l


@dataclass
class ConvolvedTuple:
    """Convolution of a plain matrix tuple (no arrangement attached)."""

    base: list
    lam: Fraction
    matrices: list

    @property
    def dim(self) -> int:
        return self.matrices[0].rows if self.matrices else 0


@dataclass
class ConvolvedSystem:
    """Convolution of a Pfaffian system along a line: one matrix of size
    n·d per hyperplane of the Y-closure, block order fixed by the transverse
    hyperplanes in arrangement order."""

    base: PfaffianSystem
    lam: Fraction
    order: list
    closure: Arrangement
    matrices: dict

    @property
    def dim(self) -> int:
        return len(self.order) * self.base.rank

    def system(self) -> PfaffianSystem:
        return PfaffianSystem(self.closure, self.dim, self.matrices)

    def to_json(self):
        return {
            "closure": self.closure.to_json(),
            "lambda": rat_str(self.lam),
            "dim": self.dim,
            "block_order": list(self.order),
            "matrices": {h: matrix_to_json(m) for h, m in self.matrices.items()},
        }


@dataclass
class MiddleConvolvedSystem:
    """Quotient of a convolution by k + l, with the induced matrices."""

    conv: object  # ConvolvedTuple or ConvolvedSystem
    k_space: Subspace
    l_space: Subspace
    projection: ExactMatrix
    matrices: object  # list (tuple flavour) or dict (arrangement flavour)
    dim: int
    direct_sum: bool

    def to_json(self):
        if not isinstance(self.conv, ConvolvedSystem):
            raise InputError("only arrangement-flavoured results serialize")
        return {
            "closure": self.conv.closure.to_json(),
            "lambda": rat_str(self.conv.lam),
            "dim": self.dim,
            "k_dim": self.k_space.dim,
            "l_dim": self.l_space.dim,
            "direct_sum": self.direct_sum,
            "block_order": list(self.conv.order),
            "matrices": {h: matrix_to_json(m) for h, m in self.matrices.items()},
        }


def _verify_invariant(mat: ExactMatrix, sub: Subspace, generator, which: str):
    for j in range(sub.dim):
        v = sub.basis.col(j)
        img = mat.apply(v)
        if not sub.contains(img):
            raise InvarianceError(
                f"{which} is not invariant", generator=generator,
                witness_vector=v, image=img,
            )


def _quotient_all(matrices, k: Subspace, l: Subspace):
    w = subspace_sum(k, l)
    direct = k.dim + l.dim == w.dim
    proj, qdim = quotient_map(k.ambient_dim, w)
    pivot_set = set(w.pivots)
    nonpivot = [r for r in range(w.ambient_dim) if r not in pivot_set]
    section = ExactMatrix.zeros(w.ambient_dim, qdim).to_lists()
    for c, r in enumerate(nonpivot):
        section[r][c] = Fraction(1)
    section = ExactMatrix(section, shape=(w.ambient_dim, qdim))
    induced = [proj * m * section for m in matrices]
    return proj, qdim, direct, induced


def dr_middle_convolution(mats, lam) -> MiddleConvolvedSystem:
    """Middle convolution of a matrix tuple: convolve, verify that k and l
    are invariant (they must be), and pass to the quotient by k + l."""
    mats, n, d = _validate_tuple(mats)
    lam = rat(lam)
    conv = dr_convolution(mats, lam)
    k, l = dr_k_l(mats, lam)
    for i, c in enumerate(conv):
        _verify_invariant(c, k, f"generator {i + 1}", "kernel-block space")
        _verify_invariant(c, l, f"generator {i + 1}", "joint kernel")
    proj, qdim, direct, induced = _quotient_all(conv, k, l)
    return MiddleConvolvedSystem(
        conv=ConvolvedTuple(base=mats, lam=lam, matrices=conv),
        k_space=k,
        l_space=l,
        projection=proj,
        matrices=induced,
        dim=qdim,
        direct_sum=direct,
    )


# ---------------------------------------------------------------------------
# Arrangement flavour


def haraoka_convolution(system: PfaffianSystem, line: Line, lam) -> ConvolvedSystem:
    """Convolution along a line: extend to the Y-closure with zero residues,
    then build one block matrix per hyperplane of the closure.

    Transverse hyperplanes get the one-variable block-row form.  A parallel
    (or closure-added) hyperplane acts column by column: the column of a
    transverse H_j sees the codimension-2 flat cut on the parallel
    hyperplane by H_j, whose family fixes a diagonal contribution and the
    off-diagonal drains onto the other transverse members of that family.
    The output is asserted integrable over the closure.
    """
    lam = rat(lam)
    if check_integrability(system):
        raise PreconditionError("input system is not integrable")
    closure = y_closure(system.arrangement, line)
    ext = zero_extend(system, closure)
    parallel, transverse = split_parallel(closure, line)
    order = transverse.ids()
    n = len(order)
    if n == 0:
        raise PreconditionError("no hyperplane is transverse to the line")
    d = system.rank
    zero = ExactMatrix.zeros(d, d)
    pos = {hid: i for i, hid in enumerate(order)}
    matrices = {}

    for i, hid in enumerate(order):
        grid = []
        for r in range(n):
            if r == i:
                grid.append(
                    [
                        ext.residue(order[j]).add_scaled_identity(lam)
                        if j == i
                        else ext.residue(order[j])
                        for j in range(n)
                    ]
                )
            else:
                grid.append([zero] * n)
        matrices[hid] = ExactMatrix.block(grid)

    flats = codim2_flats(closure)
    for h in parallel:
        grid = [[zero] * n for _ in range(n)]
        h_flats = [f for f in flats if h.id in f.family]
        a_h = ext.residue(h.id)
        for j, tid in enumerate(order):
            flat = next((f for f in h_flats if tid in f.family), None)
            if flat is None:
                raise InternalInvariantError(
                    f"no codim-2 flat joins {h.id!r} and {tid!r}"
                )
            fam = [m for m in flat.family if m in pos]
            diag = a_h
            for m in fam:
                if m != tid:
                    diag = diag + ext.residue(m)
                    grid[pos[m]][j] = -ext.residue(tid)
            grid[j][j] = diag
        matrices[h.id] = ExactMatrix.block(grid)

    out = ConvolvedSystem(
        base=system, lam=lam, order=order, closure=closure, matrices=matrices
    )
    if check_integrability(out.system()):
        raise InternalInvariantError(
            "convolution output violates integrability over the closure"
        )
    return out


def haraoka_middle_convolution(
    system: PfaffianSystem, line: Line, lam
) -> MiddleConvolvedSystem:
    """Middle convolution along a line: quotient the convolution by K + L,
    where K stacks the kernels of the original transverse residues and L is
    the joint kernel of the convolved transverse matrices.  Invariance of K
    and L under every convolved matrix is verified and a failure carries an
    exact witness."""
    conv = haraoka_convolution(system, line, lam)
    n, d = len(conv.order), system.rank
    cols = []
    for i, hid in enumerate(conv.order):
        ker = kernel(system.residue(hid))
        for j in range(ker.dim):
            v = [Fraction(0)] * (n * d)
            col = ker.basis.col(j)
            for r in range(d):
                v[i * d + r] = col[r]
            cols.append(v)
    k = Subspace(n * d, columns=cols)
    l = kernel(ExactMatrix.vstack([conv.matrices[hid] for hid in conv.order]))
    for hid in conv.closure.ids():
        _verify_invariant(conv.matrices[hid], k, hid, "kernel-block space K")
        _verify_invariant(conv.matrices[hid], l, hid, "joint kernel L")
    ids = conv.closure.ids()
    proj, qdim, direct, induced = _quotient_all(
        [conv.matrices[hid] for hid in ids], k, l
    )
    return MiddleConvolvedSystem(
        conv=conv,
        k_space=k,
        l_space=l,
        projection=proj,
        matrices=dict(zip(ids, induced)),
        dim=qdim,
        direct_sum=direct,
    )


# ---------------------------------------------------------------------------
# Comparison maps


def phi_zero(mats) -> ExactMatrix:
    """The block map (v_1, ..., v_n) -> sum A_i v_i from the lam = 0
    convolved space to the base space; it intertwines the convolved
    generators with the originals and induces the map from the middle
    convolution at 0 back to the input."""
    mats, n, d = _validate_tuple(mats)
    return ExactMatrix.hstack(mats)


def phi_compose(mats, lam, mu) -> ExactMatrix:
    """The comparison map from the doubly convolved space to the convolved
    space at lam + mu: outer block i with inner vector w is sent to
    C_i^(mu)·w.

    The inner level is the right one: with P_k the row-block-k projector,
    C_k^(mu) - C_k^(lam+mu) = -lam·P_k and P_k·C_i^(mu) = delta_ki·C_i^(mu),
    so this map intertwines the doubly convolved generators with the
    (lam+mu)-convolved ones exactly, and descends to the isomorphism of
    middle convolutions under the genericity conditions."""
    mats, n, d = _validate_tuple(mats)
    rat(lam)
    conv = dr_convolution(mats, rat(mu))
    return ExactMatrix.hstack(conv)


def induce_on_quotients(
    phi: ExactMatrix, src_proj: ExactMatrix, dst_proj: ExactMatrix
) -> ExactMatrix:
    """The map induced on quotients by phi, given surjections src_proj and
    dst_proj; requires phi(ker src_proj) inside ker dst_proj."""
    ker = kernel(src_proj)
    for j in range(ker.dim):
        v = ker.basis.col(j)
        if any(x != 0 for x in dst_proj.apply(phi.apply(v))):
            raise InternalInvariantError(
                "map does not descend to the quotients"
            )
    out = dst_proj * phi * right_inverse(src_proj)
    if out * src_proj != dst_proj * phi:
        raise InternalInvariantError("induced map failed its defining identity")
    return out
