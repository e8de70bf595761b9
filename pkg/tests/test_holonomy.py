import random
from fractions import Fraction
from itertools import product

import pytest

from mcvlie.arrangement import (
    Arrangement,
    Line,
    braid_arrangement,
    canonicalize,
    y_closure,
)
from mcvlie.errors import InputError, PreconditionError
from mcvlie.exactcore import ExactMatrix
from mcvlie.holonomy import (
    PfaffianSystem,
    check_integrability,
    is_integrable,
    presentation,
    residue_sum,
    zero_extend,
)

F = Fraction


def kz_residues(strands: int, local_dim: int = 2):
    """Transposition operators on (Q^m)^{⊗k}: residue for H_{ij} swaps the
    i-th and j-th tensor slots."""
    arr = braid_arrangement(strands)
    dim = local_dim**strands
    residues = {}
    for i in range(strands):
        for j in range(i + 1, strands):
            rows = []
            for idx in product(range(local_dim), repeat=strands):
                swapped = list(idx)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                row = [F(0)] * dim
                pos = 0
                for t in swapped:
                    pos = pos * local_dim + t
                row[pos] = F(1)
                rows.append(row)
            # rows[src][dst]: permutation matrices are self-transpose-safe here
            residues[f"H{i + 1}{j + 1}"] = ExactMatrix(rows).transpose()
    return PfaffianSystem(arr, dim, residues)


def scalar_system(arr, values):
    residues = {hid: ExactMatrix([[v]]) for hid, v in values.items()}
    return PfaffianSystem(arr, 1, residues)


THREE_LINES = Arrangement(
    2,
    [
        canonicalize("H1", (1, 0), 0),
        canonicalize("H2", (0, 1), 0),
        canonicalize("H3", (1, -1), 0),
    ],
)


# -- presentation -------------------------------------------------------------


def test_presentation_braid3():
    pres = presentation(braid_arrangement(3))
    assert pres.generators == ("H12", "H13", "H23")
    assert pres.relation_families == (("H12", "H13", "H23"),)


def test_presentation_single_hyperplane():
    arr = Arrangement(2, [canonicalize("H", (1, 0), 0)])
    assert presentation(arr).relation_families == ()


def test_presentation_two_generic_lines():
    arr = Arrangement(2, [canonicalize("H1", (1, 0), 0), canonicalize("H2", (0, 1), 0)])
    pres = presentation(arr)
    assert pres.relation_families == (("H1", "H2"),)


def test_presentation_braid4_is_pure_braid_relation_scheme():
    pres = presentation(braid_arrangement(4))
    fams = set(pres.relation_families)
    assert ("H12", "H34") in fams
    assert ("H13", "H24") in fams
    assert ("H14", "H23") in fams
    assert ("H12", "H13", "H23") in fams
    assert len(fams) == 7


# -- integrability ------------------------------------------------------------


def test_zero_residues_are_integrable():
    sys0 = PfaffianSystem(
        braid_arrangement(3),
        2,
        {hid: ExactMatrix.zeros(2, 2) for hid in braid_arrangement(3).ids()},
    )
    assert is_integrable(sys0)


def test_scalar_residues_are_integrable():
    arr = braid_arrangement(3)
    sysc = PfaffianSystem(
        arr,
        2,
        {hid: ExactMatrix.identity(2).scale(F(k + 1, 3)) for k, hid in enumerate(arr.ids())},
    )
    assert is_integrable(sysc)


def test_violation_carries_commutator():
    arr = braid_arrangement(3)
    e12 = ExactMatrix([[0, 1], [0, 0]])
    e21 = ExactMatrix([[0, 0], [1, 0]])
    sysv = PfaffianSystem(arr, 2, {"H12": e12, "H13": e21, "H23": ExactMatrix.zeros(2, 2)})
    violations = check_integrability(sysv)
    assert violations
    v12 = next(v for v in violations if v.member == "H12")
    assert v12.family == ("H12", "H13", "H23")
    assert v12.commutator == ExactMatrix([[1, 0], [0, -1]])


def test_kz_residues_integrable_braid3_and_braid4():
    assert is_integrable(kz_residues(3))
    assert is_integrable(kz_residues(4))


# -- zero extension -----------------------------------------------------------


def test_zero_extend_identity():
    sys1 = scalar_system(THREE_LINES, {"H1": F(1, 5), "H2": F(1, 2), "H3": F(1, 3)})
    out = zero_extend(sys1, THREE_LINES)
    assert out.residues == sys1.residues


def test_zero_extend_two_axes_to_closure():
    two = Arrangement(2, [canonicalize("H1", (1, 0), 0), canonicalize("H2", (0, 1), 0)])
    sys1 = scalar_system(two, {"H1": F(2, 3), "H2": F(5, 7)})
    closed = y_closure(two, Line.of((1, 1)))
    out = zero_extend(sys1, closed)
    added = [h.id for h in closed if h.id not in ("H1", "H2")]
    assert len(added) == 1
    assert out.residue(added[0]).is_zero()
    assert is_integrable(out)


def test_zero_extend_kz_to_superset():
    sys1 = kz_residues(3)
    extra = canonicalize("X", (1, 0, 0), -1)
    bigger = Arrangement(3, list(sys1.arrangement.hyperplanes) + [extra])
    out = zero_extend(sys1, bigger)
    assert out.residue("X").is_zero()
    assert is_integrable(out)


def test_zero_extend_requires_containment():
    sys1 = scalar_system(THREE_LINES, {"H1": F(1), "H2": F(2), "H3": F(3)})
    two = Arrangement(2, [canonicalize("A", (1, 0), 0), canonicalize("B", (0, 1), 0)])
    with pytest.raises(PreconditionError):
        zero_extend(sys1, two)


def test_zero_extend_never_breaks_integrability_random():
    rng = random.Random(19)
    for _ in range(15):
        dim = rng.randint(2, 3)
        planes = []
        seen = set()
        for k in range(rng.randint(2, 5)):
            normal = tuple(F(rng.randint(-2, 2)) for _ in range(dim))
            if all(x == 0 for x in normal):
                continue
            h = canonicalize(f"H{k}", normal, F(rng.randint(-1, 1)))
            if h.key in seen:
                continue
            seen.add(h.key)
            planes.append(h)
        if not planes:
            continue
        arr = Arrangement(dim, planes)
        # commuting residues: polynomials in one fixed matrix are integrable
        # over any arrangement
        m = ExactMatrix([[F(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)])
        residues = {}
        for h in arr:
            a, b = F(rng.randint(-2, 2)), F(rng.randint(-2, 2))
            residues[h.id] = m.scale(a).add_scaled_identity(b)
        sys1 = PfaffianSystem(arr, 2, residues)
        assert is_integrable(sys1)
        d = [F(rng.randint(-1, 1)) for _ in range(dim)]
        if all(x == 0 for x in d):
            d[0] = F(1)
        closed = y_closure(arr, Line.of(d))
        assert is_integrable(zero_extend(sys1, closed))


# -- residue sums -------------------------------------------------------------


def test_residue_sum_empty_subset_is_zero():
    sys1 = scalar_system(THREE_LINES, {"H1": F(1), "H2": F(2), "H3": F(3)})
    assert residue_sum(sys1, []) == ExactMatrix.zeros(1, 1)


def test_residue_sum_all_scalars():
    sys1 = scalar_system(THREE_LINES, {"H1": F(1, 5), "H2": F(1, 2), "H3": F(1, 3)})
    assert residue_sum(sys1, ["H1", "H2", "H3"]) == ExactMatrix([[F(31, 30)]])


def test_residue_sum_subset_and_unknown_id():
    sys1 = scalar_system(THREE_LINES, {"H1": F(1), "H2": F(2), "H3": F(3)})
    assert residue_sum(sys1, ["H1", "H3"]) == ExactMatrix([[4]])
    with pytest.raises(InputError):
        residue_sum(sys1, ["H9"])
