"""Dualization between sparse torus systems and master-function systems.

Either side determines the other up to unimodular coordinate changes: the
sparse support becomes the quotient data for the weights, the diagonalized
coefficient rows become degree-one forms, and back. A GalePair carries both
systems plus the witness linking their coordinates; check_gale_pair verifies
every pairing condition exactly and reports rather than throws.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DependentRowsError, NotEssentialError, NotPrimitiveError
from .lattice import (
    IntMatrix,
    WeightBasis,
    kernel_basis,
    quotient_images,
    saturation_index,
    smith_diagonal,
)
from .ratlinalg import right_kernel, row_space_equal, rref
from .systems import (
    Arrangement,
    LinearForm,
    MasterSystem,
    SparseSystem,
    diagonalize,
    is_essential,
    master_variable_names,
    monomial_string,
    torus_variable_names,
)


@dataclass(frozen=True)
class GaleWitness:
    """Coordinate bookkeeping certifying a pair.

    ``linear_forms``: the num_equations relation rows over (1, z_1..z_k);
    pulled back along the monomial map they give back the sparse system, and
    composed with the forms they vanish identically.

    ``z_support_columns``: permutation sending z index (0-based) to the column
    of the sparse support holding that coordinate's monomial. Master form i
    always corresponds to z_{i+1}.

    ``z_monomials``: rendering of each z coordinate's monomial, cosmetic.
    """

    linear_forms: tuple
    z_support_columns: tuple
    z_monomials: tuple


@dataclass(frozen=True)
class GalePair:
    poly: SparseSystem
    master: MasterSystem
    witness: GaleWitness


@dataclass(frozen=True)
class PairCheck:
    """Exact verification results for a GalePair; nothing here throws."""

    shapes_consistent: bool
    support_primitive: bool
    support_index: int
    weights_primitive: bool
    weight_index: int
    annihilates: bool
    forms_essential: bool
    relations_vanish: bool
    spans_match: bool

    @property
    def all_pass(self):
        return (
            self.shapes_consistent
            and self.support_primitive
            and self.weights_primitive
            and self.annihilates
            and self.forms_essential
            and self.relations_vanish
            and self.spans_match
        )

    def failures(self):
        names = [
            "shapes_consistent",
            "support_primitive",
            "weights_primitive",
            "annihilates",
            "forms_essential",
            "relations_vanish",
            "spans_match",
        ]
        return tuple(n for n in names if not getattr(self, n))


def _support_lattice_divisors(support):
    """Smith divisors of the support's column lattice inside Z^torus_dim."""
    return smith_diagonal(support.matrix)


def require_support_primitive(support):
    """Raise unless the support columns generate all of Z^torus_dim."""
    divisors = _support_lattice_divisors(support)
    if len(divisors) < support.shape.torus_dim:
        raise DependentRowsError(
            "support columns do not span the variable space over Q"
        )
    index = 1
    for d in divisors:
        index *= d
    if index != 1:
        raise NotPrimitiveError(index, what="support lattice")


def _short_lattice_basis(h):
    """Deterministic short basis of the row lattice of an HNF matrix.

    Enumerates small integer combinations of the rows, sorts by squared norm
    then lexicographic order, and greedily keeps vectors whose span stays a
    direct summand of the lattice. Falls back to the input rows when the
    bounded search cannot complete a basis (it always can in practice at desk
    scale). Output rows are sign-normalized (first nonzero positive) and
    ordered by (squared norm, lex); the row lattice is unchanged.
    """
    l, k = h.rows, h.cols
    if l == 0:
        return h
    reach = 3
    candidates = []
    for combo in product(range(-reach, reach + 1), repeat=l):
        if not any(combo):
            continue
        vec = tuple(
            sum(combo[i] * h.at(i, j) for i in range(l)) for j in range(k)
        )
        norm2 = sum(x * x for x in vec)
        candidates.append((norm2, vec, combo))
    candidates.sort(key=lambda item: (item[0], item[1]))

    picked_combos = []
    picked_vectors = []
    for _, vec, combo in candidates:
        if len(picked_vectors) == l:
            break
        trial = picked_combos + [list(combo)]
        try:
            if saturation_index(IntMatrix.from_rows(trial, cols=l)) != 1:
                continue
        except DependentRowsError:
            continue
        picked_combos.append(list(combo))
        picked_vectors.append(list(vec))

    rows = picked_vectors if len(picked_vectors) == l else h.to_rows()
    normalized = []
    for row in rows:
        lead = next(x for x in row if x != 0)
        normalized.append([-x for x in row] if lead < 0 else list(row))
    normalized.sort(key=lambda r: (sum(x * x for x in r), r))
    return IntMatrix.from_rows(normalized, cols=k)


def dualize_poly_to_master(system):
    """Master-function system cut out by the same scheme as a sparse system.

    Diagonalizes on a deterministic pivot set, reads the pivot equations as
    degree-one forms in new variables (one per non-pivot monomial), appends
    the coordinate forms, and takes a reduced basis of the support's relation
    lattice as the weights. The z-coordinate order is pivots then non-pivots,
    each in stored support order.
    """
    require_support_primitive(system.support)
    diag = diagonalize(system)
    shape = system.shape
    z_cols = list(diag.pivots) + list(diag.nonpivots)

    names = master_variable_names(shape.master_dim)
    forms = [LinearForm(rhs.constant, rhs.coeffs) for rhs in diag.rhs]
    for t in range(shape.master_dim):
        forms.append(
            LinearForm(0, tuple(1 if j == t else 0 for j in range(shape.master_dim)))
        )
    arrangement = Arrangement(shape.master_dim, tuple(forms), names)

    z_support = system.support.matrix.submatrix_columns(z_cols)
    weights = WeightBasis(shape, _short_lattice_basis(kernel_basis(z_support)))
    master = MasterSystem(arrangement, weights)

    k = shape.num_forms
    relation_rows = []
    for i in range(shape.num_equations):
        row = [Fraction(0)] * (k + 1)
        row[0] = -diag.rhs[i].constant
        row[i + 1] = Fraction(1)
        for t, c in enumerate(diag.rhs[i].coeffs):
            row[shape.num_equations + 1 + t] = -c
        relation_rows.append(tuple(row))
    monomials = system.monomial_strings()
    witness = GaleWitness(
        tuple(relation_rows),
        tuple(z_cols),
        tuple(monomials[j] for j in z_cols),
    )
    pair = GalePair(system, master, witness)
    check = check_gale_pair(pair)
    assert check.all_pass, f"dualization produced an inconsistent pair: {check.failures()}"
    return pair


def dualize_master_to_poly(master):
    """Sparse torus system cut out by the same scheme as a master system.

    The support is the quotient-image matrix of the weights; the coefficient
    rows are the reduced basis of linear relations among 1 and the forms.
    """
    shape = master.shape
    index = saturation_index(master.weights.matrix)
    if index != 1:
        raise NotPrimitiveError(index, what="weight lattice")
    if not is_essential(master.arrangement):
        raise NotEssentialError(
            "forms plus the constant do not span degree one"
        )
    images = quotient_images(master.weights)

    ambient = shape.master_dim
    stacked = [[Fraction(1)] + [f.constant for f in master.arrangement.forms]]
    for r in range(ambient):
        stacked.append([Fraction(0)] + [f.coeffs[r] for f in master.arrangement.forms])
    relations = right_kernel(stacked)
    reduced, _ = rref(relations)
    assert len(reduced) == shape.num_equations, "relation count disagrees with shape; bug"

    coefficients = [tuple(row) for row in reduced]
    names = torus_variable_names(shape.torus_dim)
    poly = SparseSystem(images, coefficients, names)

    monomials = tuple(
        monomial_string(images.exponent(j), names) for j in range(shape.num_forms)
    )
    witness = GaleWitness(
        tuple(tuple(row) for row in reduced),
        tuple(range(shape.num_forms)),
        monomials,
    )
    pair = GalePair(poly, master, witness)
    check = check_gale_pair(pair)
    assert check.all_pass, f"dualization produced an inconsistent pair: {check.failures()}"
    return pair


def saturate_weights(master):
    """Same arrangement over the saturation of the weight row lattice.

    A double application of kernel_basis lands on the smallest primitive
    lattice containing the rows. No-op (up to basis choice) when the weights
    are already primitive; on an index-d sublattice the returned system has
    fewer solutions than the original, which is how verification surfaces
    non-primitive inputs as a count mismatch instead of an exception.
    """
    sat = kernel_basis(kernel_basis(master.weights.matrix))
    return MasterSystem(master.arrangement, WeightBasis(master.shape, sat))


def check_gale_pair(pair):
    """Exact certification of every pairing condition; returns a PairCheck."""
    poly = pair.poly
    master = pair.master
    witness = pair.witness
    shape = poly.shape
    k = shape.num_forms

    shapes_consistent = (
        shape == master.shape
        and sorted(witness.z_support_columns) == list(range(k))
        and len(witness.linear_forms) == shape.num_equations
        and all(len(row) == k + 1 for row in witness.linear_forms)
        and len(witness.z_monomials) == k
    )

    divisors = _support_lattice_divisors(poly.support)
    support_full_rank = len(divisors) == shape.torus_dim
    support_index = 0
    if support_full_rank:
        support_index = 1
        for d in divisors:
            support_index *= d
    support_primitive = support_full_rank and support_index == 1

    weight_divisors = smith_diagonal(master.weights.matrix)
    weight_full_rank = len(weight_divisors) == shape.num_weights
    weight_index = 0
    if weight_full_rank:
        weight_index = 1
        for d in weight_divisors:
            weight_index *= d
    weights_primitive = weight_full_rank and weight_index == 1

    annihilates = False
    if shapes_consistent:
        z_support = poly.support.matrix.submatrix_columns(witness.z_support_columns)
        annihilates = (z_support @ master.weights.matrix.transpose()).is_zero()

    forms_essential = is_essential(master.arrangement)

    relations_vanish = True
    forms = master.arrangement.forms
    if shapes_consistent:
        for row in witness.linear_forms:
            constant = row[0] + sum(row[i + 1] * forms[i].constant for i in range(k))
            gradient = [
                sum(row[i + 1] * forms[i].coeffs[r] for i in range(k))
                for r in range(shape.master_dim)
            ]
            if constant != 0 or any(g != 0 for g in gradient):
                relations_vanish = False
                break
    else:
        relations_vanish = False

    spans_match = False
    if shapes_consistent:
        permuted = [
            [row[0]] + [row[col + 1] for col in witness.z_support_columns]
            for row in poly.coefficients
        ]
        spans_match = row_space_equal(
            [list(row) for row in witness.linear_forms], permuted
        )

    return PairCheck(
        shapes_consistent=shapes_consistent,
        support_primitive=support_primitive,
        support_index=support_index,
        weights_primitive=weights_primitive,
        weight_index=weight_index,
        annihilates=annihilates,
        forms_essential=forms_essential,
        relations_vanish=relations_vanish,
        spans_match=spans_match,
    )
