"""System models for both sides of the duality.

Sparse Laurent polynomial systems on the torus, hyperplane arrangements with
integer weights on the arrangement complement, exact diagonalization of the
sparse side, and the binomial clearing / constant absorption operations on the
master side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DependentRowsError,
    DependentWeightsError,
    NoPivotError,
    NoRationalScalingError,
    NotEssentialError,
)
from .lattice import ExponentMatrix, IntMatrix, SystemShape, WeightBasis, solve_integer
from .polynomials import Poly
from .ratlinalg import frac_rows, mat_det, mat_inverse, mat_mul, mat_rank, solve_mod2


def torus_variable_names(dim):
    if dim <= 3:
        return tuple("xyz"[:dim])
    return tuple(f"x{i + 1}" for i in range(dim))


def master_variable_names(dim):
    if dim == 2:
        return ("s", "t")
    return tuple(f"y{i + 1}" for i in range(dim))


def monomial_string(exponents, names):
    """Render an integer exponent vector as a Laurent monomial."""
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e != 0:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class LinearForm:
    """Degree-one function constant + sum(coeffs[i] * y_i)."""

    constant: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def evaluate(self, point):
        total = self.constant
        for c, x in zip(self.coeffs, point):
            total = total + c * x
        return total

    def as_poly(self):
        return Poly.linear(self.constant, self.coeffs)

    def is_proportional_to(self, other):
        return _proportional((self.constant, *self.coeffs), (other.constant, *other.coeffs))

    def render(self, names):
        return self.as_poly().to_string(names)


def _proportional(a, b):
    """Whether two vectors are scalar multiples of each other (either order)."""
    pivot = next((i for i, v in enumerate(a) if v != 0), None)
    if pivot is None:
        return all(v == 0 for v in b)
    if b[pivot] == 0:
        return False
    ratio = Fraction(b[pivot]) / Fraction(a[pivot])
    return all(Fraction(y) == ratio * Fraction(x) for x, y in zip(a, b))


@dataclass(frozen=True)
class Arrangement:
    """Finitely many pairwise non-proportional degree-one forms."""

    ambient_dim: int
    forms: tuple
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) != self.ambient_dim:
            raise ValueError("variable names must match the ambient dimension")
        for i, f in enumerate(self.forms):
            if len(f.coeffs) != self.ambient_dim:
                raise ValueError(f"form {i} has wrong arity")
            if all(c == 0 for c in f.coeffs):
                raise ValueError(f"form {i} has zero gradient; not a hyperplane")
        for i, j in combinations(range(len(self.forms)), 2):
            a = (self.forms[i].constant, *self.forms[i].coeffs)
            b = (self.forms[j].constant, *self.forms[j].coeffs)
            if _proportional(a, b):
                raise ValueError(f"forms {i} and {j} are proportional")

    def evaluate(self, point):
        return tuple(f.evaluate(point) for f in self.forms)


def is_essential(arrangement):
    """Whether the forms together with the constant 1 span all of degree one.

    Equivalent to the gradients spanning the ambient space; stated and checked
    on the stacked (constant | gradient) rows.
    """
    rows = [[Fraction(1)] + [Fraction(0)] * arrangement.ambient_dim]
    for f in arrangement.forms:
        rows.append([f.constant, *f.coeffs])
    return mat_rank(rows) == arrangement.ambient_dim + 1


@dataclass(frozen=True)
class SparseSystem:
    """Laurent polynomial system with shared support on the torus.

    ``coefficients`` is num_equations x (num_forms + 1) with column 0 the
    constant term; column j + 1 multiplies the monomial whose exponent is
    support column j.
    """

    support: ExponentMatrix
    coefficients: tuple
    variables: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "coefficients",
            tuple(tuple(Fraction(c) for c in row) for row in self.coefficients),
        )
        object.__setattr__(self, "variables", tuple(self.variables))
        shape = self.support.shape
        if len(self.coefficients) != shape.num_equations:
            raise ValueError(
                f"expected {shape.num_equations} coefficient rows, got {len(self.coefficients)}"
            )
        width = shape.num_forms + 1
        if any(len(row) != width for row in self.coefficients):
            raise ValueError(f"coefficient rows must have length {width}")
        if len(self.variables) != shape.torus_dim:
            raise ValueError("variable names must match the torus dimension")
        cols = self.support.exponents()
        zero = tuple([0] * shape.torus_dim)
        if any(c == zero for c in cols):
            raise ValueError("support columns must be nonzero; the constant slot is implicit")
        if len(set(cols)) != len(cols):
            raise ValueError("support columns must be pairwise distinct")
        if mat_rank(self.coefficients) != shape.num_equations:
            raise DependentRowsError("coefficient rows are dependent over Q")

    @property
    def shape(self):
        return self.support.shape

    def monomial_strings(self):
        return tuple(monomial_string(e, self.variables) for e in self.support.exponents())

    def equation_strings(self):
        monos = self.monomial_strings()
        out = []
        for row in self.coefficients:
            parts = [(row[j + 1], monos[j]) for j in range(len(monos)) if row[j + 1] != 0]
            if row[0] != 0:
                parts.append((row[0], "1"))
            if not parts:
                out.append("0 = 0")
                continue
            pieces = []
            for c, mono in parts:
                mag = abs(c)
                if mono == "1":
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
                pieces.append(("-" if c < 0 else "+", body))
            sign0, body0 = pieces[0]
            text = ("-" if sign0 == "-" else "") + body0
            for sign, body in pieces[1:]:
                text += f" {sign} {body}"
            out.append(f"{text} = 0")
        return tuple(out)


def normalize_support(support_vectors, coefficient_rows, variables=None):
    """Canonicalize raw support data into a SparseSystem.

    Translates the support so the zero exponent is present (no-op when it
    already is, otherwise by the lexicographically least vector, which makes
    the operation idempotent), merges duplicate exponent columns by summing
    their coefficients, and drops non-constant columns whose merged
    coefficients are all zero.
    """
    vectors = [tuple(int(v) for v in vec) for vec in support_vectors]
    if not vectors:
        raise ValueError("empty support")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("support vectors of mixed dimension")
    rows = [[Fraction(c) for c in row] for row in coefficient_rows]
    if any(len(r) != len(vectors) for r in rows):
        raise ValueError("coefficient rows must align with the support columns")

    zero = tuple([0] * dim)
    if zero not in vectors:
        shift = min(vectors)
        vectors = [tuple(a - b for a, b in zip(v, shift)) for v in vectors]

    merged = {}
    order = []
    for j, vec in enumerate(vectors):
        if vec not in merged:
            merged[vec] = [Fraction(0)] * len(rows)
            order.append(vec)
        for i, row in enumerate(rows):
            merged[vec][i] += row[j]

    constant = merged.pop(zero, [Fraction(0)] * len(rows))
    order = [v for v in order if v != zero and any(merged[v])]

    n = len(rows)
    k = len(order)
    m = dim - n
    l = k - dim
    if m < 0:
        raise ValueError(f"more equations ({n}) than variables ({dim})")
    if l <= 0:
        raise ValueError(
            f"support has {k} distinct nonzero columns for dimension {dim}; "
            "need strictly more monomials than variables"
        )
    shape = SystemShape(l, m, n)
    support = ExponentMatrix(shape, IntMatrix.from_rows([list(v) for v in order], cols=dim).transpose())
    coeffs = [
        [constant[i]] + [merged[v][i] for v in order]
        for i in range(n)
    ]
    names = tuple(variables) if variables else torus_variable_names(dim)
    return SparseSystem(support, coeffs, names)


@dataclass(frozen=True)
class DiagonalizedSystem:
    """Row-equivalent form expressing each pivot monomial in the others.

    ``transform`` is the invertible rational matrix with
    transform @ base.coefficients giving the diagonalized coefficient rows
    (identity on the pivot columns). ``rhs[i]`` expresses the value of pivot
    monomial pivots[i] as a degree-one function of the non-pivot monomial
    values, ordered by ``nonpivots``.
    """

    base: SparseSystem
    pivots: tuple
    nonpivots: tuple
    transform: tuple
    rhs: tuple

    def diagonal_coefficients(self):
        return tuple(
            tuple(row) for row in mat_mul([list(r) for r in self.transform],
                                          [list(r) for r in self.base.coefficients])
        )


def diagonalize(system):
    """Solve for a pivot set of monomials in terms of the rest.

    The pivot set is chosen deterministically: candidate sets of
    num_equations support columns are ordered lexicographically by their
    sorted tuples of exponent vectors, and the first whose coefficient
    submatrix is invertible wins. The choice therefore does not depend on
    storage order of the support. Raises NoPivotError when no candidate
    submatrix is invertible.
    """
    shape = system.shape
    n = shape.num_equations
    k = shape.num_forms
    by_vector = sorted(range(k), key=lambda j: system.support.exponent(j))
    chosen = None
    for subset in combinations(by_vector, n):
        sub = [[system.coefficients[i][j + 1] for j in subset] for i in range(n)]
        if mat_det(sub) != 0:
            chosen = subset
            break
    if chosen is None:
        raise NoPivotError("no invertible coefficient submatrix on any support subset")
    pivots = tuple(sorted(chosen))
    nonpivots = tuple(j for j in range(k) if j not in pivots)
    sub = [[system.coefficients[i][j + 1] for j in pivots] for i in range(n)]
    transform = mat_inverse(sub)
    diag = mat_mul(transform, [list(r) for r in system.coefficients])
    rhs = []
    for i in range(n):
        constant = -diag[i][0]
        coeffs = [-diag[i][j + 1] for j in nonpivots]
        rhs.append(LinearForm(constant, coeffs))
    return DiagonalizedSystem(
        base=system,
        pivots=pivots,
        nonpivots=nonpivots,
        transform=tuple(tuple(row) for row in transform),
        rhs=tuple(rhs),
    )


@dataclass(frozen=True)
class MasterSystem:
    """Arrangement plus integer weights: solutions are the points of the
    complement where every weighted product of the forms equals 1."""

    arrangement: Arrangement
    weights: WeightBasis

    def __post_init__(self):
        shape = self.weights.shape
        if shape.master_dim != self.arrangement.ambient_dim:
            raise ValueError(
                f"weights expect ambient dimension {shape.master_dim}, "
                f"arrangement has {self.arrangement.ambient_dim}"
            )
        if shape.num_forms != len(self.arrangement.forms):
            raise ValueError(
                f"weights have {shape.num_forms} coordinates, "
                f"arrangement has {len(self.arrangement.forms)} forms"
            )
        if mat_rank(frac_rows(self.weights.matrix.to_rows())) != shape.num_weights:
            raise DependentWeightsError("weight rows are dependent over Q")

    @property
    def shape(self):
        return self.weights.shape

    def residual(self, point):
        """max_j |product_i p_i(point)^{weight_ji} - 1| at a complement point."""
        values = self.arrangement.evaluate(point)
        worst = 0.0
        for j in range(self.shape.num_weights):
            prod = complex(1)
            for v, e in zip(values, self.weights.weight(j)):
                if e:
                    prod *= complex(v) ** e
            worst = max(worst, abs(prod - 1))
        return worst


@dataclass(frozen=True)
class ClearedBinomial:
    """One weight row split into numerator and denominator exponents.

    plus[i] = max(weight[i], 0), minus[i] = max(-weight[i], 0); the cleared
    equation is product(p_i^plus) - product(p_i^minus) = 0.
    """

    plus: tuple
    minus: tuple

    def expand_plus(self, arrangement):
        return _form_power_product(arrangement, self.plus)

    def expand_minus(self, arrangement):
        return _form_power_product(arrangement, self.minus)

    def expand_difference(self, arrangement):
        return self.expand_plus(arrangement) - self.expand_minus(arrangement)


def _form_power_product(arrangement, exponents):
    out = Poly.constant(arrangement.ambient_dim, 1)
    for form, e in zip(arrangement.forms, exponents):
        if e:
            out = out * form.as_poly() ** e
    return out


def clear_denominators(master, row):
    """ClearedBinomial for one weight row of a master system."""
    w = master.weights.weight(row)
    plus = tuple(max(e, 0) for e in w)
    minus = tuple(max(-e, 0) for e in w)
    return ClearedBinomial(plus, minus)


def _factor_rational(value):
    """Sign and prime exponent map of a nonzero rational, by trial division."""
    value = Fraction(value)
    if value == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if value < 0 else 1
    exps = {}

    def accumulate(n, direction):
        n = abs(int(n))
        p = 2
        while p * p <= n:
            while n % p == 0:
                exps[p] = exps.get(p, 0) + direction
                n //= p
            p += 1 if p == 2 else 2
        if n > 1:
            exps[n] = exps.get(n, 0) + direction

    accumulate(value.numerator, 1)
    accumulate(value.denominator, -1)
    return sign, {p: e for p, e in exps.items() if e}


def absorb_constants(master, targets):
    """Rescale the forms so that solving (scaled forms)^weights = 1 is the same
    as solving (original forms)^weights = targets.

    Finds nonzero rationals lambda_i with product(lambda_i^{weight_ji}) equal
    to 1/target_j for every row, one prime at a time plus a sign system over
    GF(2). Raises NoRationalScalingError when no rational rescaling exists
    (impossible for a primitive weight basis, possible otherwise).
    """
    shape = master.shape
    targets = [Fraction(t) for t in targets]
    if len(targets) != shape.num_weights:
        raise ValueError(f"expected {shape.num_weights} targets")
    if any(t == 0 for t in targets):
        raise ValueError("targets must be nonzero")

    factored = [_factor_rational(t) for t in targets]
    primes = sorted({p for _, exps in factored for p in exps})
    k = shape.num_forms
    prime_exponents = {}
    for p in primes:
        rhs = [-exps.get(p, 0) for _, exps in factored]
        solution = solve_integer(master.weights.matrix, rhs)
        if solution is None:
            raise NoRationalScalingError(
                f"no integer exponent vector absorbs prime {p}"
            )
        prime_exponents[p] = solution

    sign_rhs = [0 if sign > 0 else 1 for sign, _ in factored]
    sign_solution = solve_mod2(master.weights.matrix.to_rows(), sign_rhs)
    if sign_solution is None:
        raise NoRationalScalingError("no sign pattern absorbs the target signs")

    scales = []
    for i in range(k):
        lam = Fraction(-1 if sign_solution[i] else 1)
        for p in primes:
            e = prime_exponents[p][i]
            lam *= Fraction(p) ** e
        scales.append(lam)

    for j in range(shape.num_weights):
        check = Fraction(1)
        for lam, e in zip(scales, master.weights.weight(j)):
            check *= lam**e
        assert check * targets[j] == 1, "scaling verification failed; bug"

    forms = tuple(
        LinearForm(f.constant * lam, tuple(c * lam for c in f.coeffs))
        for f, lam in zip(master.arrangement.forms, scales)
    )
    arrangement = Arrangement(master.arrangement.ambient_dim, forms, master.arrangement.variables)
    return MasterSystem(arrangement, master.weights)


def evaluate_phi(support, point):
    """Monomial-map values x^(support column j) for each j.

    Exact over Fraction when every coordinate is rational, complex otherwise.
    Raises ValueError on a zero coordinate (the map lives on the torus).
    """
    exact = all(isinstance(x, (int, Fraction)) for x in point)
    if exact:
        xs = [Fraction(x) for x in point]
        if any(x == 0 for x in xs):
            raise ValueError("point is not in the torus (zero coordinate)")
    else:
        xs = [complex(x) for x in point]
        if any(x == 0 for x in xs):
            raise ValueError("point is not in the torus (zero coordinate)")
    out = []
    for j in range(support.matrix.cols):
        value = Fraction(1) if exact else complex(1)
        for x, e in zip(xs, support.exponent(j)):
            if e:
                value = value * x**e
        out.append(value)
    return tuple(out)


def evaluate_psi(arrangement, point):
    """Values of every arrangement form at a point; exact over Fraction."""
    return arrangement.evaluate(point)


def in_torus(point, tol=0):
    return all(abs(x) > tol for x in point)


def in_complement(arrangement, point, tol=0):
    return all(abs(v) > tol for v in arrangement.evaluate(point))


def cleared_polynomials(system):
    """Laurent rows as honest polynomials.

    Each row is multiplied by the minimal monomial clearing its negative
    exponents; torus solutions are unchanged, and any extra roots land on
    coordinate hyperplanes where the membership filter discards them.
    """
    dim = system.shape.torus_dim
    out = []
    for row in system.coefficients:
        involved = []
        if row[0] != 0:
            involved.append((tuple([0] * dim), row[0]))
        for j in range(system.shape.num_forms):
            if row[j + 1] != 0:
                involved.append((system.support.exponent(j), row[j + 1]))
        if not involved:
            raise ValueError("identically zero equation")
        shift = [min(0, min(e[v] for e, _ in involved)) for v in range(dim)]
        terms = {}
        for e, c in involved:
            mono = tuple(ev - sv for ev, sv in zip(e, shift))
            terms[mono] = terms.get(mono, Fraction(0)) + c
        out.append(Poly(dim, terms))
    return out
