"""Sparse multivariate polynomials over exact rationals.

Just enough arithmetic for this package: ring operations, exact and complex
evaluation, derivatives, and the univariate helpers (gcd, squarefree
decomposition, interpolation, Sylvester resultants) the bivariate solver needs.
General polynomial algebra (factoring, multivariate division) is out of scope.
"""

from __future__ import annotations

from fractions import Fraction

from .ratlinalg import det_bareiss_int, mat_det


class Poly:
    """Immutable sparse polynomial with Fraction coefficients.

    Terms map exponent tuples (nonnegative ints, one per variable) to nonzero
    Fraction coefficients. Laurent exponents are not allowed here; callers
    clear denominators first.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}; clear denominators first")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
                if clean[mono] == 0:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, index, nvars):
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def linear(cls, constant, coeffs):
        """Degree-one polynomial constant + sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {(0,) * n: Fraction(constant)}
        for i, c in enumerate(coeffs):
            mono = tuple(1 if j == i else 0 for j in range(n))
            terms[mono] = Fraction(c)
        return cls(n, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return Poly.constant(self.nvars, other)

    def scale(self, factor):
        factor = Fraction(factor)
        return Poly(self.nvars, {m: c * factor for m, c in self.terms.items()})

    def degree(self, var=None):
        """Total degree, or degree in one variable. Zero polynomial gives -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        return max(m[var] for m in self.terms)

    def derivative(self, var):
        out = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e:
                lowered = tuple(x - 1 if i == var else x for i, x in enumerate(mono))
                out[lowered] = out.get(lowered, Fraction(0)) + c * e
        return Poly(self.nvars, out)

    def eval_exact(self, point):
        """Evaluate at a tuple of Fractions."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def eval_complex(self, point):
        total = 0j
        for mono, c in self.terms.items():
            v = complex(c)
            for x, e in zip(point, mono):
                if e:
                    v *= complex(x) ** e
            total += v
        return total

    def coefficients_in(self, var):
        """Coefficients as polynomials in the remaining variables.

        Returns a dict exponent -> Poly where the returned polynomials have the
        same arity with the chosen variable's exponent zeroed out.
        """
        buckets = {}
        for mono, c in self.terms.items():
            e = mono[var]
            rest = tuple(0 if i == var else x for i, x in enumerate(mono))
            buckets.setdefault(e, {})[rest] = c
        return {e: Poly(self.nvars, terms) for e, terms in buckets.items()}

    def max_abs_coefficient(self):
        if not self.terms:
            return Fraction(0)
        return max(abs(c) for c in self.terms.values())

    def to_string(self, names):
        """Deterministic human-readable rendering."""
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=lambda m: (-sum(m), tuple(-e for e in m)))
        parts = []
        for mono in monos:
            c = self.terms[mono]
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.to_string(names)})"


def poly_equal_up_to_scale(a, b):
    """Whether a == r * b for a single nonzero rational r. Zero matches zero."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if set(a.terms) != set(b.terms):
        return False
    mono = next(iter(a.terms))
    ratio = a.terms[mono] / b.terms[mono]
    return all(c == ratio * b.terms[m] for m, c in a.terms.items())


# ---------------------------------------------------------------------------
# univariate helpers: dense coefficient lists, ascending order, Fraction entries


def utrim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def udeg(coeffs):
    return len(utrim(coeffs)) - 1


def ueval(coeffs, x):
    total = Fraction(0) if isinstance(x, (int, Fraction)) else 0j
    for c in reversed(coeffs):
        total = total * x + c
    return total


def uderiv(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:]


def umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return utrim(out)


def udivmod(a, b):
    """Exact field division with remainder."""
    a = utrim(a)
    b = utrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = [Fraction(c) for c in a]
    inv = 1 / Fraction(b[-1])
    while len(r) >= len(b):
        factor = r[-1] * inv
        shift = len(r) - len(b)
        q[shift] = factor
        for i, cb in enumerate(b):
            r[shift + i] -= factor * cb
        r = utrim(r)
        if not r:
            break
    return utrim(q), r


def _int_content(coeffs):
    g = 0
    for c in coeffs:
        g = _gcd(g, abs(c))
    return g or 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _to_int_primitive(coeffs):
    """Clear denominators and divide out integer content."""
    c = utrim([Fraction(v) for v in coeffs])
    if not c:
        return []
    denom = 1
    for v in c:
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    ints = [int(v * denom) for v in c]
    content = _int_content(ints)
    return [v // content for v in ints]


def _prem_int(f, g):
    """Pseudo-remainder of integer coefficient lists, up to lc(g) powers."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(r) > dg:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [lg * c for c in r]
        for i, cg in enumerate(g):
            r[shift + i] -= lr * cg
        while r and r[-1] == 0:
            r.pop()
    return r


def ugcd(a, b):
    """Monic gcd over Q via a primitive pseudo-remainder sequence.

    Taking primitive parts between steps keeps integer coefficient growth
    manageable; the result is normalized monic so gcds are canonical.
    """
    f = _to_int_primitive(a)
    g = _to_int_primitive(b)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _prem_int(f, g)
        f, g = g, _to_int_primitive(r)
    if not f:
        return []
    lead = Fraction(f[-1])
    return [Fraction(c) / lead for c in f]


def usquarefree(coeffs):
    """Yun's squarefree decomposition over Q.

    Returns [(factor, multiplicity), ...] with monic squarefree factors of
    positive degree, multiplicities ascending, and
    product(factor^multiplicity) equal to the input up to a constant.
    """
    f = utrim([Fraction(c) for c in coeffs])
    if udeg(f) < 1:
        return []
    fp = uderiv(f)
    a = ugcd(f, fp)
    b, _ = udivmod(f, a)
    c, _ = udivmod(fp, a)
    d = utrim([x - y for x, y in _pad(c, uderiv(b))])
    out = []
    mult = 1
    while udeg(b) >= 1:
        g = ugcd(b, d)
        if udeg(g) >= 1:
            out.append((g, mult))
        b, _ = udivmod(b, g)
        c_next, _ = udivmod(d, g)
        d = utrim([x - y for x, y in _pad(c_next, uderiv(b))])
        mult += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def uinterpolate(points):
    """Coefficients of the unique polynomial through the given (x, y) pairs.

    Newton divided differences, exact over Fraction.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    ys = [Fraction(y) for _, y in points]
    n = len(points)
    coef = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form into dense coefficients
    poly = [Fraction(0)]
    basis = [Fraction(1)]
    for i in range(n):
        for j, b in enumerate(basis):
            if len(poly) <= j:
                poly.append(Fraction(0))
            poly[j] += coef[i] * b
        basis = umul(basis, [-xs[i], Fraction(1)])
    return utrim(poly)


def bivariate_resultant(f, g, eliminate):
    """Sylvester resultant of two bivariate polynomials, exactly.

    Eliminates variable ``eliminate`` (0 or 1) and returns the resultant as a
    dense ascending coefficient list in the other variable. Computed by
    evaluating the Sylvester determinant at integer nodes and interpolating,
    which sidesteps polynomial-entry elimination entirely. The determinant is
    taken of the full-size padded matrix, so the result agrees with the
    resultant of f, g viewed with their generic degrees even at nodes where
    leading coefficients vanish.
    """
    if f.nvars != 2 or g.nvars != 2:
        raise ValueError("resultants here are bivariate only")
    keep = 1 - eliminate
    fc = {e: _univar_in(p, keep) for e, p in f.coefficients_in(eliminate).items()}
    gc = {e: _univar_in(p, keep) for e, p in g.coefficients_in(eliminate).items()}
    d1 = max(fc) if fc else -1
    d2 = max(gc) if gc else -1
    if d1 < 0 or d2 < 0:
        raise ValueError("resultant of a zero polynomial")
    if d1 == 0 and d2 == 0:
        return [Fraction(1)]
    deg_keep_f = max((udeg(c) for c in fc.values()), default=0)
    deg_keep_g = max((udeg(c) for c in gc.values()), default=0)
    bound = d1 * max(deg_keep_g, 0) + d2 * max(deg_keep_f, 0)

    frows = [fc.get(d1 - s, []) for s in range(d1 + 1)]
    grows = [gc.get(d2 - s, []) for s in range(d2 + 1)]
    all_int = all(
        c.denominator == 1 for row in list(frows) + list(grows) for c in row
    )

    size = d1 + d2
    nodes = _integer_nodes(bound + 1)
    values = []
    for t in nodes:
        fvals = [ueval(c, Fraction(t)) for c in frows]
        gvals = [ueval(c, Fraction(t)) for c in grows]
        m = [[Fraction(0)] * size for _ in range(size)]
        for i in range(d2):
            for s, v in enumerate(fvals):
                m[i][i + s] = v
        for i in range(d1):
            for s, v in enumerate(gvals):
                m[d2 + i][i + s] = v
        if all_int:
            det = Fraction(det_bareiss_int([[int(x) for x in row] for row in m]))
        else:
            det = mat_det(m)
        values.append((t, det))
    return uinterpolate(values)


def _integer_nodes(count):
    out = [0]
    v = 1
    while len(out) < count:
        out.append(v)
        if len(out) < count:
            out.append(-v)
        v += 1
    return out[:count]


def _univar_in(p, var):
    """Dense coefficient list of a polynomial that only involves ``var``."""
    out = [Fraction(0)] * (max((m[var] for m in p.terms), default=-1) + 1)
    for mono, c in p.terms.items():
        if any(e and i != var for i, e in enumerate(mono)):
            raise ValueError("polynomial involves more than the requested variable")
        out[mono[var]] = c
    return utrim(out)
