"""Dense univariate polynomials, rational functions, and homogeneous
binary quadratics over a BinaryField.

Polynomials are normalized (no trailing zero coefficients); gcds are
monic.  Quadratics in characteristic 2 are solved through the additive
Artin-Schreier substitution rather than any discriminant formula.
"""

from .errors import FieldMismatchError
from .gf2 import artin_schreier_solve, default_field, embed, identity_embedding


class Poly:
    """A univariate polynomial with FieldElement coefficients (dense)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].mask == 0:
            cs.pop()
        for c in cs:
            if c.field != field:
                raise FieldMismatchError("coefficient from a different field")
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one(),))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def constant(cls, elem):
        return cls(elem.field, (elem,))

    @classmethod
    def from_masks(cls, field, masks):
        return cls(field, tuple(field.element(m) for m in masks))

    # -- basic structure -----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def masks(self):
        return tuple(c.mask for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.masks() == other.masks()
        )

    def __hash__(self):
        return hash((self.field.degree, self.field.modulus, self.masks()))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{hex(c.mask)}*x^{i}" for i, c in enumerate(self.coeffs) if c.mask]
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, (self[i] + other[i] for i in range(n)))

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return Poly.zero(self.field)
            out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a.mask:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b.mask:
                        out[i + j] = out[i + j] + a * b
            return Poly(self.field, out)
        return self.scale(other)

    def scale(self, elem):
        return Poly(self.field, (c * elem for c in self.coeffs))

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero(),) * k + self.coeffs)

    def __pow__(self, e):
        r = Poly.one(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = other.leading().inverse()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.field), self
        quo = [self.field.zero()] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            if c.mask:
                quo[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] + c * b
        return Poly(self.field, quo), Poly(self.field, rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other):
        """Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic."""
        f = self.field
        a, b = self, other
        sa, sb = Poly.one(f), Poly.zero(f)
        ta, tb = Poly.zero(f), Poly.one(f)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        if a.is_zero():
            return a, sa, ta
        inv = a.leading().inverse()
        return a.scale(inv), sa.scale(inv), ta.scale(inv)

    def evaluate(self, x):
        if x.field != self.field:
            raise FieldMismatchError("evaluation point from a different field")
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        # formal derivative; in char 2 the even-degree terms vanish
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            out.append(c if i % 2 else self.field.zero())
        return Poly(self.field, out)

    def map(self, emb):
        if emb.source != self.field:
            raise FieldMismatchError("embedding source does not match polynomial field")
        return Poly(emb.target, (emb(c) for c in self.coeffs))

    def frobenius_coeffs(self):
        """Coefficient-wise squaring (x stays x)."""
        return Poly(self.field, (c * c for c in self.coeffs))

    def root_multiplicity(self, r):
        if self.is_zero():
            raise ValueError("zero polynomial")
        lin = Poly(self.field, (r, self.field.one()))  # x + r
        m = 0
        p = self
        while not p.is_zero():
            q, rem = divmod(p, lin)
            if not rem.is_zero():
                break
            m += 1
            p = q
        return m


def solve_linear(p):
    """The root of a degree-1 polynomial."""
    assert p.degree == 1
    return p[0] / p[1]


def solve_quadratic(p, allow_extension=True):
    """Roots of a degree-2 polynomial over a binary field.

    Returns (roots, field, emb) where roots live in `field` (the input
    field, or its default quadratic extension when the Artin-Schreier
    trace obstructs) and emb maps the input field there.  The roots list
    carries multiplicity (a double root appears twice).
    """
    assert p.degree == 2
    f = p.field
    a, b, c = p[2], p[1], p[0]
    ident = identity_embedding(f)
    if b.mask == 0:
        r = (c / a).sqrt()
        return [r, r], f, ident
    # x = (b/a) z turns the equation into z^2 + z = ac/b^2
    d = a * c / (b * b)
    z, mult = artin_schreier_solve(f, 2, d)
    if mult == 1:
        scale = b / a
        return sorted([scale * z, scale * (z + f.one())], key=lambda e: e.mask), f, ident
    if not allow_extension:
        return [], f, ident
    ext = z.field
    emb = embed(f, ext)
    scale = emb(b / a)
    one = ext.one()
    return sorted([scale * z, scale * (z + one)], key=lambda e: e.mask), ext, emb


def roots_in_field(p):
    """Roots of p that lie in its own coefficient field, with multiplicity."""
    out = []
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree >= 1:
        if p.degree == 1:
            out.append((solve_linear(p), 1))
        elif p.degree == 2:
            roots, fld, _ = solve_quadratic(p, allow_extension=False)
            if fld == p.field:
                seen = {}
                for r in roots:
                    seen[r.mask] = seen.get(r.mask, 0) + 1
                out = [(p.field.element(m), k) for m, k in sorted(seen.items())]
        else:
            for elem in p.field.elements():
                if p.evaluate(elem).mask == 0:
                    out.append((elem, p.root_multiplicity(elem)))
    return out


class RationalFunction:
    """A quotient of polynomials, kept in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise FieldMismatchError("numerator and denominator fields differ")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num, den = num.divexact(g), den.divexact(g)
        lead = den.leading()
        if lead.mask != 1:
            inv = lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, elem):
        return cls(Poly.constant(elem))

    @classmethod
    def x(cls, field):
        return cls(Poly.x(field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __sub__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e):
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        raise TypeError(f"cannot combine RationalFunction with {type(other).__name__}")

    def evaluate(self, x):
        """Value at a point of the coefficient field; None at a pole."""
        d = self.den.evaluate(x)
        if d.mask == 0:
            return None
        return self.num.evaluate(x) / d

    def value_at_infinity(self):
        """Value at x = infinity; None when there is a pole there."""
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero():
            return self.field.zero()
        if dn > dd:
            return None
        if dn < dd:
            return self.field.zero()
        return self.num.leading() / self.den.leading()

    def substitute(self, other):
        """Composition self(other(x)) as a rational function."""
        other = self._coerce(other)
        num_c = _compose_with_fraction(self.num, other.num, other.den)
        den_c = _compose_with_fraction(self.den, other.num, other.den)
        dn, dd = max(self.num.degree, 0), max(self.den.degree, 0)
        if dn >= dd:
            return RationalFunction(num_c, den_c * other.den ** (dn - dd))
        return RationalFunction(num_c * other.den ** (dd - dn), den_c)

    def map(self, emb):
        return RationalFunction(self.num.map(emb), self.den.map(emb))

    def as_poly(self):
        """The numerator, when the reduced denominator is 1."""
        if self.den.degree != 0 or self.den.leading().mask != 1:
            raise ValueError("rational function is not a polynomial")
        return self.num


def _compose_with_fraction(p, num, den):
    """Numerator of p(num/den) over den^deg(p)."""
    f = p.field
    if p.is_zero():
        return Poly.zero(f)
    d = p.degree
    acc = Poly.constant(p.coeffs[-1])
    for i in range(d - 1, -1, -1):
        acc = acc * num + Poly.constant(p.coeffs[i]) * den ** (d - i)
    return acc


class LinearForm:
    """A nonzero linear form p*X + q*Y, normalized so the first nonzero
    coefficient is 1 (projective normalization)."""

    __slots__ = ("p", "q")

    def __init__(self, p, q, normalize=True):
        if p.mask == 0 and q.mask == 0:
            raise ValueError("zero linear form")
        if normalize:
            lead = p if p.mask else q
            inv = lead.inverse()
            p, q = p * inv, q * inv
        self.p = p
        self.q = q

    @property
    def field(self):
        return self.p.field

    def evaluate(self, x, y):
        return self.p * x + self.q * y

    def zero_point(self):
        """The projective zero [X : Y] = [q : p] (characteristic 2)."""
        return (self.q, self.p)

    def proportional(self, other):
        return (self.p * other.q + self.q * other.p).mask == 0

    def map(self, emb):
        return LinearForm(emb(self.p), emb(self.q), normalize=False)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"LinearForm({self.p!r}*X + {self.q!r}*Y)"


class QuadraticForm:
    """A homogeneous binary quadratic a*X^2 + b*XY + c*Y^2."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        if not (a.field == b.field == c.field):
            raise FieldMismatchError("quadratic form coefficients over different fields")
        self.a, self.b, self.c = a, b, c

    @property
    def field(self):
        return self.a.field

    def is_zero(self):
        return not (self.a.mask or self.b.mask or self.c.mask)

    def evaluate(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def map(self, emb):
        return QuadraticForm(emb(self.a), emb(self.b), emb(self.c))

    def proportional(self, other):
        ab = self.a * other.b + other.a * self.b
        ac = self.a * other.c + other.a * self.c
        bc = self.b * other.c + other.b * self.c
        return not (ab.mask or ac.mask or bc.mask)

    def resultant(self, other):
        """Resultant of the two quadratics (characteristic-2 form).

        Zero exactly when the forms share a projective zero over the
        algebraic closure.
        """
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        ac = a1 * c2 + a2 * c1
        return ac * ac + (a1 * b2 + a2 * b1) * (b1 * c2 + b2 * c1)

    def linear_factors(self):
        """Split into two linear forms over the field or its quadratic
        extension: returns (factors, field, emb) with the product matching
        self up to the returned unit scale: self = scale * L1 * L2.
        """
        f = self.field
        if self.is_zero():
            raise ValueError("zero quadratic form")
        if self.a.mask == 0:
            ident = identity_embedding(f)
            if self.b.mask == 0:
                # c*Y^2
                return (
                    (LinearForm(f.zero(), f.one(), normalize=False),) * 2,
                    f,
                    ident,
                    self.c,
                )
            # Y * (b*X + c*Y)
            l1 = LinearForm(f.zero(), f.one(), normalize=False)
            l2 = LinearForm(f.one(), self.c / self.b, normalize=False)
            return (l1, l2), f, ident, self.b
        dehom = Poly(f, (self.c, self.b, self.a))
        roots, fld, emb = solve_quadratic(dehom)
        l1 = LinearForm(fld.one(), roots[0], normalize=False)
        l2 = LinearForm(fld.one(), roots[1], normalize=False)
        return (l1, l2), fld, emb, self.a

    def divide_by_linear(self, lf):
        """Residual linear form l with self = lf * l, or None if lf does not
        divide self exactly."""
        f = self.field
        p, q = lf.p, lf.q
        if p.mask:
            u = self.a / p
            v = (self.b + q * u) / p
            if q * v == self.c:
                return LinearForm(u, v, normalize=False)
            return None
        if self.a.mask:
            return None
        u = self.b / q
        v = self.c / q
        return LinearForm(u, v, normalize=False)


def common_linear_factor(h1, h2):
    """Common linear factor of two binary quadratics that share a projective zero.

    Returns (L, l1, l2, field, emb) with h1 = L*l1 and h2 = L*l2 exactly,
    where the forms live over `field` (the input field or its quadratic
    extension) and emb maps the input field there.  L is normalized so its
    first nonzero coefficient is 1.

    Raises ValueError when the forms are proportional (every factor is
    common, so "the" factor is ill-defined) or share no projective zero
    (detected by the resultant).
    """
    if h1.field != h2.field:
        raise FieldMismatchError("quadratics over different fields")
    if h1.is_zero() or h2.is_zero():
        raise ValueError("zero quadratic form")
    if h1.proportional(h2):
        raise ValueError("proportional quadratics: common factor is not unique")
    if h1.resultant(h2).mask != 0:
        raise ValueError("no common factor: the quadratics share no projective zero")
    factors, fld, emb, scale = h1.linear_factors()
    h2e = h2.map(emb) if fld != h1.field else h2
    h1e = h1.map(emb) if fld != h1.field else h1
    seen = []
    for cand in factors:
        cn = LinearForm(cand.p, cand.q)  # normalized
        if any(cn == s for s in seen):
            continue
        seen.append(cn)
        res2 = h2e.divide_by_linear(cn)
        if res2 is None:
            continue
        res1 = h1e.divide_by_linear(cn)
        if res1 is None:
            continue
        return cn, res1, res2, fld, emb
    raise ValueError("no common factor found despite vanishing resultant")
