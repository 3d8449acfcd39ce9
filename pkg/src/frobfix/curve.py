"""The genus-2 curve family y^2 + (x^2+x) y = (T^2+T)(x^5+x) + T^2 x^3
over GF(2^d), with T = t^(2^n) on the n-th Frobenius twist.

The parameter t must avoid {0, 1}.  The affine model has a single smooth
point at infinity (degree-5 right-hand side), which is also a Weierstrass
point.  Relative Frobenius maps the twist-n curve to the twist-(n+1)
curve by squaring both coordinates; its inverse takes coordinate square
roots, which exist uniquely in characteristic 2.

L-polynomial bookkeeping (exact, integer arithmetic) also lives here;
the Jacobian layer cross-checks it against exhaustive enumeration.
"""

from fractions import Fraction

from .errors import (
    CurveParameterError,
    DegreeCapError,
    FieldMismatchError,
    InconsistencyError,
    NotOnCurveError,
)
from .gf2 import DEGREE_CAP, artin_schreier_root_in_field, default_field, embed, identity_embedding
from .poly import Poly


class Curve:
    """A member of the family, tagged with its Frobenius-twist index n."""

    __slots__ = ("field", "t", "n", "_eff_t")

    def __init__(self, field, t, n=0):
        if t.field != field:
            raise FieldMismatchError("parameter t must lie in the base field")
        if t.mask in (0, 1):
            raise CurveParameterError("t must avoid {0, 1}")
        if n < 0:
            raise ValueError("twist index must be >= 0")
        self.field = field
        self.t = t
        self.n = n
        self._eff_t = t ** (1 << n)

    @property
    def effective_t(self):
        """The parameter of the twisted model: t^(2^n)."""
        return self._eff_t

    def twist(self, n):
        return Curve(self.field, self.t, n)

    def next_twist(self):
        return Curve(self.field, self.t, self.n + 1)

    def same_model(self, other):
        """Equality as a curve: same base field and same effective parameter."""
        return self.field == other.field and self.effective_t == other.effective_t

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and self.field == other.field
            and self.t == other.t
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.field, self.t, self.n))

    def __repr__(self):
        return f"Curve(d={self.field.degree}, t={hex(self.t.mask)}, n={self.n})"

    # -- defining polynomials -------------------------------------------------
    def equation_polys(self, field=None):
        """(h, f) with the model y^2 + h(x) y = f(x), over `field` (>= base)."""
        if field is None or field == self.field:
            fld, te = self.field, self.effective_t
        else:
            emb = embed(self.field, field)
            fld, te = field, emb(self.effective_t)
        one, zero = fld.one(), fld.zero()
        h = Poly(fld, (zero, one, one))  # x^2 + x
        c5 = te * te + te
        f = Poly(fld, (zero, c5, zero, te * te, zero, c5))  # (T^2+T)(x^5+x) + T^2 x^3
        return h, f

    # -- points ----------------------------------------------------------------
    def infinity(self):
        return CurvePoint(self, None, None)

    def point(self, x, y):
        p = CurvePoint(self, x, y)
        if not self.contains(p):
            raise NotOnCurveError(f"({x!r}, {y!r}) does not satisfy the equation")
        return p

    def contains(self, p):
        """Exact equation check; requires an embedding from the base field."""
        if p.is_infinity():
            return True
        if p.x.field != p.y.field:
            raise FieldMismatchError("point coordinates in different fields")
        if p.x.field.degree % self.field.degree:
            raise FieldMismatchError(
                "coordinate field does not contain the curve base field"
            )
        h, f = self.equation_polys(p.x.field)
        return p.y * p.y + h.evaluate(p.x) * p.y == f.evaluate(p.x)

    def points_over(self, field):
        """All points of the curve over `field`, including infinity."""
        if field.degree > 12:
            raise DegreeCapError("point enumeration capped at extension degree 12")
        h, f = self.equation_polys(field)
        pts = [self.infinity()]
        for x in field.elements():
            hx, fx = h.evaluate(x), f.evaluate(x)
            for y in _y_solutions(field, hx, fx):
                pts.append(CurvePoint(self, x, y))
        return pts

    def count_points(self, field):
        h, f = self.equation_polys(field)
        total = 1
        for x in field.elements():
            hx, fx = h.evaluate(x), f.evaluate(x)
            total += len(_y_solutions(field, hx, fx))
        return total

    def branch_points(self):
        """x-coordinates of the branch locus in P^1: roots of h plus infinity
        (None stands for infinity; the right-hand side has odd degree 5)."""
        return [self.field.zero(), self.field.one(), None]

    def is_ordinary(self):
        """Branch-point criterion: g + 1 = 3 branch points.

        The 2-torsion cross-check lives in the Jacobian layer
        (`jacobian.ordinarity_check`), which raises if the two criteria
        ever disagree.
        """
        return len(self.branch_points()) == 3

    def weierstrass_points(self):
        """The affine ramification points (one above each finite branch x)."""
        h, f = self.equation_polys()
        out = []
        for x in (self.field.zero(), self.field.one()):
            y = f.evaluate(x).sqrt()
            out.append(CurvePoint(self, x, y))
        return out


def _y_solutions(field, hx, fx):
    """Solutions y in `field` of y^2 + hx*y = fx."""
    if hx.mask == 0:
        return [fx.sqrt()]
    d = fx / (hx * hx)
    z = artin_schreier_root_in_field(field, 2, d)
    if z is None:
        return []
    return [hx * z, hx * (z + field.one())]


class CurvePoint:
    """Affine point (x, y) over an extension, or the point at infinity.

    The coordinate field always contains the curve base field through the
    default embedding; `lift` moves a point up a tower explicitly.
    """

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    def is_infinity(self):
        return self.x is None

    @property
    def field(self):
        return self.curve.field if self.is_infinity() else self.x.field

    def is_weierstrass(self):
        if self.is_infinity():
            return True
        h, _ = self.curve.equation_polys(self.field)
        return h.evaluate(self.x).mask == 0

    def hyperelliptic_involution(self):
        """(x, y) -> (x, y + h(x)); infinity is fixed."""
        if self.is_infinity():
            return self
        h, _ = self.curve.equation_polys(self.field)
        return CurvePoint(self.curve, self.x, self.y + h.evaluate(self.x))

    def lift(self, field):
        if self.is_infinity():
            return CurvePoint(self.curve, None, None)
        emb = embed(self.field, field)
        return CurvePoint(self.curve, emb(self.x), emb(self.y))

    def relative_frobenius(self):
        """Image on the next twist: (x, y) -> (x^2, y^2)."""
        target = self.curve.next_twist()
        if self.is_infinity():
            return target.infinity()
        img = CurvePoint(target, self.x * self.x, self.y * self.y)
        if not target.contains(img):
            raise InconsistencyError("relative Frobenius image left the twisted curve")
        return img

    def frobenius_preimage(self):
        """The unique preimage on the previous twist: coordinate square roots."""
        if self.curve.n < 1:
            raise ValueError("preimage needs twist index >= 1; retag through X(d) = X(0) first")
        target = self.curve.twist(self.curve.n - 1)
        if self.is_infinity():
            return target.infinity()
        pre = CurvePoint(target, self.x.sqrt(), self.y.sqrt())
        if not target.contains(pre):
            raise InconsistencyError("Frobenius preimage left the source curve")
        return pre

    def retag(self, curve):
        """The same point viewed on another tag of the same model (X(d) = X(0))."""
        if not self.curve.same_model(curve):
            raise ValueError("retag requires an identical curve model")
        return CurvePoint(curve, self.x, self.y)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if not self.curve.same_model(other.curve):
            return False
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity():
            return hash((self.curve.field, self.curve.effective_t, "inf"))
        return hash((self.curve.field, self.curve.effective_t, self.x, self.y))

    def __repr__(self):
        if self.is_infinity():
            return "Point(inf)"
        return f"Point({hex(self.x.mask)}, {hex(self.y.mask)}; GF(2^{self.field.degree}))"


# ---------------------------------------------------------------------------
# L-polynomial bookkeeping (genus 2).

def lpolynomial(curve):
    """(s1, s2) for L(T) = 1 - s1 T + s2 T^2 - q s1 T^3 + q^2 T^4, from exact
    point counts over the base field and its quadratic extension."""
    q = curve.field.order
    n1 = curve.count_points(curve.field)
    ext = default_field(2 * curve.field.degree)
    n2 = curve.count_points(ext)
    s1 = q + 1 - n1
    p2 = q * q + 1 - n2
    if (s1 * s1 - p2) % 2:
        raise InconsistencyError("point counts are incompatible with a genus-2 L-polynomial")
    s2 = (s1 * s1 - p2) // 2
    return s1, s2


def power_sums(s1, s2, q, k_max):
    """Power sums p_k of the four reciprocal roots, via Newton's identities."""
    e = [0, s1, s2, q * s1, q * q]
    p = [4]  # p_0 = number of roots
    for k in range(1, k_max + 1):
        acc = 0
        for i in range(1, min(k, 4) + 1):
            if i < k:
                acc += (-1) ** (i - 1) * e[i] * p[k - i]
            else:  # i == k <= 4: the k*e_k tail of Newton's identity
                acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p


def curve_count_from_lpoly(s1, s2, q, j):
    """#C(GF(q^j)) predicted by the L-polynomial."""
    p = power_sums(s1, s2, q, j)
    return q ** j + 1 - p[j]


def jacobian_order_from_lpoly(s1, s2, q, j):
    """#J(GF(q^j)) = prod (1 - alpha_i^j), exact integer."""
    p = power_sums(s1, s2, q, 4 * j)
    big_p = [Fraction(p[i * j]) for i in range(5)]  # power sums of alpha_i^j
    e1 = big_p[1]
    e2 = (e1 * big_p[1] - big_p[2]) / 2
    e3 = (e2 * big_p[1] - e1 * big_p[2] + big_p[3]) / 3
    e4 = (e3 * big_p[1] - e2 * big_p[2] + e1 * big_p[3] - big_p[4]) / 4
    val = 1 - e1 + e2 - e3 + e4
    if val.denominator != 1:
        raise InconsistencyError("non-integral Jacobian order from L-polynomial")
    n = int(val)
    if n <= 0:
        raise InconsistencyError("non-positive Jacobian order from L-polynomial")
    return n


def weil_interval_ok_curve(count, q):
    """|#C - (q+1)| <= 4 sqrt(q), checked exactly on integers."""
    return (count - q - 1) ** 2 <= 16 * q


def weil_interval_ok_jacobian(count, q):
    """(sqrt(q)-1)^4 <= #J <= (sqrt(q)+1)^4, checked exactly on integers."""
    center = q * q + 6 * q + 1  # (sqrt(q)+-1)^4 = center +- 4 sqrt(q)(q+1)
    diff = count - center
    return diff * diff <= 16 * q * (q + 1) ** 2
