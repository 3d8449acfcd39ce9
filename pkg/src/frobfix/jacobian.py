"""Degree-0 divisor class arithmetic on the curve family.

Classes are reduced Mumford pairs (u, v): u monic of degree <= 2,
deg v < deg u, and u | v^2 + v h + f, all over an explicit coordinate
field containing the curve base field.  The group law is Cantor
composition and reduction for the char-2, h != 0 model:

    compose: d = gcd(u1, u2, v1 + v2 + h) = s1 u1 + s2 u2 + s3 (v1+v2+h)
             u = u1 u2 / d^2,  v = (s1 u1 v2 + s2 u2 v1 + s3 (v1 v2 + f)) / d mod u
    reduce:  u' = (f + v h + v^2) / u,  v' = (v + h) mod u'   until deg u <= 2

Negation is v -> (v + h) mod u.  The independent Riemann-Roch
interpolation oracle in `functions.reduce_points_oracle` guards every
piece of this arithmetic in the tests.
"""

from .curve import jacobian_order_from_lpoly, lpolynomial
from .errors import (
    DegreeCapError,
    FieldMismatchError,
    InconsistencyError,
    SearchExhaustedError,
)
from .functions import principal_witness_core, reduce_points_oracle
from .gf2 import embed, join_fields, solve_gf2_linear
from .poly import Poly, solve_quadratic


class FormalDivisor:
    """A formal sum of curve points with integer multiplicities.

    Entries are merged by point; the point at infinity is allowed and kept
    as an ordinary entry.  Degree bookkeeping is exact.
    """

    __slots__ = ("curve", "entries")

    def __init__(self, curve, entries):
        merged = {}
        order = []
        for p, m in entries:
            if not curve.same_model(p.curve):
                raise FieldMismatchError("divisor point on a different curve model")
            if p in merged:
                merged[p] += m
            else:
                merged[p] = m
                order.append(p)
        self.curve = curve
        self.entries = tuple((p, merged[p]) for p in order if merged[p])

    def degree(self):
        return sum(m for _, m in self.entries)

    def scale(self, k):
        return FormalDivisor(self.curve, [(p, k * m) for p, m in self.entries])

    def __add__(self, other):
        return FormalDivisor(self.curve, list(self.entries) + list(other.entries))

    def __neg__(self):
        return self.scale(-1)

    def affine_and_infinity(self):
        affine = [(p, m) for p, m in self.entries if not p.is_infinity()]
        inf = sum(m for p, m in self.entries if p.is_infinity())
        return affine, inf

    def lift_to_common_field(self):
        """(field, affine entries lifted, infinity multiplicity)."""
        affine, inf = self.affine_and_infinity()
        field = self.curve.field
        for p, _ in affine:
            field, _, _ = join_fields(field, p.field)
        return field, [(p.lift(field), m) for p, m in affine], inf

    def __repr__(self):
        return "Div(" + " + ".join(f"{m}*{p!r}" for p, m in self.entries) + ")"


class JacobianClass:
    """A reduced divisor class in Mumford form over an explicit field."""

    __slots__ = ("curve", "field", "u", "v")

    def __init__(self, curve, field, u, v, check=True):
        self.curve = curve
        self.field = field
        self.u = u
        self.v = v
        if check:
            self._validate()

    def _validate(self):
        u, v = self.u, self.v
        if u.is_zero() or u.leading().mask != 1:
            raise ValueError("u must be monic")
        if u.degree > 2:
            raise ValueError("not reduced: deg u > 2")
        if not v.is_zero() and v.degree >= max(u.degree, 1):
            raise ValueError("v must have degree < deg u")
        if self.field.degree % self.curve.field.degree:
            raise FieldMismatchError("class field does not contain the curve base field")
        h, f = self.curve.equation_polys(self.field)
        if not ((v * v + v * h + f) % u).is_zero():
            raise ValueError("Mumford condition u | v^2 + v h + f fails")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, curve, field=None):
        fld = field or curve.field
        return cls(curve, fld, Poly.one(fld), Poly.zero(fld), check=False)

    @classmethod
    def from_point(cls, p):
        """The class of P - infinity."""
        if p.is_infinity():
            return cls.identity(p.curve, p.curve.field)
        fld = p.field
        u = Poly(fld, (p.x, fld.one()))
        return cls(p.curve, fld, u, Poly.constant(p.y))

    def is_identity(self):
        return self.u.degree == 0

    # -- group law -------------------------------------------------------------
    def __add__(self, other):
        if not self.curve.same_model(other.curve):
            raise FieldMismatchError("classes on different curve models")
        if self.field != other.field:
            # mixed-field addition lifts to the compositum
            fld, _, _ = join_fields(self.field, other.field)
            return self.lift(fld) + other.lift(fld)
        h, f = self.curve.equation_polys(self.field)
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        d1, e1, e2 = u1.xgcd(u2)
        d, c1, c2 = d1.xgcd(v1 + v2 + h)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).divexact(d * d)
        v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f)).divexact(d) % u
        while u.degree > 2:
            u_next = (f + v * h + v * v).divexact(u)
            v = (v + h) % u_next
            u = u_next
        u = u.monic()
        v = v % u if u.degree > 0 else Poly.zero(self.field)
        return JacobianClass(self.curve, self.field, u, v)

    def neg(self):
        h, _ = self.curve.equation_polys(self.field)
        if self.is_identity():
            return self
        return JacobianClass(self.curve, self.field, self.u, (self.v + h) % self.u)

    def __sub__(self, other):
        return self + other.neg()

    def mul_int(self, k):
        if k < 0:
            return self.neg().mul_int(-k)
        acc = JacobianClass.identity(self.curve, self.field)
        base = self
        while k:
            if k & 1:
                acc = acc + base
            base = base + base
            k >>= 1
        return acc

    # -- comparisons / transport -------------------------------------------------
    def key(self):
        return (self.u.masks(), self.v.masks())

    def lift(self, field):
        if field == self.field:
            return self
        emb = embed(self.field, field)
        return JacobianClass(self.curve, field, self.u.map(emb), self.v.map(emb))

    def descend_to(self, field):
        """The same class re-expressed over a subfield; the reduced Mumford
        form is unique, so this succeeds exactly when the class is rational
        over `field`."""
        if field == self.field:
            return self
        emb = embed(field, self.field)
        down = []
        for poly in (self.u, self.v):
            coeffs = [emb.preimage(c) for c in poly.coeffs]
            if any(c is None for c in coeffs):
                raise FieldMismatchError("class is not rational over the subfield")
            down.append(Poly(field, coeffs))
        return JacobianClass(self.curve, field, down[0], down[1])

    def equals(self, other):
        """Equality of classes, lifting to a common field as needed."""
        if not self.curve.same_model(other.curve):
            return False
        if self.field == other.field:
            return self.key() == other.key()
        fld, _, _ = join_fields(self.field, other.field)
        return self.lift(fld).key() == other.lift(fld).key()

    def __eq__(self, other):
        if not isinstance(other, JacobianClass):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash((self.curve.field, self.curve.effective_t, self.field, self.key()))

    def retag(self, curve):
        if not self.curve.same_model(curve):
            raise ValueError("retag requires an identical curve model")
        return JacobianClass(curve, self.field, self.u, self.v, check=False)

    def __repr__(self):
        return f"Jac(u={self.u!r}, v={self.v!r})"

    # -- support ------------------------------------------------------------------
    def support(self):
        """[(point, mult)] over this field or its quadratic extension,
        together with the field where the support splits."""
        curve, fld = self.curve, self.field
        if self.u.degree == 0:
            return [], fld
        if self.u.degree == 1:
            x0 = self.u[0]
            p = curve.point(x0, self.v.evaluate(x0))
            return [(p, 1)], fld
        roots, fld2, emb = solve_quadratic(self.u)
        v = self.v if fld2 == fld else self.v.map(emb)
        if roots[0] == roots[1]:
            p = curve.point(roots[0], v.evaluate(roots[0]))
            return [(p, 2)], fld2
        out = [(curve.point(r, v.evaluate(r)), 1) for r in roots]
        return out, fld2

    def to_divisor(self):
        support, fld = self.support()
        deg = sum(m for _, m in support)
        entries = list(support)
        if deg:
            entries.append((self.curve.infinity(), -deg))
        return FormalDivisor(self.curve, entries)


# ---------------------------------------------------------------------------
# Building classes from divisors.

def class_of(divisor):
    """The reduced Mumford class of a degree-0 formal divisor (Cantor path)."""
    if divisor.degree() != 0:
        raise ValueError("divisor must have degree 0")
    field, affine, _inf = divisor.lift_to_common_field()
    acc = JacobianClass.identity(divisor.curve, field)
    for p, m in affine:
        acc = acc + JacobianClass.from_point(p).mul_int(m)
    return acc


def oracle_class_of(divisor):
    """The same class via the interpolation oracle (independent of Cantor).

    Negative multiplicities are folded through the involution first:
    -(P - inf) ~ (iota P - inf).
    """
    if divisor.degree() != 0:
        raise ValueError("divisor must have degree 0")
    field, affine, _inf = divisor.lift_to_common_field()
    effective = []
    for p, m in affine:
        if m >= 0:
            effective.append((p, m))
        else:
            effective.append((p.hyperelliptic_involution(), -m))
    u, v, fld = reduce_points_oracle(divisor.curve, field, effective)
    return JacobianClass(divisor.curve, fld, u, v)


def principal_witness(divisor):
    """An explicit function with divisor exactly `divisor`, or None.

    The witness is psi/chi with psi found by linear algebra in the
    Riemann-Roch space L(N*infinity) and verified exactly; see
    `functions.principal_witness_core`.
    """
    if divisor.degree() != 0:
        raise ValueError("divisor must have degree 0")
    field, affine, inf = divisor.lift_to_common_field()
    return principal_witness_core(divisor.curve, field, affine, inf)


# ---------------------------------------------------------------------------
# Group orders: zeta bookkeeping cross-checked by enumeration.

_lpoly_cache = {}


def curve_lpolynomial(curve):
    key = (curve.field, curve.effective_t)
    if key not in _lpoly_cache:
        _lpoly_cache[key] = lpolynomial(curve)
    return _lpoly_cache[key]


def group_order(curve, field):
    """#J(field), from the L-polynomial; for #field <= 64 the value is
    cross-checked against exhaustive Mumford enumeration."""
    d = curve.field.degree
    if field.degree % d:
        raise FieldMismatchError("field is not an extension of the curve base field")
    s1, s2 = curve_lpolynomial(curve)
    n = jacobian_order_from_lpoly(s1, s2, curve.field.order, field.degree // d)
    if field.order <= 64:
        counted = count_classes(curve, field)
        if counted != n:
            raise InconsistencyError(
                f"zeta order {n} disagrees with enumerated count {counted}"
            )
    return n


def _v_solution_space(curve, field, u):
    """Solutions v (deg v < deg u) of u | v^2 + v h + f, as mask vectors.

    Returns None when unsolvable, else (particular, kernel) where each
    element is a tuple of deg(u) coefficient masks (low degree first).
    """
    h, f = curve.equation_polys(field)
    du = u.degree
    dbits = field.degree
    nvars = du * dbits
    target_poly = f % u

    def op(vpoly):
        return (vpoly * vpoly + vpoly * h) % u

    cols = []
    for var in range(nvars):
        coeff_idx, bit = divmod(var, dbits)
        masks = [0] * du
        masks[coeff_idx] = 1 << bit
        img = op(Poly.from_masks(field, masks))
        acc = 0
        for i in range(du):
            acc |= img[i].mask << (i * dbits)
        cols.append(acc)
    rhs = 0
    for i in range(du):
        acc_mask = target_poly[i].mask
        rhs |= acc_mask << (i * dbits)
    part, kernel = solve_gf2_linear(cols, rhs)
    if part is None:
        return None

    def combo_to_masks(combo):
        masks = [0] * du
        for var in range(nvars):
            if combo >> var & 1:
                coeff_idx, bit = divmod(var, dbits)
                masks[coeff_idx] |= 1 << bit
        return tuple(masks)

    return combo_to_masks(part), [combo_to_masks(k) for k in kernel]


def count_classes(curve, field):
    """Exhaustive count of reduced Mumford pairs over `field`."""
    total = 1  # the identity (u, v) = (1, 0)
    total += curve.count_points(field) - 1  # degree-1 classes <-> affine points
    one = field.one()
    for u1m in range(field.order):
        for u0m in range(field.order):
            u = Poly(field, (field.element(u0m), field.element(u1m), one))
            sol = _v_solution_space(curve, field, u)
            if sol is not None:
                total += 1 << len(sol[1])
    return total


def enumerate_classes(curve, field):
    """All classes over a small field (order <= 64), as JacobianClass values."""
    if field.order > 64:
        raise DegreeCapError("class enumeration is for #field <= 64")
    out = [JacobianClass.identity(curve, field)]
    h, f = curve.equation_polys(field)
    one = field.one()
    for am in range(field.order):
        a = field.element(am)
        u = Poly(field, (a, one))
        for bm in range(field.order):
            b = field.element(bm)
            if (b * b + h.evaluate(a) * b + f.evaluate(a)).mask == 0:
                out.append(JacobianClass(curve, field, u, Poly.constant(b)))
    for u1m in range(field.order):
        for u0m in range(field.order):
            u = Poly(field, (field.element(u0m), field.element(u1m), one))
            sol = _v_solution_space(curve, field, u)
            if sol is None:
                continue
            part, kernel = sol
            for combo in range(1 << len(kernel)):
                masks = list(part)
                for i, k in enumerate(kernel):
                    if combo >> i & 1:
                        masks = [m ^ km for m, km in zip(masks, k)]
                v = Poly.from_masks(field, masks)
                out.append(JacobianClass(curve, field, u, v))
    return out


def random_class(curve, field, rng):
    """A random class with deg u = 2, sampled through the linearized
    Mumford solver (every monic u is reachable, split or not)."""
    one = field.one()
    while True:
        u = Poly(field, (field.random(rng), field.random(rng), one))
        sol = _v_solution_space(curve, field, u)
        if sol is None:
            continue
        part, kernel = sol
        masks = list(part)
        for k in kernel:
            if rng.randrange(2):
                masks = [m ^ km for m, km in zip(masks, k)]
        return JacobianClass(curve, field, u, Poly.from_masks(field, masks))


# ---------------------------------------------------------------------------
# Torsion.

def two_torsion(curve, field):
    """All 2-torsion classes over `field`: reduced (u, v) with u | h.

    Complete by uniqueness of the reduced form: c = -c iff u | h.
    """
    h, f = curve.equation_polys(field)
    out = [JacobianClass.identity(curve, field)]
    one = field.one()
    divisors = [
        Poly(field, (field.zero(), one)),          # x
        Poly(field, (one, one)),                   # x + 1
        Poly(field, (field.zero(), one, one)),     # x^2 + x = h
    ]
    for u in divisors:
        sol = _v_solution_space(curve, field, u)
        if sol is None:
            continue
        part, kernel = sol
        for combo in range(1 << len(kernel)):
            masks = list(part)
            for i, k in enumerate(kernel):
                if combo >> i & 1:
                    masks = [m ^ km for m, km in zip(masks, k)]
            c = JacobianClass(curve, field, u, Poly.from_masks(field, masks))
            if c.neg().key() == c.key():
                out.append(c)
    for c in out:
        if not c.mul_int(2).is_identity():
            raise InconsistencyError("2-torsion filter produced a non-torsion class")
    return out


def _subgroup_closure(elements, new):
    """Closure of an abelian subgroup dict under one new generator."""
    powers = []
    acc = new
    while not acc.is_identity():
        powers.append(acc)
        acc = acc + new
    out = dict(elements)
    for s in list(elements.values()):
        for p in powers:
            t = s + p
            out[t.key()] = t
    return out


def sylow_subgroup(curve, field, r, rng, budget=64):
    """The full Sylow-r subgroup of J(field), with a completeness proof:
    generation stops only when the subgroup order reaches r^v_r(#J)."""
    n = group_order(curve, field)
    e = 0
    m = n
    while m % r == 0:
        m //= r
        e += 1
    target = r ** e
    if target > 3 ** 9:
        raise SearchExhaustedError(f"Sylow-{r} subgroup too large to enumerate ({target})")
    ident = JacobianClass.identity(curve, field)
    group = {ident.key(): ident}
    cofactor = n // target
    for _ in range(budget):
        if len(group) == target:
            break
        c = random_class(curve, field, rng)
        x = c.mul_int(cofactor)
        if x.key() in group:
            continue
        group = _subgroup_closure(group, x)
        if len(group) > target:
            raise InconsistencyError("Sylow subgroup exceeded its order bound")
    if len(group) != target:
        raise SearchExhaustedError(
            f"Sylow-{r} generation incomplete: {len(group)} of {target}"
        )
    return list(group.values())


def torsion_subgroup(curve, r, k, seed=0):
    """All r-torsion classes over GF(q^j) for increasing j <= k.

    Returns (classes, stabilized_j, counts): `classes` are the r-torsion
    classes over the stabilization field (or the last searched field),
    `stabilized_j` is the first j whose count hits the geometric bound
    (r^(2g) in general; 2^g for r = 2 = char), or None.
    """
    if r not in (2, 3):
        raise ValueError("torsion search supports r in {2, 3}")
    if k > 6:
        raise ValueError("torsion search bound capped at k <= 6")
    import random as _random

    from .gf2 import default_field

    bound = 4 if r == 2 else 81
    counts = []
    best = None
    for j in range(1, k + 1):
        deg = curve.field.degree * j
        if deg > 12:
            break
        field = default_field(deg)
        if r == 2:
            classes = two_torsion(curve, field)
        else:
            rng = _random.Random(seed * 1009 + j)
            syl = sylow_subgroup(curve, field, r, rng)
            classes = [c for c in syl if c.mul_int(r).is_identity()]
        if len(classes) > r ** 4:
            raise InconsistencyError("torsion count exceeds r^(2g)")
        counts.append(len(classes))
        best = classes
        if len(classes) == bound:
            return classes, j, counts
    return best, None, counts


# ---------------------------------------------------------------------------
# Frobenius pullback of classes.

def frobenius_pullback(cls):
    """Pullback along the relative Frobenius X(n) -> X(n+1): the class on
    X(n+1) is sent to the class on X(n) by doubling the square-root
    points of its support (a group homomorphism)."""
    if cls.curve.n < 1:
        raise ValueError("pullback target needs twist index >= 1; retag first")
    support, fld = cls.support()
    target = cls.curve.twist(cls.curve.n - 1)
    entries = []
    deg = 0
    for p, m in support:
        entries.append((p.frobenius_preimage(), 2 * m))
        deg += 2 * m
    if deg:
        entries.append((target.infinity(), -deg))
    return class_of(FormalDivisor(target, entries))


# ---------------------------------------------------------------------------
# Ordinarity cross-check.

def ordinarity_check(curve):
    """Branch-point criterion vs 2-torsion count; raises on disagreement."""
    by_branch = curve.is_ordinary()
    classes, stabilized, _counts = torsion_subgroup(curve, 2, 2)
    by_torsion = len(classes) == 4 and stabilized is not None
    if by_branch != by_torsion:
        raise InconsistencyError("branch-point and 2-torsion ordinarity criteria disagree")
    return by_branch
