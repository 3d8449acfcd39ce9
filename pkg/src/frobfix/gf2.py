"""Exact arithmetic in binary finite fields GF(2^d) for d <= 16.

Elements are integer bit-masks: bit i is the coefficient of x^i in the
polynomial-basis representation modulo an explicit irreducible modulus.
The modulus is verified at construction by exhaustive factor search, so
no shipped constant is taken on faith.

Towers are explicit: an element belongs to exactly one field, and moving
between fields requires a FieldEmbedding.  Mixing elements of different
fields in arithmetic raises FieldMismatchError instead of coercing.

The deterministic element ordering used for all "smallest root" style
choices is the integer order of the bit-mask.
"""

import math
from functools import lru_cache
from importlib import resources

from .errors import (
    DegreeCapError,
    EmbeddingError,
    FieldConstructionError,
    FieldMismatchError,
    SearchExhaustedError,
)

DEGREE_CAP = 16


# ---------------------------------------------------------------------------
# GF(2)[x] arithmetic on bit-masks (bit i = coefficient of x^i).

def mask_degree(m):
    """Degree of the GF(2) polynomial encoded by mask m (-1 for m == 0)."""
    return m.bit_length() - 1


def mask_mul(a, b):
    """Carry-less product of two GF(2) polynomial masks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def mask_mod(a, m):
    """Remainder of mask a modulo mask m (m != 0)."""
    dm = mask_degree(m)
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def find_factor(m):
    """Nontrivial factor of the GF(2) polynomial m, or None if irreducible.

    Exhaustive trial division by every polynomial of degree 1..deg(m)//2;
    cheap for the degrees this package supports (deg <= 16).
    """
    d = mask_degree(m)
    if d < 1:
        return 0
    for f in range(2, 1 << (d // 2 + 1)):
        if mask_degree(f) >= 1 and mask_mod(m, f) == 0:
            return f
    return None


def is_irreducible(m):
    return mask_degree(m) >= 1 and find_factor(m) is None


@lru_cache(maxsize=1)
def default_modulus_table():
    """Shipped degree -> modulus table, re-verified entry by entry at load."""
    text = resources.files("frobfix.data").joinpath("irreducibles.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        d_str, mask_str = line.split(",")
        d, mask = int(d_str), int(mask_str, 16)
        if mask_degree(mask) != d:
            raise FieldConstructionError(f"table entry for d={d} has degree {mask_degree(mask)}")
        factor = find_factor(mask)
        if factor is not None:
            raise FieldConstructionError(
                f"table modulus {hex(mask)} for d={d} is reducible: factor {hex(factor)}"
            )
        table[d] = mask
    return table


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Fields and elements.

class BinaryField:
    """The field GF(2^degree) with an explicit irreducible modulus.

    Multiplication uses lazily built exp/log tables (the order is at most
    2^16, so full tables are always affordable).
    """

    def __init__(self, degree, modulus="default"):
        if not 1 <= degree <= DEGREE_CAP:
            raise FieldConstructionError(f"degree must be in 1..{DEGREE_CAP}, got {degree}")
        if modulus == "default" or modulus is None:
            modulus = default_modulus_table()[degree]
        if mask_degree(modulus) != degree:
            raise FieldConstructionError(
                f"modulus {hex(modulus)} has degree {mask_degree(modulus)}, expected {degree}"
            )
        factor = find_factor(modulus)
        if factor is not None:
            raise FieldConstructionError(
                f"modulus {hex(modulus)} is reducible: factor {hex(factor)}"
            )
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self._exp = None
        self._log = None

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, BinaryField)
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.degree, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.degree}; {hex(self.modulus)})"

    # -- element constructors ----------------------------------------------
    def element(self, mask):
        if not 0 <= mask < self.order:
            raise ValueError(f"mask {mask:#x} out of range for {self!r}")
        return FieldElement(self, mask)

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def gen(self):
        """The residue class of x (for d = 1 this is 1, the root of x+1)."""
        return FieldElement(self, 2 % self.order if self.degree > 1 else 1)

    def elements(self):
        return (FieldElement(self, m) for m in range(self.order))

    def random(self, rng):
        return FieldElement(self, rng.randrange(self.order))

    def random_nonzero(self, rng):
        return FieldElement(self, rng.randrange(1, self.order))

    # -- raw mask arithmetic -------------------------------------------------
    def _mul_raw(self, a, b):
        return mask_mod(mask_mul(a, b), self.modulus)

    def _pow_raw(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _ensure_tables(self):
        if self._exp is not None:
            return
        n = self.order - 1
        primes = _prime_factors(n) if n > 1 else []
        g = None
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // p) != 1 for p in primes):
                g = cand
                break
        if g is None:  # GF(2): trivial unit group
            g = 1
        exp = [0] * (2 * n if n else 1)
        log = [0] * self.order
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log

    def mul_masks(self, a, b):
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        self._ensure_tables()
        return self._exp[self._log[a] + self._log[b]]

    def inv_mask(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if a == 1 or self.order == 2:
            return 1
        self._ensure_tables()
        return self._exp[self.order - 1 - self._log[a]]


class FieldElement:
    """An element of a BinaryField, stored as a bit-mask.  Immutable."""

    __slots__ = ("field", "mask")

    def __init__(self, field, mask):
        self.field = field
        self.mask = mask

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatchError(
                f"elements of {self.field!r} and {other.field!r} mixed without embedding"
            )

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.mask ^ other.mask)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul_masks(self.mask, other.mask))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(
            self.field, self.field.mul_masks(self.mask, self.field.inv_mask(other.mask))
        )

    def __pow__(self, e):
        n = self.field.order - 1
        if self.mask == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self if e else self.field.one()
        e %= n or 1
        return FieldElement(self.field, self.field._pow_raw(self.mask, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv_mask(self.mask))

    def is_unit(self):
        return self.mask != 0

    def frobenius(self):
        """The square a^2 (the absolute Frobenius in characteristic 2)."""
        return self * self

    def sqrt(self):
        """The unique square root a^(2^(d-1)); squaring is bijective in char 2."""
        return self ** (1 << (self.field.degree - 1))

    def trace(self, subdegree=1):
        """Trace to the subfield GF(2^subdegree); subdegree must divide d."""
        d = self.field.degree
        if d % subdegree:
            raise ValueError(f"subdegree {subdegree} does not divide {d}")
        q = 1 << subdegree
        acc = self
        term = self
        for _ in range(d // subdegree - 1):
            term = term ** q
            acc = acc + term
        return acc

    def multiplicative_order(self):
        if self.mask == 0:
            raise ZeroDivisionError("order of zero")
        n = self.field.order - 1
        order = n
        for p in _prime_factors(n):
            while order % p == 0 and self.field._pow_raw(self.mask, order // p) == 1:
                order //= p
        return order

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.mask == other.mask
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.field.degree, self.field.modulus, self.mask))

    def __bool__(self):
        return self.mask != 0

    def __repr__(self):
        return f"{hex(self.mask)}@GF(2^{self.field.degree})"


# ---------------------------------------------------------------------------
# Embeddings and the default tower.

class FieldEmbedding:
    """A ring homomorphism GF(2^a) -> GF(2^b) (a | b), given by a root choice.

    The map sends the source generator to `image_of_generator`, a root of
    the source modulus in the target; on masks it is GF(2)-linear, so it is
    applied by XOR-ing precomputed images of the source power basis.
    """

    __slots__ = ("source", "target", "image_of_generator", "_basis_images")

    def __init__(self, source, target, image_of_generator):
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        imgs = []
        acc = 1
        for _ in range(source.degree):
            imgs.append(acc)
            acc = target.mul_masks(acc, image_of_generator.mask)
        self._basis_images = imgs

    def __call__(self, elem):
        if elem.field != self.source:
            raise FieldMismatchError(f"embedding expects elements of {self.source!r}")
        m = elem.mask
        out = 0
        i = 0
        while m:
            if m & 1:
                out ^= self._basis_images[i]
            m >>= 1
            i += 1
        return FieldElement(self.target, out)

    def then(self, other):
        """Composition: self followed by other (target of self = source of other)."""
        if self.target != other.source:
            raise EmbeddingError("embeddings do not compose")
        return FieldEmbedding(self.source, other.target, other(self.image_of_generator))

    def preimage(self, elem):
        """The source element mapping to elem, or None if elem is outside
        the image subfield."""
        if elem.field != self.target:
            raise FieldMismatchError("preimage of an element of the wrong field")
        combo, _ = solve_gf2_linear(list(self._basis_images), elem.mask)
        if combo is None:
            return None
        return FieldElement(self.source, combo)

    def is_identity(self):
        return self.source == self.target and self(self.source.gen()) == self.source.gen()

    def __repr__(self):
        return f"GF(2^{self.source.degree})->GF(2^{self.target.degree})"


@lru_cache(maxsize=None)
def default_field(degree):
    """The shared GF(2^degree) built from the shipped modulus table."""
    return BinaryField(degree)


_embed_cache = {}


def _roots_of_gf2_poly(modulus, target):
    """Ascending masks of the roots of a GF(2)-coefficient polynomial in target."""
    out = []
    for z in range(target.order):
        acc = 0
        m = modulus
        i = 0
        while m:
            if m & 1:
                acc ^= target._pow_raw(z, i)
            m >>= 1
            i += 1
        if acc == 0:
            out.append(z)
    return out


def _prime_divisors(n):
    return _prime_factors(n)


def _default_tower_embedding(a, b):
    """The canonical coherent embedding default(a) -> default(b).

    Among the ascending roots of the degree-a default modulus in the
    degree-b default field, the first one compatible with the embeddings
    already fixed on every maximal proper subfield is chosen.  Processing
    subfields first makes the whole divisibility lattice commute, which is
    what keeps mixed-field curve arithmetic consistent.
    """
    src, tgt = default_field(a), default_field(b)
    if a == b:
        return FieldEmbedding(src, tgt, tgt.gen())
    constraints = []
    for p in _prime_divisors(a):
        sub = a // p
        lower = embed(default_field(sub), src)
        upper = embed(default_field(sub), tgt)
        gen_sub = default_field(sub).gen()
        constraints.append((lower(gen_sub), upper(gen_sub)))
    for root_mask in _roots_of_gf2_poly(src.modulus, tgt):
        cand = FieldEmbedding(src, tgt, FieldElement(tgt, root_mask))
        if all(cand(via_src) == direct for via_src, direct in constraints):
            return cand
    raise EmbeddingError(
        f"no tower-compatible root of {hex(src.modulus)} in {tgt!r}"
    )


def _iso_to_default(field):
    """The smallest-root isomorphism field -> default(field.degree)."""
    tgt = default_field(field.degree)
    if field == tgt:
        return FieldEmbedding(field, tgt, tgt.gen())
    roots = _roots_of_gf2_poly(field.modulus, tgt)
    if not roots:
        raise EmbeddingError("modulus has no root in the default field of equal degree")
    return FieldEmbedding(field, tgt, FieldElement(tgt, roots[0]))


def _invert_iso(emb):
    """Inverse of a same-degree embedding (a field isomorphism)."""
    src, tgt = emb.source, emb.target
    cols = list(emb._basis_images)
    gen_pre_combo, _ = solve_gf2_linear(cols, tgt.gen().mask)
    if gen_pre_combo is None:
        raise EmbeddingError("embedding is not invertible")
    return FieldEmbedding(tgt, src, FieldElement(src, gen_pre_combo))


def embed(source, target):
    """The canonical embedding GF(2^a) -> GF(2^b) for a | b.

    Embeddings between default-table fields form a commuting system over
    the divisibility lattice (each is the smallest root of the source
    modulus compatible with all previously fixed subfield embeddings).
    Fields with custom moduli are routed through the default skeleton via
    their smallest-root isomorphism, so coherence extends to them too.
    """
    if target.degree % source.degree:
        raise EmbeddingError(
            f"no embedding: {source.degree} does not divide {target.degree}"
        )
    key = (source.degree, source.modulus, target.degree, target.modulus)
    hit = _embed_cache.get(key)
    if hit is not None:
        return hit
    src_default = default_field(source.degree)
    tgt_default = default_field(target.degree)
    if source == src_default and target == tgt_default:
        emb = _default_tower_embedding(source.degree, target.degree)
    else:
        spine = embed(src_default, tgt_default)
        pre = _iso_to_default(source)
        if target == tgt_default:
            emb = pre.then(spine)
        else:
            post = _invert_iso(_iso_to_default(target))
            emb = pre.then(spine).then(post)
    _embed_cache[key] = emb
    return emb


def identity_embedding(field):
    return embed(field, field)


def join_fields(f1, f2):
    """Smallest common overfield with explicit embeddings.

    Returns (E, e1, e2) where E is f1 or f2 when one contains the other,
    and otherwise the default field of degree lcm(d1, d2).
    """
    if f1 == f2:
        e = identity_embedding(f1)
        return f1, e, e
    if f2.degree % f1.degree == 0:
        return f2, embed(f1, f2), identity_embedding(f2)
    if f1.degree % f2.degree == 0:
        return f1, identity_embedding(f1), embed(f2, f1)
    d1, d2 = f1.degree, f2.degree
    lcm = d1 * d2 // math.gcd(d1, d2)
    if lcm > DEGREE_CAP:
        raise DegreeCapError(f"compositum degree {lcm} exceeds cap {DEGREE_CAP}")
    e = default_field(lcm)
    return e, embed(f1, e), embed(f2, e)


def build_field(d, modulus="default"):
    """Construct GF(2^d) with the given (or default) verified modulus."""
    return BinaryField(d, modulus)


# ---------------------------------------------------------------------------
# Artin-Schreier equations x^q - x = d (char 2: x^q + x = d).

def _as_operator_columns(field, q):
    """Images of the mask basis under x -> x^q + x, as GF(2)-linear columns."""
    cols = []
    for i in range(field.degree):
        b = 1 << i
        cols.append(field._pow_raw(b, q) ^ b)
    return cols


def solve_gf2_linear(cols, rhs):
    """Solve sum_i x_i * cols[i] = rhs over GF(2) (columns are bit-masks).

    Returns (particular, kernel_basis) where both are combination masks over
    the column indices, or (None, kernel_basis) if unsolvable.
    """
    rows = []
    work = list(cols)
    combos = [1 << i for i in range(len(cols))]
    pivots = {}
    for i in range(len(work)):
        v, c = work[i], combos[i]
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                pv, pc = pivots[top]
                v ^= pv
                c ^= pc
            else:
                pivots[top] = (v, c)
                break
        if v == 0:
            rows.append(c)  # kernel combo
    # reduce rhs
    v, c = rhs, 0
    while v:
        top = v.bit_length() - 1
        if top not in pivots:
            return None, rows
        pv, pc = pivots[top]
        v ^= pv
        c ^= pc
    return c, rows


def _minimize_over_span(value, basis):
    """Smallest integer in value + span_GF(2)(basis), by greedy echelon reduction."""
    ech = []
    for b in basis:
        for e in ech:
            if b.bit_length() == e.bit_length():
                b ^= e
        if b:
            ech.append(b)
            ech.sort(key=lambda z: -z.bit_length())
    for e in sorted(ech, key=lambda z: -z.bit_length()):
        if value >> (e.bit_length() - 1) & 1:
            value ^= e
    return value


def artin_schreier_root_in_field(field, q, d_elem):
    """Smallest root of x^q + x = d inside `field`, or None when the
    GF(q)-trace obstructs."""
    k = q.bit_length() - 1
    if q != 1 << k or k < 1 or field.degree % k:
        raise ValueError(f"q={q} is not a power of 2 dividing the field order")
    cols = _as_operator_columns(field, q)
    part, kernel = solve_gf2_linear(cols, d_elem.mask)
    if part is None:
        return None
    return FieldElement(field, _minimize_over_span(part, kernel))


def artin_schreier_solve(field, q, d_elem):
    """Solve x^q + x = d over `field`, extending by degree 2 if needed.

    Returns (root, multiplier): multiplier is 1 when the root lies in
    `field` (exactly when Tr_{field/GF(q)}(d) = 0) and 2 when it lies in
    the default quadratic extension.  The root is the smallest solution
    in mask order; the full solution set is root + GF(q).
    """
    k = q.bit_length() - 1
    if q != 1 << k or k < 1 or field.degree % k:
        raise ValueError(f"q={q} is not a power of 2 dividing the field order")
    if d_elem.field != field:
        raise FieldMismatchError("d must be an element of the given field")
    root = artin_schreier_root_in_field(field, q, d_elem)
    if root is not None:
        return root, 1
    if 2 * field.degree > DEGREE_CAP:
        raise DegreeCapError(
            f"Artin-Schreier solution needs degree {2 * field.degree} > cap"
        )
    ext = default_field(2 * field.degree)
    emb = embed(field, ext)
    root = artin_schreier_root_in_field(ext, q, emb(d_elem))
    if root is None:
        raise SearchExhaustedError("Artin-Schreier equation unsolvable in quadratic extension")
    return root, 2
