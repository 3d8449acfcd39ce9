"""Prime fields GF(p) for odd p.

Only the projective-transform utility needs characteristic p > 2; the
rest of the package lives in characteristic 2.  The interface mirrors
BinaryField closely enough that the generic Matrix works over both.
"""


def _is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


class PrimeField:
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.characteristic = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("GFp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def element(self, v):
        return PrimeFieldElement(self, v % self.p)

    def zero(self):
        return PrimeFieldElement(self, 0)

    def one(self):
        return PrimeFieldElement(self, 1 % self.p)

    def elements(self):
        return (PrimeFieldElement(self, v) for v in range(self.p))

    def random(self, rng):
        return PrimeFieldElement(self, rng.randrange(self.p))

    def random_nonzero(self, rng):
        return PrimeFieldElement(self, rng.randrange(1, self.p))


class PrimeFieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _check(self, other):
        if not isinstance(other, PrimeFieldElement) or self.field != other.field:
            raise ValueError("mixed prime-field elements")

    def __add__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value + other.value) % self.field.p)

    def __sub__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value - other.value) % self.field.p)

    def __neg__(self):
        return PrimeFieldElement(self.field, -self.value % self.field.p)

    def __mul__(self, other):
        self._check(other)
        return PrimeFieldElement(self.field, (self.value * other.value) % self.field.p)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        return PrimeFieldElement(self.field, pow(self.value, e, self.field.p))

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldElement(self.field, pow(self.value, self.field.p - 2, self.field.p))

    def is_unit(self):
        return self.value != 0

    def __eq__(self, other):
        return (
            isinstance(other, PrimeFieldElement)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self):
        return hash(("GFp", self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}%{self.field.p}"
