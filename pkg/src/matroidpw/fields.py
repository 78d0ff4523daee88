"""Finite fields GF(p) and iterated extension towers GF(p)(a1)(a2)...

A field is described by a :class:`FieldSpec`: a prime characteristic and an
ordered tower of monic irreducible polynomials, each with coefficients in the
field defined by the tower prefix below it.  Elements are kept in a canonical
recursive form: a prime-field element is an int in [0, p), an extension
element is a tuple of lower-level elements of length equal to the extension
degree (fully padded, fully reduced).

Towers are never collapsed into a single extension; arithmetic works directly
on the nested representation.  For speed-critical linear algebra a per-spec
"ops engine" encodes elements as integer handles (see :func:`get_ops`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# FieldSpec


class FieldSpec:
    """A prime field GF(p) or an iterated extension tower above it.

    ``tower`` is a tuple of polynomials; the polynomial at level i is a tuple
    of ascending coefficients, each coefficient in canonical data form of the
    level-i field (the prefix of the tower).  An empty tower is GF(p).
    """

    __slots__ = ("p", "tower", "_hash", "_base")

    def __init__(self, p: int, tower: Tuple[tuple, ...] = ()):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        self.p = p
        self.tower = tuple(tuple(poly) for poly in tower)
        self._hash = hash((p, self.tower))
        self._base: Optional["FieldSpec"] = None

    # -- basic structure ----------------------------------------------------

    @property
    def level(self) -> int:
        return len(self.tower)

    def base(self) -> "FieldSpec":
        if not self.tower:
            raise FieldError("prime field has no base field")
        if self._base is None:
            self._base = FieldSpec(self.p, self.tower[:-1])
        return self._base

    @property
    def top_degree(self) -> int:
        return len(self.tower[-1]) - 1

    @property
    def degree(self) -> int:
        """Total extension degree over GF(p)."""
        d = 1
        for poly in self.tower:
            d *= len(poly) - 1
        return d

    @property
    def size(self) -> int:
        return self.p ** self.degree

    def zero_data(self):
        if not self.tower:
            return 0
        d = self.top_degree
        b = self.base().zero_data()
        return (b,) * d

    def one_data(self):
        if not self.tower:
            return 1
        base = self.base()
        d = self.top_degree
        return (base.one_data(),) + (base.zero_data(),) * (d - 1)

    def extend(self, poly: Sequence) -> "FieldSpec":
        """Extend by a monic polynomial (ascending coefficient data tuples)."""
        poly = tuple(poly)
        if len(poly) < 2:
            raise FieldError("extension polynomial must have degree >= 1")
        if poly[-1] != self.one_data():
            raise FieldError("extension polynomial must be monic")
        return FieldSpec(self.p, self.tower + (poly,))

    def is_prefix_of(self, other: "FieldSpec") -> bool:
        return (
            self.p == other.p
            and len(self.tower) <= len(other.tower)
            and other.tower[: len(self.tower)] == self.tower
        )

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.tower == other.tower
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.tower:
            return f"GF({self.p})"
        degs = "x".join(str(len(t) - 1) for t in self.tower)
        return f"GF({self.p})^[{degs}]"

    # -- element enumeration ------------------------------------------------

    def element_from_int(self, i: int):
        """Canonical data of the i-th element (mixed-radix by tower shape)."""
        if i < 0 or i >= self.size:
            raise FieldError(f"element index {i} out of range for {self}")
        if not self.tower:
            return i
        base = self.base()
        bsz = base.size
        coeffs = []
        for _ in range(self.top_degree):
            coeffs.append(base.element_from_int(i % bsz))
            i //= bsz
        return tuple(coeffs)

    def element_to_int(self, data) -> int:
        if not self.tower:
            return data
        base = self.base()
        bsz = base.size
        out = 0
        for c in reversed(data):
            out = out * bsz + base.element_to_int(c)
        return out

    def iter_elements(self) -> Iterator:
        for i in range(self.size):
            yield self.element_from_int(i)

    def check_tower_irreducible(self) -> bool:
        """Verify every tower polynomial by exhaustive factor search.

        Intended for desk-scale sanity checks only (small degrees, small
        subfields).
        """
        spec = FieldSpec(self.p)
        for poly in self.tower:
            if not _poly_is_irreducible_exhaustive(spec, poly):
                return False
            spec = spec.extend(poly)
        return True


# ---------------------------------------------------------------------------
# Canonical-form arithmetic on raw data


def add_data(spec: FieldSpec, a, b):
    if not spec.tower:
        return (a + b) % spec.p
    base = spec.base()
    return tuple(add_data(base, x, y) for x, y in zip(a, b))


def neg_data(spec: FieldSpec, a):
    if not spec.tower:
        return (-a) % spec.p
    base = spec.base()
    return tuple(neg_data(base, x) for x in a)


def sub_data(spec: FieldSpec, a, b):
    return add_data(spec, a, neg_data(spec, b))


def mul_data(spec: FieldSpec, a, b):
    if not spec.tower:
        return (a * b) % spec.p
    base = spec.base()
    prod = _poly_mul(base, a, b)
    rem = _poly_mod(base, prod, spec.tower[-1])
    return _poly_pad(base, rem, spec.top_degree)


def is_zero_data(spec: FieldSpec, a) -> bool:
    return a == spec.zero_data()


def inv_data(spec: FieldSpec, a):
    if is_zero_data(spec, a):
        raise ZeroDivisionError("inversion of zero field element")
    if not spec.tower:
        return pow(a, spec.p - 2, spec.p)
    base = spec.base()
    g, u = _poly_ext_gcd(base, a, spec.tower[-1])
    # g is a unit (constant) because the modulus is irreducible
    if _poly_deg(base, g) != 0:
        raise FieldError("tower polynomial is not irreducible")
    c_inv = inv_data(base, g[0])
    scaled = tuple(mul_data(base, c_inv, x) for x in u)
    return _poly_pad(base, scaled, spec.top_degree)


def pow_data(spec: FieldSpec, a, e: int):
    out = spec.one_data()
    acc = a
    while e:
        if e & 1:
            out = mul_data(spec, out, acc)
        acc = mul_data(spec, acc, acc)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# Polynomial helpers (coefficients are data of `spec`, ascending order)


def _poly_strip(spec: FieldSpec, f: Sequence) -> list:
    f = list(f)
    z = spec.zero_data()
    while f and f[-1] == z:
        f.pop()
    return f


def _poly_deg(spec: FieldSpec, f: Sequence) -> int:
    return len(_poly_strip(spec, f)) - 1


def _poly_pad(spec: FieldSpec, f: Sequence, n: int) -> tuple:
    f = list(f)
    z = spec.zero_data()
    while len(f) < n:
        f.append(z)
    return tuple(f[:n])


def _poly_add(spec: FieldSpec, f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    f = _poly_pad(spec, f, n)
    g = _poly_pad(spec, g, n)
    return [add_data(spec, x, y) for x, y in zip(f, g)]


def _poly_scale(spec: FieldSpec, c, f: Sequence) -> list:
    return [mul_data(spec, c, x) for x in f]


def _poly_mul(spec: FieldSpec, f: Sequence, g: Sequence) -> list:
    f = _poly_strip(spec, f)
    g = _poly_strip(spec, g)
    if not f or not g:
        return []
    z = spec.zero_data()
    out = [z] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi == z:
            continue
        for j, gj in enumerate(g):
            out[i + j] = add_data(spec, out[i + j], mul_data(spec, fi, gj))
    return out


def _poly_divmod(spec: FieldSpec, f: Sequence, g: Sequence):
    f = _poly_strip(spec, f)
    g = _poly_strip(spec, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    z = spec.zero_data()
    lead_inv = inv_data(spec, g[-1])
    q = [z] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and _poly_strip(spec, r):
        if r[-1] == z:
            r.pop()
            continue
        shift = len(r) - len(g)
        c = mul_data(spec, r[-1], lead_inv)
        q[shift] = c
        for i, gi in enumerate(g):
            r[shift + i] = sub_data(spec, r[shift + i], mul_data(spec, c, gi))
        r.pop()
    return q, _poly_strip(spec, r)


def _poly_mod(spec: FieldSpec, f: Sequence, g: Sequence) -> list:
    return _poly_divmod(spec, f, g)[1]


def _poly_gcd(spec: FieldSpec, f: Sequence, g: Sequence) -> list:
    f = _poly_strip(spec, f)
    g = _poly_strip(spec, g)
    while g:
        f, g = g, _poly_mod(spec, f, g)
    if f:
        lead_inv = inv_data(spec, f[-1])
        f = _poly_scale(spec, lead_inv, f)
    return f


def _poly_ext_gcd(spec: FieldSpec, a: Sequence, m: Sequence):
    """Return (g, u) with g = gcd(a, m) and u*a = g (mod m)."""
    r0, r1 = _poly_strip(spec, m), _poly_strip(spec, a)
    u0, u1 = [], [spec.one_data()]
    while r1:
        q, r = _poly_divmod(spec, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _poly_add(spec, u0, _poly_scale(spec, neg_data(spec, spec.one_data()), _poly_mul(spec, q, u1)))
    return tuple(r0), tuple(u0)


def _poly_powmod_x(spec: FieldSpec, e: int, f: Sequence) -> list:
    """x^e mod f over spec."""
    result = [spec.one_data()]
    x = _poly_mod(spec, [spec.zero_data(), spec.one_data()], f)
    base = list(x)
    while e:
        if e & 1:
            result = _poly_mod(spec, _poly_mul(spec, result, base), f)
        e >>= 1
        if e:
            base = _poly_mod(spec, _poly_mul(spec, base, base), f)
    return result


def _h_strip(ops, f: List[int]) -> List[int]:
    while f and f[-1] == ops.zero:
        f.pop()
    return f


def _h_mulmod(ops, f: Sequence[int], g: Sequence[int], m: Sequence[int]) -> List[int]:
    """f*g mod m over engine handles; m monic of degree >= 1."""
    d = len(m) - 1
    conv = [ops.zero] * (len(f) + len(g) - 1) if f and g else []
    for i, x in enumerate(f):
        if x == ops.zero:
            continue
        for j, y in enumerate(g):
            if y != ops.zero:
                conv[i + j] = ops.add(conv[i + j], ops.mul(x, y))
    for k in range(len(conv) - 1, d - 1, -1):
        c = conv[k]
        if c != ops.zero:
            for i in range(d):
                conv[k - d + i] = ops.sub(conv[k - d + i], ops.mul(c, m[i]))
    return _h_strip(ops, conv[:d])


def _h_mod(ops, f: Sequence[int], g: Sequence[int]) -> List[int]:
    """f mod g over engine handles; g need not be monic."""
    f = list(f)
    dg = len(g) - 1
    lead_inv = ops.inv(g[-1])
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if c != ops.zero:
            c = ops.mul(c, lead_inv)
            for i in range(dg + 1):
                f[k - dg + i] = ops.sub(f[k - dg + i], ops.mul(c, g[i]))
    return _h_strip(ops, f[:dg])


def _h_gcd(ops, f: Sequence[int], g: Sequence[int]) -> List[int]:
    a = _h_strip(ops, list(f))
    b = _h_strip(ops, list(g))
    while b:
        a, b = b, _h_mod(ops, a, b)
    return a


def _h_powmod_x(ops, e: int, m: Sequence[int]) -> List[int]:
    result = [ops.one]
    base = _h_mulmod(ops, [ops.one], [ops.zero, ops.one], m)
    while e:
        if e & 1:
            result = _h_mulmod(ops, result, base, m)
        e >>= 1
        if e:
            base = _h_mulmod(ops, base, base, m)
    return result


def _poly_is_irreducible(spec: FieldSpec, f: Sequence) -> bool:
    """Monic f is irreducible iff it shares no factor with x^(q^i) - x for
    i <= deg(f)/2 (any reducible f has a factor of degree <= deg/2)."""
    d = _poly_deg(spec, f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if is_zero_data(spec, f[0]):
        return False  # divisible by x
    ops = get_ops(spec)
    fh = [ops.encode(c) for c in f[: d + 1]]
    if fh[-1] != ops.one:
        li = ops.inv(fh[-1])
        fh = [ops.mul(li, c) for c in fh]
    # squarefree pre-filter: gcd(f, f') constant; f' = 0 means a p-th power
    deriv = []
    for i in range(1, d + 1):
        acc = ops.zero
        for _ in range(i % spec.p):
            acc = ops.add(acc, fh[i])
        deriv.append(acc)
    deriv = _h_strip(ops, deriv)
    if not deriv or len(_h_gcd(ops, fh, deriv)) > 1:
        return False
    q = spec.size
    for i in range(1, d // 2 + 1):
        xqi = _h_powmod_x(ops, q ** i, fh)
        probe = list(xqi) + [ops.zero] * (2 - len(xqi))
        probe[1] = ops.sub(probe[1], ops.one)
        probe = _h_strip(ops, probe)
        if len(_h_gcd(ops, probe, fh)) - 1 > 0:
            return False
    return True


def _poly_is_irreducible_exhaustive(spec: FieldSpec, f: Sequence) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    d = _poly_deg(spec, f)
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for idx in range(spec.size ** deg):
            coeffs = []
            v = idx
            for _ in range(deg):
                coeffs.append(spec.element_from_int(v % spec.size))
                v //= spec.size
            g = coeffs + [spec.one_data()]
            if not _poly_mod(spec, f, g):
                return False
    return True


# ---------------------------------------------------------------------------
# FieldElement


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec in canonical data form."""

    spec: FieldSpec
    data: object

    @staticmethod
    def zero(spec: FieldSpec) -> "FieldElement":
        return FieldElement(spec, spec.zero_data())

    @staticmethod
    def one(spec: FieldSpec) -> "FieldElement":
        return FieldElement(spec, spec.one_data())

    @staticmethod
    def from_int(spec: FieldSpec, i: int) -> "FieldElement":
        return FieldElement(spec, spec.element_from_int(i))

    def to_int(self) -> int:
        return self.spec.element_to_int(self.data)

    def _check(self, other: "FieldElement") -> None:
        if self.spec != other.spec:
            raise FieldError("field mismatch between operands")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, add_data(self.spec, self.data, other.data))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, sub_data(self.spec, self.data, other.data))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, mul_data(self.spec, self.data, other.data))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, neg_data(self.spec, self.data))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, inv_data(self.spec, self.data))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return is_zero_data(self.spec, self.data)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.spec, pow_data(self.spec, self.data, e))


def field_arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """Spec-surface arithmetic dispatcher."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise FieldError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Irreducible polynomial search


_LEX_SCAN_LIMIT = 4096


def find_irreducible(spec: FieldSpec, d: int) -> Tuple[FieldElement, ...]:
    """A monic irreducible polynomial of degree d, deterministic per
    (field, degree), so towers built from it are reproducible.

    Candidate coefficient vectors are scanned in ascending mixed-radix
    order first (small classics like x^4+x+1 come out of this phase); over
    large fields that prefix can consist entirely of degenerate families
    (e.g. linearized polynomials x^4+cx+c', which are never irreducible),
    so after a bounded scan the search switches to seeded uniform sampling,
    where irreducibles have density about 1/d."""
    if d < 1:
        raise FieldError("degree must be >= 1")
    q = spec.size
    one = spec.one_data()
    for idx in range(min(q ** d, _LEX_SCAN_LIMIT)):
        coeffs = []
        v = idx
        for _ in range(d):
            coeffs.append(spec.element_from_int(v % q))
            v //= q
        f = coeffs + [one]
        if _poly_is_irreducible(spec, f):
            return tuple(FieldElement(spec, c) for c in f)
    if q ** d <= _LEX_SCAN_LIMIT:
        raise FieldError("no irreducible polynomial found")  # pragma: no cover
    rng = random.Random(f"irreducible:{spec.p}:{spec.tower!r}:{d}")
    while True:
        coeffs = [spec.element_from_int(rng.randrange(q)) for _ in range(d)]
        f = coeffs + [one]
        if _poly_is_irreducible(spec, f):
            return tuple(FieldElement(spec, c) for c in f)


def extend_by_irreducible(spec: FieldSpec, d: int) -> FieldSpec:
    poly = find_irreducible(spec, d)
    return spec.extend(tuple(c.data for c in poly))


# ---------------------------------------------------------------------------
# Subfield embedding (tower prefix inclusion only)


def embed_data(a, src: FieldSpec, dst: FieldSpec):
    if not src.is_prefix_of(dst):
        raise FieldError(f"{src} is not a tower prefix of {dst}")
    data = a
    spec = src
    while spec.level < dst.level:
        nxt = FieldSpec(dst.p, dst.tower[: spec.level + 1])
        d = nxt.top_degree
        data = (data,) + (spec.zero_data(),) * (d - 1)
        spec = nxt
    return data


def embed(a: FieldElement, src: FieldSpec, dst: FieldSpec) -> FieldElement:
    if a.spec != src:
        raise FieldError("element does not belong to the source field")
    return FieldElement(dst, embed_data(a.data, src, dst))


# ---------------------------------------------------------------------------
# Fast arithmetic engines.
#
# Linear algebra encodes field elements as integer handles:
#   * prime fields: the residue itself;
#   * small extension fields (size <= _TABLE_LIMIT): mixed-radix packed index
#     with exp/log multiplication tables;
#   * larger characteristic-2 towers: bit-packed coefficient vectors with
#     cached basis-product rows;
#   * anything else: interned canonical data with memoized operations.


_TABLE_LIMIT = 1 << 16


def _flatten_digits(spec: FieldSpec, data) -> List[int]:
    if not spec.tower:
        return [data]
    base = spec.base()
    out: List[int] = []
    for c in data:
        out.extend(_flatten_digits(base, c))
    return out


def _unflatten_digits(spec: FieldSpec, digits: Sequence[int]):
    if not spec.tower:
        return digits[0]
    base = spec.base()
    k = base.degree
    return tuple(
        _unflatten_digits(base, digits[i * k : (i + 1) * k])
        for i in range(spec.top_degree)
    )


def _pack_index(spec: FieldSpec, data) -> int:
    digits = _flatten_digits(spec, data)
    out = 0
    for d in reversed(digits):
        out = out * spec.p + d
    return out


def _unpack_index(spec: FieldSpec, idx: int):
    digits = []
    for _ in range(spec.degree):
        digits.append(idx % spec.p)
        idx //= spec.p
    return _unflatten_digits(spec, digits)


class _PrimeOps:
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.zero = 0
        self.one = 1 % spec.p

    def encode(self, data) -> int:
        return data

    def decode(self, h: int):
        return h

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return pow(a, self.p - 2, self.p)


def _factor_small(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class _TowerVec:
    """Coefficient-vector arithmetic for the top level of a tower, with
    coefficients as base-engine handles.  All supported base engines use
    bit-/radix-packed handles, so (un)packing is pure integer radix work.
    Used to build the big lookup structures without recursive data
    arithmetic."""

    def __init__(self, spec: FieldSpec):
        base = spec.base()
        self.bops = get_ops(base)
        self.bsize = base.size
        self.d = spec.top_degree
        # monic reduction polynomial: low coefficients only
        self.red = [self.bops.encode(c) for c in spec.tower[-1][:-1]]

    def unpack(self, h: int) -> List[int]:
        out = []
        for _ in range(self.d):
            out.append(h % self.bsize)
            h //= self.bsize
        return out

    def pack(self, vec: Sequence[int]) -> int:
        out = 0
        for h in reversed(vec):
            out = out * self.bsize + h
        return out

    def mul(self, av: Sequence[int], bv: Sequence[int]) -> List[int]:
        b = self.bops
        d = self.d
        conv = [b.zero] * (2 * d - 1)
        for i, x in enumerate(av):
            if x == b.zero:
                continue
            for j, y in enumerate(bv):
                if y != b.zero:
                    conv[i + j] = b.add(conv[i + j], b.mul(x, y))
        red = self.red
        for m in range(2 * d - 2, d - 1, -1):
            c = conv[m]
            if c != b.zero:
                for i in range(d):
                    conv[m - d + i] = b.sub(conv[m - d + i], b.mul(c, red[i]))
        return conv[:d]

    def pow(self, av: Sequence[int], e: int) -> List[int]:
        out = [self.bops.one] + [self.bops.zero] * (self.d - 1)
        acc = list(av)
        while e:
            if e & 1:
                out = self.mul(out, acc)
            e >>= 1
            if e:
                acc = self.mul(acc, acc)
        return out


class _TableOps:
    """exp/log multiplication for extension fields of size <= _TABLE_LIMIT."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        q = spec.size
        self.q = q
        self.zero = 0
        self.one = _pack_index(spec, spec.one_data())
        tv = _TowerVec(spec)
        g = self._find_generator(tv)
        exp = [self.one] * (q - 1)
        log = [0] * q
        acc = [tv.bops.one] + [tv.bops.zero] * (tv.d - 1)
        for i in range(1, q - 1):
            acc = tv.mul(acc, g)
            h = tv.pack(acc)
            exp[i] = h
            log[h] = i
        log[self.one] = 0
        self.exp = exp
        self.log = log
        self._is_char2 = spec.p == 2

    def _find_generator(self, tv: "_TowerVec"):
        q = self.q
        primes = _factor_small(q - 1)
        one_vec = [tv.bops.one] + [tv.bops.zero] * (tv.d - 1)
        for i in range(2, q):
            g = tv.unpack(i)
            if all(tv.pow(g, (q - 1) // ell) != one_vec for ell in primes):
                return g
        raise FieldError("no multiplicative generator found")  # pragma: no cover

    def encode(self, data) -> int:
        return _pack_index(self.spec, data)

    def decode(self, h: int):
        return _unpack_index(self.spec, h)

    def add(self, a, b):
        if self._is_char2:
            return a ^ b
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self._is_char2:
            return a
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]


class _GF2TowerOps:
    """Bit-packed arithmetic for characteristic-2 towers of any size.

    A handle is the k-bit coefficient vector over GF(2) with respect to the
    product basis of the tower.  Multiplication by a fixed element is
    GF(2)-linear, so per-element row maps (images of all basis vectors) are
    cached; products then reduce to a few XORs.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.k = spec.degree
        self.zero = 0
        self.one = _pack_index(spec, spec.one_data())
        k = self.k
        tv = _TowerVec(spec)
        kb = spec.base().degree  # bits per base-field handle
        d = tv.d
        bm = [[0] * k for _ in range(k)]
        for i in range(k):
            ci, ui = divmod(i, kb)
            av = [tv.bops.zero] * d
            av[ci] = 1 << ui
            for j in range(k):
                cj, uj = divmod(j, kb)
                bv = [tv.bops.zero] * d
                bv[cj] = 1 << uj
                prod = tv.mul(av, bv)
                h = 0
                for c in range(d):
                    h |= prod[c] << (c * kb)
                bm[i][j] = h
        self._basis_mul = bm
        self._rowmaps = {}
        self._mul_cache = {}
        self._inv_cache = {}

    def encode(self, data) -> int:
        return _pack_index(self.spec, data)

    def decode(self, h: int):
        return _unpack_index(self.spec, h)

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def _rowmap(self, a):
        rm = self._rowmaps.get(a)
        if rm is None:
            bm = self._basis_mul
            rm = [0] * self.k
            x = a
            i = 0
            while x:
                if x & 1:
                    row = bm[i]
                    for j in range(self.k):
                        rm[j] ^= row[j]
                x >>= 1
                i += 1
            self._rowmaps[a] = rm
        return rm

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if a == self.one:
            return b
        if b == self.one:
            return a
        key = (a, b) if a <= b else (b, a)
        out = self._mul_cache.get(key)
        if out is None:
            rm = self._rowmap(key[0])
            x = key[1]
            out = 0
            j = 0
            while x:
                if x & 1:
                    out ^= rm[j]
                x >>= 1
                j += 1
            self._mul_cache[key] = out
        return out

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        out = self._inv_cache.get(a)
        if out is None:
            # a^(2^k - 2) by square and multiply
            out = self.one
            acc = a
            e = (1 << self.k) - 2
            while e:
                if e & 1:
                    out = self.mul(out, acc)
                e >>= 1
                if e:
                    acc = self.mul(acc, acc)
            self._inv_cache[a] = out
        return out


class _GenericOps:
    """Interned-data fallback for large towers of odd characteristic."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._data = []
        self._index = {}
        self.zero = self.encode(spec.zero_data())
        self.one = self.encode(spec.one_data())
        self._add_cache = {}
        self._mul_cache = {}
        self._neg_cache = {}
        self._inv_cache = {}

    def encode(self, data) -> int:
        h = self._index.get(data)
        if h is None:
            h = len(self._data)
            self._data.append(data)
            self._index[data] = h
        return h

    def decode(self, h: int):
        return self._data[h]

    def add(self, a, b):
        key = (a, b) if a <= b else (b, a)
        out = self._add_cache.get(key)
        if out is None:
            out = self.encode(add_data(self.spec, self._data[a], self._data[b]))
            self._add_cache[key] = out
        return out

    def neg(self, a):
        out = self._neg_cache.get(a)
        if out is None:
            out = self.encode(neg_data(self.spec, self._data[a]))
            self._neg_cache[a] = out
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        key = (a, b) if a <= b else (b, a)
        out = self._mul_cache.get(key)
        if out is None:
            out = self.encode(mul_data(self.spec, self._data[a], self._data[b]))
            self._mul_cache[key] = out
        return out

    def inv(self, a):
        out = self._inv_cache.get(a)
        if out is None:
            out = self.encode(inv_data(self.spec, self._data[a]))
            self._inv_cache[a] = out
        return out


_OPS_CACHE: dict = {}


def get_ops(spec: FieldSpec):
    ops = _OPS_CACHE.get(spec)
    if ops is None:
        if not spec.tower:
            ops = _PrimeOps(spec)
        elif spec.size <= _TABLE_LIMIT:
            ops = _TableOps(spec)
        elif spec.p == 2:
            ops = _GF2TowerOps(spec)
        else:
            ops = _GenericOps(spec)
        _OPS_CACHE[spec] = ops
    return ops


@lru_cache(maxsize=None)
def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
