"""Vectorial Boolean functions over GF(2^n).

The 2^n-entry lookup table is the canonical form; the univariate
polynomial view is interpolated lazily and cached (idempotent fill, so a
concurrent first computation is harmless).  Boolean functions are
bit-packed ints.
"""

import numpy as np

from .errors import ContextMismatch, ZeroDirection
from .linmap import LinearizedPoly


class BooleanFunction:
    """Boolean function on GF(2^n), truth table packed into one int."""

    __slots__ = ("n", "bits")

    def __init__(self, n, bits):
        self.n = n
        self.bits = int(bits) & ((1 << (1 << n)) - 1)

    @classmethod
    def from_array(cls, n, arr):
        packed = np.packbits(np.asarray(arr, dtype=np.uint8), bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    def bit(self, x):
        return (self.bits >> x) & 1

    def weight(self):
        return self.bits.bit_count()

    def to_array(self):
        size = 1 << self.n
        raw = self.bits.to_bytes((size + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]

    def to_signs(self):
        """(-1)^f(x) as an int64 array."""
        return 1 - 2 * self.to_array().astype(np.int64)

    def derivative(self, a):
        if a == 0:
            raise ZeroDirection("derivative direction must be nonzero")
        arr = self.to_array()
        idx = np.arange(1 << self.n) ^ a
        return BooleanFunction.from_array(self.n, arr[idx] ^ arr)

    def algebraic_degree(self):
        """Degree of the multivariate normal form (Moebius transform)."""
        anf = self.to_array().copy()
        for i in range(self.n):
            step = 1 << i
            sel = (np.arange(1 << self.n) & step) != 0
            anf[sel] ^= anf[np.arange(1 << self.n)[sel] ^ step]
        on = np.nonzero(anf)[0]
        if on.size == 0:
            return 0
        return max(int(m).bit_count() for m in on)

    def __xor__(self, other):
        return BooleanFunction(self.n, self.bits ^ other.bits)

    def __eq__(self, other):
        return (
            isinstance(other, BooleanFunction)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, weight={self.weight()})"


class UnivariatePoly:
    """Sparse univariate polynomial sum delta_j x^j, exponents < 2^n."""

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = {int(j): int(d) for j, d in coeffs.items() if d}
        for j in self.coeffs:
            if not 0 <= j < ctx.order:
                raise ValueError(f"exponent {j} out of range for n={ctx.n}")

    def evaluate(self, x):
        acc = 0
        for j, d in self.coeffs.items():
            acc ^= self.ctx.mul(d, self.ctx.pow(x, j))
        return acc

    def to_vbf(self):
        return from_univariate(self)

    def to_text(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j in sorted(self.coeffs, reverse=True):
            d = self.coeffs[j]
            if j == 0:
                terms.append(f"0x{d:x}")
            elif d == 1:
                terms.append(f"x^{j}")
            else:
                terms.append(f"0x{d:x}*x^{j}")
        return " + ".join(terms)

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePoly)
            and self.ctx.same_as(other.ctx)
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UnivariatePoly({self.to_text()})"


class VBF:
    """Vectorial Boolean function as an immutable lookup table."""

    def __init__(self, ctx, lut):
        lut = np.asarray(lut, dtype=np.int64)
        if lut.shape != (ctx.order,):
            raise ValueError(f"LUT must have {ctx.order} entries")
        if lut.min() < 0 or lut.max() >= ctx.order:
            raise ValueError("LUT entries out of field range")
        self.ctx = ctx
        self.lut = lut.copy()
        self.lut.setflags(write=False)
        self._uni = None

    def __call__(self, x):
        return int(self.lut[x])

    def __add__(self, other):
        if isinstance(other, BooleanFunction):
            return self.add_boolean(other)
        if not self.ctx.same_as(other.ctx):
            raise ContextMismatch("VBF addition across different contexts")
        return VBF(self.ctx, self.lut ^ other.lut)

    def add_boolean(self, f):
        """Pointwise F(x) + f(x), the bit embedded as the field element 1."""
        return VBF(self.ctx, self.lut ^ f.to_array().astype(np.int64))

    def __eq__(self, other):
        return (
            isinstance(other, VBF)
            and self.ctx.same_as(other.ctx)
            and bool(np.array_equal(self.lut, other.lut))
        )

    def __hash__(self):
        return hash((self.ctx.n, self.ctx.modulus, self.lut.tobytes()))

    def component(self, lam):
        """Boolean component x -> Tr(lam * F(x))."""
        bits = self.ctx.trace_table()[self.ctx.mulcv(lam, self.lut)]
        return BooleanFunction.from_array(self.ctx.n, bits)

    def derivative(self, a):
        if a == 0:
            raise ZeroDirection("derivative direction must be nonzero")
        idx = np.arange(self.ctx.order) ^ a
        return VBF(self.ctx, self.lut[idx] ^ self.lut)

    def to_univariate(self):
        if self._uni is None:
            self._uni = _interpolate(self)
        return self._uni

    def algebraic_degree(self):
        """Max binary weight over exponents with nonzero coefficient (0 for the zero map)."""
        coeffs = self.to_univariate().coeffs
        if not coeffs:
            return 0
        return max(j.bit_count() for j in coeffs)

    def __repr__(self):
        return f"VBF(n={self.ctx.n})"


class Form1:
    """Quadratic family F(x) = L1(x^3) + L2(x^9)."""

    def __init__(self, L1, L2):
        if not L1.ctx.same_as(L2.ctx):
            raise ContextMismatch("L1 and L2 must share a field context")
        self.L1 = L1
        self.L2 = L2
        self.ctx = L1.ctx

    def realize(self):
        ctx = self.ctx
        cube = ctx.pow_table(3)
        ninth = ctx.pow_table(9)
        return VBF(ctx, self.L1.lut()[cube] ^ self.L2.lut()[ninth])

    def __repr__(self):
        return f"Form1(L1={self.L1.to_text()}, L2={self.L2.to_text()})"


def realize(form):
    return form.realize()


def gram_elements(F: VBF):
    """phi(e_i, e_j) = F(e_i+e_j)+F(e_i)+F(e_j)+F(0) as an (n, n) table.

    For quadratic F this is the Gram table of the symmetric biadditive form
    attached to F; several rank computations start from it.
    """
    ctx = F.ctx
    basis = 1 << np.arange(ctx.n, dtype=np.int64)
    pairs = basis[:, None] ^ basis[None, :]
    return F.lut[pairs] ^ F.lut[basis][:, None] ^ F.lut[basis][None, :] ^ int(F.lut[0])


def deriv_basis_table(F: VBF):
    """W[a, j] = F(a+e_j)+F(a)+F(e_j)+F(0) for every a (shape (2^n, n))."""
    ctx = F.ctx
    idx = np.arange(ctx.order, dtype=np.int64)
    cols = []
    for j in range(ctx.n):
        e = 1 << j
        cols.append(F.lut[idx ^ e] ^ F.lut ^ int(F.lut[e]) ^ int(F.lut[0]))
    return np.stack(cols, axis=1)


def power_map(ctx, d):
    """The monomial x^d as a VBF."""
    return VBF(ctx, ctx.pow_table(d))


def linear_vbf(L: LinearizedPoly):
    return VBF(L.ctx, L.lut())


def from_univariate(p: UnivariatePoly):
    ctx = p.ctx
    N = ctx.mult_order
    lut = np.zeros(ctx.order, dtype=np.int64)
    pts = ctx.antilog_table[:N]
    logs = np.arange(N, dtype=np.int64)
    for j, d in p.coeffs.items():
        if j == 0:
            lut ^= d
        else:
            ld = int(ctx.log_table[d])
            lut[pts] ^= ctx.antilog_table[(ld + logs * j) % N]
    return VBF(ctx, lut)


def _interpolate(F: VBF):
    """Coefficients delta_j with F(x) = sum delta_j x^j, exponents 0..2^n-1."""
    ctx = F.ctx
    N = ctx.mult_order
    pts = ctx.antilog_table[:N]
    G = F.lut[pts]
    lg = ctx.log_table[G]  # sentinel for zeros makes products vanish
    i_idx = np.arange(N, dtype=np.int64)
    coeffs = {0: int(F.lut[0])}
    chunk = max(1, (1 << 22) // max(N, 1))
    for start in range(1, N, chunk):
        ms = np.arange(start, min(start + chunk, N), dtype=np.int64)
        expo = (-np.outer(ms, i_idx)) % N
        vals = ctx.antilog_table[lg[None, :] + expo]
        deltas = np.bitwise_xor.reduce(vals, axis=1)
        for m, d in zip(ms, deltas):
            if d:
                coeffs[int(m)] = int(d)
    dN = int(F.lut[0]) ^ int(np.bitwise_xor.reduce(G))
    if dN:
        coeffs[N] = dN
    return UnivariatePoly(ctx, coeffs)


def to_univariate(F: VBF):
    return F.to_univariate()


def save_lut(F: VBF, path):
    """One hex element per line, line index = input x."""
    with open(path, "w") as fh:
        for v in F.lut:
            fh.write(format(int(v), "x") + "\n")


def load_lut(ctx, path):
    with open(path) as fh:
        vals = [int(line.strip(), 16) for line in fh if line.strip()]
    return VBF(ctx, vals)
