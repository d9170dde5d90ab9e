"""Reference implementations of the arithmetic kernels.

Monomials are packed into Python ints, eight bits per variable. A square-zero
variable occupies the low bit of its field, so two monomials sharing one of
them collide exactly when ``a & b & zmask`` is nonzero.
"""

FIELD = 0xFF


def _strip(out, modulus):
    if modulus:
        return {k: v % modulus for k, v in out.items() if v % modulus}
    return {k: v for k, v in out.items() if v}


def mul_terms(a, b, zmask, modulus=0):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    items = list(b.items())
    for ka, ca in a.items():
        for kb, cb in items:
            if ka & kb & zmask:
                continue
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return _strip(out, modulus)


def div_difference(terms, si, sj, modulus=0):
    """Divide by x_i - x_j where the variables sit at bit offsets si, sj.

    Returns (quotient, remainder); the remainder is the x_i = x_j specialisation
    and vanishes exactly when the division is exact.
    """
    q = {}
    r = {}
    ui = 1 << si
    step = (1 << sj) - ui
    qget = q.get
    for key, c in terms.items():
        a = (key >> si) & FIELD
        k = key - ui
        for _ in range(a):
            q[k] = qget(k, 0) + c
            k += step
        rk = key + a * step
        r[rk] = r.get(rk, 0) + c
    return _strip(q, modulus), _strip(r, modulus)


def swap_fields(terms, pairs):
    """Exchange the exponent fields at each (shift_a, shift_b) pair."""
    out = {}
    for key, c in terms.items():
        k = key
        for sa, sb in pairs:
            ea = (k >> sa) & FIELD
            eb = (k >> sb) & FIELD
            if ea != eb:
                k += (eb - ea) << sa
                k += (ea - eb) << sb
        out[k] = c
    return out


class IncrementalRank:
    """Row echelon basis over GF(p) that grows one vector at a time."""

    def __init__(self, length, p):
        self.length = length
        self.p = p
        self.pivots = []
        self.rows = {}

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, vec):
        p = self.p
        v = [x % p for x in vec]
        for c in self.pivots:
            f = v[c]
            if f:
                row = self.rows[c]
                for j in range(c, self.length):
                    if row[j]:
                        v[j] = (v[j] - f * row[j]) % p
        for c in range(self.length):
            if v[c]:
                inv = pow(v[c], -1, p)
                self.rows[c] = [(x * inv) % p for x in v]
                self.pivots.append(c)
                self.pivots.sort()
                return True
        return False
