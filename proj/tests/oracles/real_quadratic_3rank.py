"""Independent oracle: 3-rank of the narrow class group of a real quadratic
discriminant D > 0, via cycles of reduced indefinite forms. Used to freeze
expected cubic-field counts (count = (3^r - 1) / 2) into the C++ tests.

Shares no code with the library (which only handles definite forms).
"""
import math
import sys


def isqrt(n):
    return math.isqrt(n)


def is_fundamental(d):
    def squarefree(m):
        m = abs(m)
        p = 2
        while p * p <= m:
            if m % (p * p) == 0:
                return False
            p += 1
        return True
    if d == 1:
        return True
    if d % 4 == 1:
        return squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def normalize(f, D):
    a, b, c = f
    s = isqrt(D)
    # bring b into (sqrt(D) - 2|a|, sqrt(D)] interval mod 2a
    aa = abs(a)
    if aa > s:
        lo = -aa
    else:
        lo = s - 2 * aa
    # choose b' = b mod 2a with lo < b' <= lo + 2|a|
    k = (lo - b) // (2 * aa) + 1
    b2 = b + 2 * aa * k
    c2 = (b2 * b2 - D) // (4 * a)
    return (a, b2, c2)


def is_reduced(f, D):
    a, b, c = f
    r = math.sqrt(D)
    return 0 < b < r and r - b < 2 * abs(a) < r + b


def rho(f, D):
    a, b, c = f
    g = normalize((c, -b, a), D)
    return g


def reduce_form(f, D):
    seen = 0
    while not is_reduced(f, D):
        f = rho(f, D)
        seen += 1
        if seen > 10000:
            raise RuntimeError("no reduction")
    return f


def cycle(f, D):
    out = [f]
    g = rho(f, D)
    while g != f:
        out.append(g)
        g = rho(g, D)
    return out


def xgcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = xgcd(b, a % b)
    return g, y, x - (a // b) * y


def compose(f1, f2, D):
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    g1, u, v = xgcd(a1, a2)
    g, w, z = xgcd(g1, s)
    # u*a1 + v*a2 = g1; w*g1 + z*s = g
    d = g
    A = a1 * a2 // (d * d)
    # B = b2 + 2 a2/d * (v*w*(s - b2) - z*c2)
    B = b2 + 2 * (a2 // d) * (v * w * (s - b2) - z * c2)
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return (A, B, C)


def reduced_forms(D):
    r = math.sqrt(D)
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        if b >= r:
            continue
        m = (D - b * b) // 4
        if (D - b * b) % 4:
            continue
        for a in range(1, m + 1):
            if m % a:
                continue
            for sa in (a, -a):
                c = -m // sa
                f = (sa, b, c)
                if math.gcd(math.gcd(sa, b), c) != 1:
                    continue
                if is_reduced(f, D):
                    out.append(f)
    return out


def three_rank(D):
    forms = set(reduced_forms(D))
    classes = []
    while forms:
        f = next(iter(forms))
        cyc = cycle(f, D)
        for g in cyc:
            forms.discard(g)
        classes.append(cyc)
    ident = reduce_form(normalize((1, D % 2, (D % 2 - D) // 4), D), D)
    principal = None
    for cyc in classes:
        if ident in cyc:
            principal = set(cyc)
    cnt = 0
    for cyc in classes:
        f = cyc[0]
        f3 = reduce_form(normalize(compose(compose(f, f, D), f, D), D), D)
        if f3 in principal:
            cnt += 1
    r = 0
    while 3 ** r < cnt:
        r += 1
    assert 3 ** r == cnt, (D, cnt)
    return r, len(classes)


if __name__ == "__main__":
    lo, hi = int(sys.argv[1]), int(sys.argv[2])
    for d in range(lo, hi + 1):
        if d > 1 and is_fundamental(d) and isqrt(d) ** 2 != d:
            r, h = three_rank(d)
            if r:
                print(d, (3 ** r - 1) // 2)
