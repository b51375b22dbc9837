"""High-precision reference values for the parameter search (mpmath, 60 digits)."""
from mpmath import mp, mpf, e, log, exp, nsum, inf

mp.dps = 60


def find_n(k):
    n = 1
    while not ((1 - mpf(2) ** -k) ** n < 1 / (e * k * k * n * n)):
        n += 1
    return n


def choose_a(k, n):
    d = mpf(k * k * n * n)
    corr = (1 - 1 / d) ** (2 * k * n)
    for j in range(60, 100):
        a = mpf(j) / 100
        if a * corr > mpf(1) / 2:
            return j, a * corr
    return None, None


def tail(a, m_lo, c):
    # prod_{j > m_lo} (1 - a^j)^(c j), summed in log space to convergence
    s = mpf(0)
    j = m_lo + 1
    while True:
        term = c * j * log(1 - a ** j)
        s += term
        if abs(term) < mpf(10) ** -70:
            break
        j += 1
    return exp(s)


def conditions(k, n, a, b, m):
    p0 = 1 / mpf(k * k * n * n)
    lhs = (1 - mpf(2) ** -k) ** n
    rhs = p0 * (1 - p0) ** (k * k * n * n - 1) * tail(a, m, 2 * k * n)
    return lhs <= rhs, b * tail(a, m, 4) >= mpf(1) / 2


def find_m(k, n, a, b):
    m = 1
    while not all(conditions(k, n, a, b, m)):
        m += 1
    return m


if __name__ == "__main__":
    for k in (1, 2, 3):
        n = find_n(k)
        j, b = choose_a(k, n)
        a = mpf(j) / 100
        m = find_m(k, n, a, b)
        print(f"k={k} N={n} a=0.{j} b={mp.nstr(b, 20)} M={m} cond(M-1)={conditions(k, n, a, b, m - 1)}")
    for aa in ("0.5", "0.65", "0.9"):
        for mm in (0, 5, 23):
            print(aa, mm, mp.nstr(tail(mpf(aa), mm, 4), 25), mp.nstr(tail(mpf(aa), mm, 16), 25))
