"""Shared generators and brute-force oracles for the test-suite."""

import itertools
import random

from hypothesis import strategies as st


def compose(f, g):
    """(f o g)(x) = f(g(x))."""
    return tuple(f[g[x]] for x in range(len(g)))


def perm_power(p, k):
    out = tuple(range(len(p)))
    for _ in range(k):
        out = compose(p, out)
    return out


def random_commuting_pair(rng: random.Random, max_points: int = 8):
    """sigma1 = pi on X and id on Y; sigma2 = pi^k on X and rho on Y; then relabel."""
    m = rng.randint(1, max_points)
    split = rng.randint(0, m)
    xs, ys = list(range(split)), list(range(split, m))
    pi = xs[:]
    rng.shuffle(pi)
    rho = ys[:]
    rng.shuffle(rho)
    s1 = tuple(pi) + tuple(ys)
    s2 = perm_power(tuple(pi), rng.randint(0, 5)) + tuple(rho)
    tau = list(range(m))
    rng.shuffle(tau)
    tau_inv = [0] * m
    for i, t in enumerate(tau):
        tau_inv[t] = i
    conj = lambda s: tuple(tau[s[tau_inv[x]]] for x in range(m))  # noqa: E731
    return conj(s1), conj(s2)


@st.composite
def commuting_pairs(draw, max_points: int = 8):
    return random_commuting_pair(random.Random(draw(st.integers(0, 2 ** 32))), max_points)


def periodic_words(A, n: int) -> int:
    """Number of words w of length n with A[w_i][w_(i+1 mod n)] = 1."""
    size = len(A)
    return sum(1 for w in itertools.product(range(size), repeat=n)
               if all(A[w[i]][w[(i + 1) % n]] for i in range(n)))


def matrices(d: int, lo: int = -3, hi: int = 3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=d, max_size=d), min_size=d, max_size=d).map(
        lambda rows: tuple(tuple(r) for r in rows))


def ord3_brute(x: int) -> int:
    x, k = abs(x), 0
    while x % 3 == 0:
        x //= 3
        k += 1
    return k


def synthetic_interval_sequence(n_max: int = 64):
    """c_n = 5^n + tr(N^n), N = 4 * [[1, -2], [1, 0]] with char poly z^2 - 4z + 32."""
    a, b = (4, -8), (4, 0)
    p = ((1, 0), (0, 1))
    out = []
    for n in range(1, n_max + 1):
        p = ((p[0][0] * a[0] + p[0][1] * b[0], p[0][0] * a[1] + p[0][1] * b[1]),
             (p[1][0] * a[0] + p[1][1] * b[0], p[1][0] * a[1] + p[1][1] * b[1]))
        out.append(5 ** n + p[0][0] + p[1][1])
    return out
