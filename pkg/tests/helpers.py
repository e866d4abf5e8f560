import cmath
import random

from hopfiso.datum import random_braiding_datum, random_datum


def numeric(x):
    """Complex value of a scalar, via the embedding zeta_L -> exp(2 pi i / L)."""
    L = x.ctx.L
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / L) for k, c in enumerate(x.coefficients()))


def sample_data(seed, count, ns=(2, 3, 4), Ns=(3, 5)):
    """Alternate between the two random datum generators."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n, N = rng.choice(ns), rng.choice(Ns)
        if k % 2:
            out.append(random_braiding_datum(rng, n, N))
        else:
            out.append(random_datum(rng, n, N))
    return out
