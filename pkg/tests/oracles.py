"""Independent numerical oracles shared by the unit and acceptance tests."""
import numpy as np

from hadamard import catalog


def unit(rng, size):
    return np.exp(2j * np.pi * rng.random(size))


def three_vectors_residual(rng, trials=10_000):
    """Unimodular x + y + z = 0 forces x/z, y/z to be the primitive cube roots.

    Samples are built geometrically: w = x/z must lie on the unit circle and on
    the circle |1 + w| = 1 (so that y = -x - z is unimodular); the two circle
    intersections come from the generic two-circle formula, not from the claim under test.
    """
    z = unit(rng, trials)
    # circles |w| = r0 and |w + 1| = r1, centres a distance d apart
    d, r0, r1 = 1.0, 1.0, 1.0
    a = (d * d + r0 * r0 - r1 * r1) / (2.0 * d)  # from centre 0 along the centre line
    h = np.sqrt(r0 * r0 - a * a)
    side = np.where(rng.random(trials) < 0.5, 1.0, -1.0)
    w = -a + 1j * side * h
    x = z * w
    y = -x - z
    eps = x / z
    res_sum = np.abs(x + y + z)
    res_mod = np.abs(np.abs(y) - 1.0)
    res_root = np.minimum(np.abs(eps - np.exp(2j * np.pi / 3)), np.abs(eps - np.exp(-2j * np.pi / 3)))
    res_sq = np.abs(y / z - eps**2)
    return float(max(res_sum.max(), res_mod.max(), res_root.max(), res_sq.max()))


def four_vectors_residual(rng, trials=10_000):
    """Unimodular x + y + z + t = 0 forces x to cancel one of the others.

    Zero-sum quadruples are built by choosing which slot negates x and filling
    the other two with a cancelling pair; the conclusion is checked directly,
    along with the identity (x+y)(x+z)(x+t) = x^2 s + xyzt conj(s), s = x+y+z+t,
    on unconstrained samples.
    """
    x, v = unit(rng, trials), unit(rng, trials)
    slot = rng.integers(0, 3, trials)
    others = np.stack([-x, v, -v])
    quad = np.empty((3, trials), dtype=complex)
    for k in range(3):
        quad[k] = np.where(slot == k, others[0], np.where((slot + 1) % 3 == k, others[1], others[2]))
    perm = np.argsort(rng.random((3, trials)), axis=0)
    y, z, t = np.take_along_axis(quad, perm, axis=0)
    res_sum = np.abs(x + y + z + t)
    res_pair = np.min(np.abs(np.stack([x + y, x + z, x + t])), axis=0)
    a, b, c, d = (unit(rng, trials) for _ in range(4))
    s = a + b + c + d
    ident = np.abs((a + b) * (a + c) * (a + d) - (a * a * s + a * b * c * d * np.conj(s)))
    return float(max(res_sum.max(), res_pair.max(), ident.max()))


def haagerup_residual(rng, trials=10_000):
    """Im((u+v)(conj s + conj t)(conj u s + conj v t)) for random unimodular u, v, s, t."""
    u, v, s, t = (unit(rng, trials) for _ in range(4))
    val = (u + v) * (np.conj(s) + np.conj(t)) * (np.conj(u) * s + np.conj(v) * t)
    return float(np.abs(val.imag).max())


def family_direction(theta, h=1e-5):
    """Central-difference derivative of the entry phases of h_theta at theta."""
    plus, minus = catalog.h_theta(theta + h), catalog.h_theta(theta - h)
    return np.angle(plus * np.conj(minus)) / (2.0 * h)


def valid_thetas(count):
    """count equispaced points across both domain intervals, endpoints included."""
    half = count // 2
    pos = np.linspace(catalog.THETA_MIN, np.pi, count - half)
    neg = np.linspace(-np.pi, -catalog.THETA_MIN, half)
    return np.concatenate([neg, pos])
