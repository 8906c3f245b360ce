"""High-precision reference values for nested-polyhedra central configurations.

Works directly from the radial equations at one outer and one inner vertex,
without any symmetry reduction, so it is independent of the Rust pipeline.
Prints JSON with c(t), the mass ratio mu1/mu2 and the threshold delta.
"""
import itertools
import json

import mpmath as mp

mp.mp.dps = 50

OUTER = {
    "tetrahedron": [(1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)],
    "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    "cube": list(itertools.product((1, -1), repeat=3)),
}


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def radial(q, others, v):
    """(sum r^-3 (q_j - q) . v, sum (q_j - q) . v) over the given bodies."""
    k, lin = mp.mpf(0), mp.mpf(0)
    for p in others:
        d = [pj - qj for pj, qj in zip(p, q)]
        r = mp.sqrt(dot(d, d))
        if r == 0:
            continue
        k += dot(d, v) / r**3
        lin += dot(d, v)
    return k, lin


def system(kind, t):
    outer = [tuple(mp.mpf(x) for x in v) for v in OUTER[kind]]
    inner = [tuple(t * x for x in v) for v in outer]
    v0 = outer[0]
    rows = []
    for q in (outer[0], inner[0]):
        rows.append([radial(q, outer, v0), radial(q, inner, v0)])
    return rows


def c_and_ratio(kind, t):
    (a11, a12), (a21, a22) = system(kind, t)
    # a_ij(c) = k - c * lin; det is affine in c
    det = lambda c: (a11[0] - c * a11[1]) * (a22[0] - c * a22[1]) - (a12[0] - c * a12[1]) * (a21[0] - c * a21[1])
    d0, d1 = det(0), det(1)
    c = -d0 / (d1 - d0)
    m11 = a11[0] - c * a11[1]
    m12 = a12[0] - c * a12[1]
    return c, -m12 / m11


def delta(kind):
    f = lambda t: c_and_ratio(kind, t)[1]
    return mp.findroot(f, (mp.mpf("0.3"), mp.mpf("0.9")), solver="anderson")


def main():
    out = {}
    for kind in OUTER:
        samples = {}
        for num, den in ((1, 4), (1, 2), (3, 4)):
            c, r = c_and_ratio(kind, mp.mpf(num) / den)
            samples[f"{num}/{den}"] = {"c": mp.nstr(c, 30), "ratio": mp.nstr(r, 30)}
        d = delta(kind)
        out[kind] = {"samples": samples, "delta": mp.nstr(d, 30), "inv_delta": mp.nstr(1 / d, 30)}
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
