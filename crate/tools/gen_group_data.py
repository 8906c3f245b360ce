"""Writes the S4 and O_h group data files used by the ccsym loader.

S4 irreps are transcribed from the standard table of S4 acting on the four
vertices of a regular tetrahedron. O_h irreps are built as products of the
rotation-group (S4) irreps with the parity character, using signed
permutation matrices on R^3.
"""
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"


def mat_str(m):
    return [[str(Fraction(x)) if not isinstance(x, str) else x for x in row] for row in m]


def s4():
    gens = [[0, 1, 3, 2], [0, 2, 1, 3], [1, 0, 3, 2]]
    w = "-1/2 + sqrt(3)/2*i"
    wb = "-1/2 - sqrt(3)/2*i"
    irreps = [
        ("r1", [[[1]], [[1]], [[1]]]),
        ("r2", [[[-1]], [[-1]], [[1]]]),
        ("r3", [[[0, 1], [1, 0]], [[0, w], [wb, 0]], [[1, 0], [0, 1]]]),
        ("r4", [[[0, 0, 1], [0, 1, 0], [1, 0, 0]], [[1, 0, 0], [0, 0, 1], [0, 1, 0]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]]),
        ("r5", [[[0, 0, -1], [0, -1, 0], [-1, 0, 0]], [[-1, 0, 0], [0, 0, -1], [0, -1, 0]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]]),
    ]
    return {
        "name": "S4",
        "order": 24,
        "notes": [
            "Symmetric group on four points, generated by (3,4), (2,3) and (1,2)(3,4) (written 0-based).",
            "Irreducible representations r1..r5 given on the generators in the listed order.",
            "Composition convention: (p*q)(x) = p(q(x)); matrices multiply in the same order.",
        ],
        "generators": gens,
        "irreps": [{"name": n, "degree": len(ms[0]), "matrices": [mat_str(m) for m in ms]} for n, ms in irreps],
    }


VERTS = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


def apply(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def perm_sign(p):
    s = 1
    for a, b in itertools.combinations(range(len(p)), 2):
        if p[a] > p[b]:
            s = -s
    return s


def scal(k, m):
    return [[k * x for x in row] for row in m]


def oh_irreps(m):
    s = det3(m)
    r = scal(s, m)
    pi = [next(i for i in range(3) if r[i][j] != 0) for j in range(3)]
    sg = perm_sign(pi)
    # permutation action on e_x - e_y, e_y - e_z
    def img(j):
        v = [0, 0, 0]
        v[pi[j]] = 1
        return v
    def coords(v):
        # v = a (e_x - e_y) + b (e_y - e_z)
        a = v[0]
        b = v[0] + v[1]
        assert v[0] + v[1] + v[2] == 0 and -b == v[2]
        return [a, b]
    cols = []
    for (p, q) in [(0, 1), (1, 2)]:
        ip, iq = img(p), img(q)
        cols.append(coords([ip[k] - iq[k] for k in range(3)]))
    e = [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]
    return {
        "A1g": [[1]],
        "A2g": [[sg]],
        "A1u": [[s]],
        "A2u": [[s * sg]],
        "Eg": e,
        "Eu": scal(s, e),
        "T1g": r,
        "T2g": scal(sg, r),
        "T1u": m,
        "T2u": scal(s * sg, r),
    }


def oh():
    c4 = [[0, -1, 0], [1, 0, 0], [0, 0, 1]]
    c3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    inv = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    mats = [c4, c3, inv]
    gens = [[VERTS.index(apply(m, v)) for v in VERTS] for m in mats]
    names = ["A1g", "A2g", "A1u", "A2u", "Eg", "Eu", "T1g", "T2g", "T1u", "T2u"]
    tables = [oh_irreps(m) for m in mats]
    return {
        "name": "O_h",
        "order": 48,
        "notes": [
            "Full octahedral group acting on the six octahedron vertices +x,-x,+y,-y,+z,-z (indices 0..5).",
            "Generators: quarter turn (x,y,z)->(-y,x,z), three-fold turn (x,y,z)->(z,x,y), inversion -I.",
            "Irreps: rotation-group irreps A1, A2, E, T1, T2 times the parity character (g/u).",
            "E uses the basis e_x-e_y, e_y-e_z of the axis-permutation action; T1u is the defining 3x3 action.",
            "Generated by tools/gen_group_data.py.",
        ],
        "generators": gens,
        "irreps": [
            {"name": n, "degree": len(tables[0][n]), "matrices": [mat_str(t[n]) for t in tables]} for n in names
        ],
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for fname, data in [("s4.json", s4()), ("oh.json", oh())]:
        (OUT / fname).write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", OUT / fname, file=sys.stderr)


if __name__ == "__main__":
    main()
