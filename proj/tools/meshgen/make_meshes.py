#!/usr/bin/env python3
"""Generate the benchmark triangulations with Shewchuk's Triangle.

Uses the `triangle` Python binding (pip install triangle), which wraps the
Triangle library itself, and writes the classic .node/.ele/.poly ASCII files
that the solver reads. Boundary markers:

  accuracy_*  : 1 = outer rectangle
  sedov       : 1 = outer box; the initial discontinuity r = 0.08 is an
                interior constraint so the blast starts as a resolved disc
  ffs         : 1 = walls and step, 2 = inflow (x = 0), 3 = outflow (x = 3)
  naca_*      : 1 = airfoil surface, 2 = far-field box

Usage: make_meshes.py <output-dir> [name ...]
"""
import os
import sys

import numpy as np
import triangle


def write_triangle_files(base, out, comment):
    verts = out["vertices"]
    vmark = out.get("vertex_markers", np.zeros((len(verts), 1), dtype=int)).ravel()
    tris = out["triangles"]
    segs = out["segments"]
    smark = out.get("segment_markers", np.ones((len(segs), 1), dtype=int)).ravel()
    # interior constraint segments carry marker 0 and are not boundary edges
    keep = smark != 0
    segs, smark = segs[keep], smark[keep]
    holes = out.get("holes", np.zeros((0, 2)))
    with open(base + ".node", "w") as f:
        f.write(f"{len(verts)} 2 0 1\n")
        for i, (v, m) in enumerate(zip(verts, vmark)):
            f.write(f"{i + 1} {float(v[0])!r} {float(v[1])!r} {int(m)}\n")
        f.write(f"# {comment}\n")
    with open(base + ".ele", "w") as f:
        f.write(f"{len(tris)} 3 0\n")
        for i, t in enumerate(tris):
            f.write(f"{i + 1} {t[0] + 1} {t[1] + 1} {t[2] + 1}\n")
        f.write(f"# {comment}\n")
    with open(base + ".poly", "w") as f:
        f.write("0 2 0 1\n")
        f.write(f"{len(segs)} 1\n")
        for i, (s, m) in enumerate(zip(segs, smark)):
            f.write(f"{i + 1} {s[0] + 1} {s[1] + 1} {int(m)}\n")
        f.write(f"{len(holes)}\n")
        for i, h in enumerate(holes):
            f.write(f"{i + 1} {float(h[0])!r} {float(h[1])!r}\n")
        f.write(f"# {comment}\n")
    print(f"{base}: {len(verts)} vertices, {len(tris)} triangles")


def polygon(points, markers, holes=None):
    n = len(points)
    pslg = {
        "vertices": np.array(points, dtype=float),
        "segments": np.array([[i, (i + 1) % n] for i in range(n)], dtype=int),
        "segment_markers": np.array(markers, dtype=int).reshape(-1, 1),
    }
    if holes:
        pslg["holes"] = np.array(holes, dtype=float)
    return pslg


def merge(a, b):
    off = len(a["vertices"])
    out = {
        "vertices": np.vstack([a["vertices"], b["vertices"]]),
        "segments": np.vstack([a["segments"], b["segments"] + off]),
        "segment_markers": np.vstack([a["segment_markers"], b["segment_markers"]]),
    }
    holes = [h for d in (a, b) for h in d.get("holes", [])]
    if holes:
        out["holes"] = np.array(holes)
    return out


def rectangle(x0, x1, y0, y1, marker):
    return polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], [marker] * 4)


def circle(cx, cy, r, n):
    # interior constraint: marker 0, not a boundary
    t = 2.0 * np.pi * np.arange(n) / n
    return polygon([(cx + r * np.cos(a), cy + r * np.sin(a)) for a in t], [0] * n)


def naca0012(n_side):
    # closed trailing edge, chord [-0.5, 0.5], uniform chordwise spacing
    xc = np.linspace(0.0, 1.0, n_side + 1)
    yt = 0.6 * (0.2969 * np.sqrt(xc) - 0.1260 * xc - 0.3516 * xc**2 + 0.2843 * xc**3 - 0.1036 * xc**4)
    yt[0] = 0.0
    yt[-1] = 0.0
    upper = [(xc[i] - 0.5, yt[i]) for i in range(n_side, 0, -1)]  # TE -> LE (excluding LE)
    lower = [(xc[i] - 0.5, -yt[i]) for i in range(0, n_side)]     # LE -> TE (excluding TE)
    pts = upper + lower
    return polygon(pts, [1] * len(pts), holes=[(0.0, 0.0)])


CASES = {
    "accuracy_1": lambda: (rectangle(-1.5, 1.5, -0.5, 0.5, 1), "pq28a0.0029313"),
    "accuracy_2": lambda: (rectangle(-1.5, 1.5, -0.5, 0.5, 1), "pq28a0.0009751"),
    "accuracy_3": lambda: (rectangle(-1.5, 1.5, -0.5, 0.5, 1), "pq28a0.0002944"),
    "sedov": lambda: (merge(rectangle(-0.75, 0.75, -0.75, 0.75, 1), circle(0.0, 0.0, 0.08, 16)), "pq28a0.000668"),
    "ffs": lambda: (polygon([(0, 0), (0.6, 0), (0.6, 0.2), (3, 0.2), (3, 1), (0, 1)], [1, 1, 1, 3, 1, 2]),
                    "pq28a0.0004862"),
    "naca_coarse": lambda: (merge(rectangle(-3, 3, -3, 3, 2), naca0012(NACA_SIDE_POINTS)), "pq28a0.01"),
    "naca_fine": lambda: (merge(rectangle(-3, 3, -3, 3, 2), naca0012(NACA_SIDE_POINTS)), "pq28a0.002"),
}

NACA_SIDE_POINTS = int(os.environ.get("NACA_SIDE_POINTS", "50"))


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    names = sys.argv[2:] or list(CASES)
    os.makedirs(outdir, exist_ok=True)
    for name in names:
        pslg, switches = CASES[name]()
        out = triangle.triangulate(pslg, switches)
        write_triangle_files(os.path.join(outdir, name), out, f"Triangle switches -{switches}")


if __name__ == "__main__":
    main()
