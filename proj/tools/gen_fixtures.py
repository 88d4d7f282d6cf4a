#!/usr/bin/env python3
"""Generate the cubulation fixtures in data/fixtures/.

Each surface is the double of a planar domain D (the square [0,10]^2 minus g
small square holes).  The curve collection is the boundary of D (the perimeter
P and one curve B<i> around each hole) plus the doubles of polyline arcs drawn
in D between boundary components.  See docs/fixtures.md.
"""

import argparse
import itertools
import json
import math
import sys
from pathlib import Path

HOLE = 0.5
CENTRE = (5.0, 5.0)


def start_end(side):
    arc, o = side
    return (arc, 0) if o > 0 else (arc, 1)


def finish_end(side):
    arc, o = side
    return (arc, 1) if o > 0 else (arc, 0)


def trace_faces(rot):
    """Faces of a map given ccw rotations of half-edges (arc, end); face on the left."""
    where = {}
    for v, cyc in enumerate(rot):
        for i, e in enumerate(cyc):
            where[e] = (v, i)
    arcs = sorted({e[0] for e in where}, key=repr)
    seen, faces = set(), []
    for arc in arcs:
        for o in (1, -1):
            if (arc, o) in seen:
                continue
            sides, s = [], (arc, o)
            while s not in seen:
                seen.add(s)
                sides.append(s)
                v, i = where[finish_end(s)]
                out = rot[v][(i - 1) % len(rot[v])]
                s = (out[0], 1 if out[1] == 0 else -1)
            faces.append(sides)
    return faces


def rotation_from_faces(faces):
    """Inverse of trace_faces: vertices as ccw half-edge cycles."""
    ccw_next = {}
    for sides in faces:
        for k, s in enumerate(sides):
            t = sides[(k + 1) % len(sides)]
            out = start_end(t)
            assert out not in ccw_next, ("corner reused", out)
            ccw_next[out] = finish_end(s)
    rot, seen = [], set()
    for e in sorted(ccw_next, key=repr):
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        while ccw_next[cyc[-1]] != e:
            cyc.append(ccw_next[cyc[-1]])
            seen.add(cyc[-1])
        rot.append(cyc)
    return rot


class System:
    """Closed curve system: regions (cyclic side lists) over arcs tagged by curve family."""

    def __init__(self, regions, family):
        self.regions = regions
        self.family = family

    def rotation(self):
        return rotation_from_faces(self.regions)

    def euler(self):
        return len(self.rotation()) - len(self.family) + len(self.regions)

    def curves(self):
        """arc -> curve id, walking straight through 4-valent vertices."""
        parent = {a: a for a in self.family}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        opposite = {}
        for cyc in self.rotation():
            assert len(cyc) == 4, "vertex of valence %d" % len(cyc)
            for i in range(4):
                opposite[cyc[i]] = cyc[(i + 2) % 4]
                parent[find(cyc[i][0])] = find(cyc[(i + 2) % 4][0])
        return {a: find(a) for a in self.family}, opposite

    def problems(self):
        curve, _ = self.curves()
        crossing = set()
        for cyc in self.rotation():
            c1, c2 = curve[cyc[0][0]], curve[cyc[1][0]]
            if c1 == c2:
                return ["curve crosses itself"]
            crossing |= {(c1, c2), (c2, c1)}
        out = []
        for k, sides in enumerate(self.regions):
            n = len(sides)
            if n < 4:
                out.append("region %d has %d sides" % (k, n))
            for i, j in itertools.combinations(range(n), 2):
                ci, cj = curve[sides[i][0]], curve[sides[j][0]]
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if ci == cj:
                    out.append("region %d repeats %s" % (k, self.family[sides[i][0]]))
                elif not adjacent and (ci, cj) in crossing:
                    out.append("region %d: %s and %s osculate" %
                               (k, self.family[sides[i][0]], self.family[sides[j][0]]))
        return out


# --- planar domain ---------------------------------------------------------------

def boundary_angle(centre, p):
    return math.atan2(p[1] - centre[1], p[0] - centre[0]) % (2 * math.pi)


def seg_intersection(p, q, r, s):
    d = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    if abs(d) < 1e-12:
        return None
    t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / d
    u = ((r[0] - p[0]) * (q[1] - p[1]) - (r[1] - p[1]) * (q[0] - p[0])) / d
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return t, u
    return None


def domain(holes, arcs):
    """Regions of D as a planar map.

    holes: {name: centre}; arcs: {name: (c0, points..., c1)} where the first and
    last points lie on the boundary of circle c0 / c1 ("P" is the outer square).
    Returns (region side lists, family map).
    """
    centres = dict(holes)
    centres["P"] = CENTRE
    cuts = {name: [] for name in arcs}
    xid = 0
    for a, b in itertools.combinations(sorted(arcs), 2):
        pa, pb = arcs[a][1:-1], arcs[b][1:-1]
        for i in range(len(pa) - 1):
            for j in range(len(pb) - 1):
                hit = seg_intersection(pa[i], pa[i + 1], pb[j], pb[j + 1])
                if hit is None:
                    continue
                t, u = hit
                x = ("X", xid)
                xid += 1
                da = math.atan2(pa[i + 1][1] - pa[i][1], pa[i + 1][0] - pa[i][0])
                db = math.atan2(pb[j + 1][1] - pb[j][1], pb[j + 1][0] - pb[j][0])
                cuts[a].append((i + t, x, da))
                cuts[b].append((j + u, x, db))
    at_crossing = {}
    family = {}
    ends = {c: [] for c in centres}
    for name, spec in arcs.items():
        c0, pts, c1 = spec[0], spec[1:-1], spec[-1]
        stops = sorted(cuts[name])
        for k in range(len(stops) + 1):
            family[(name, k)] = name
        ends[c0].append((boundary_angle(centres[c0], pts[0]), ((name, 0), 0)))
        ends[c1].append((boundary_angle(centres[c1], pts[-1]), ((name, len(stops)), 1)))
        for k, (_, x, ang) in enumerate(stops):
            items = at_crossing.setdefault(x, [])
            items.append(((ang + math.pi) % (2 * math.pi), ((name, k), 1)))
            items.append((ang % (2 * math.pi), ((name, k + 1), 0)))
    rot = []
    for items in at_crossing.values():
        assert len(items) == 4, "triple point"
        rot.append([he for _, he in sorted(items)])
    for c, items in ends.items():
        assert items, "circle %s meets no arc" % c
        items.sort()
        m = len(items)
        for j, (_, he) in enumerate(items):
            nxt, prv = ((c, "s", j), 0), ((c, "s", (j - 1) % m), 1)
            family[(c, "s", j)] = c
            rot.append([he, prv, nxt] if c == "P" else [he, nxt, prv])
    faces = trace_faces(rot)
    assert len(rot) - len(family) + len(faces) == 2, "arcs are not planar as drawn"
    regions = [f for f in faces if len({family[a] for a, _ in f}) > 1]
    assert len(faces) - len(regions) == len(centres), "a region has a single side"
    return regions, family


def double(regions, family, circles):
    """Double of D along its boundary."""
    out, fam = [], {}
    for sides in regions:
        top, bottom = [], []
        for arc, o in sides:
            if family[arc] in circles:
                top.append((arc, o))
                bottom.append((arc, -o))
                fam[arc] = family[arc]
            else:
                top.append((("t",) + arc, o))
                bottom.append((("b",) + arc, -o))
                fam[("t",) + arc] = family[arc]
                fam[("b",) + arc] = family[arc]
        out.append(top)
        out.append(list(reversed(bottom)))
    return System(out, fam)


def surface(holes, arcs):
    regions, family = domain(holes, arcs)
    return double(regions, family, set(holes) | {"P"})


# --- designs ---------------------------------------------------------------------

def chain(prefix, x, ys, names):
    """Vertical chain P(top) -> holes top to bottom -> P(bottom) at abscissa x."""
    arcs = {}
    stops = [("P", (x, 10.0))]
    for y, n in zip(ys, names):
        stops.append((n, (x, y + HOLE)))
        stops.append((n, (x, y - HOLE)))
    stops.append(("P", (x, 0.0)))
    for k in range(0, len(stops), 2):
        (c0, p0), (c1, p1) = stops[k], stops[k + 1]
        arcs["%s%d" % (prefix, k // 2 + 1)] = (c0, p0, p1, c1)
    return arcs


def column(n, x, names):
    ys = [10.0 * (n - i) / (n + 1) for i in range(n)]
    return {m: (x, y) for m, y in zip(names, ys)}, ys


def design_nonseparating(g):
    """g-1 holes in a column at x=3; B<g> at x=7 joined to P by gamma.

    red1, red2 and gamma run along one horizontal line through the middle hole
    of the column.  green leaves the column above that line, goes around the
    right of B<g> crossing gamma once, and returns to the column below it.  In
    genus two, and in odd genus, both of its ends lie on the middle hole.
    Only odd genus fixtures use this design; even genus ones come from
    even_nonseparating.
    """
    names = ["B%d" % i for i in range(1, g)]
    holes, ys = column(g - 1, 3.0, names)
    j = (g - 2) // 2
    mid = ys[j]
    last = "B%d" % g
    holes[last] = (7.0, mid)
    arcs = chain("grey", 3.0, ys, names)
    arcs["red1"] = ("P", (0.0, mid), (2.5, mid), names[j])
    arcs["red2"] = (names[j], (3.5, mid), (6.5, mid), last)
    arcs["gamma"] = (last, (7.5, mid), (10.0, mid), "P")
    if g % 2:
        above = below = names[j]
    else:
        above, below = names[max(j - 1, 0)], names[min(j + 1, len(names) - 1)]
    ya = holes[above][1] + (0.3 if above == names[j] else 0.0)
    yb = holes[below][1] - (0.3 if below == names[j] else 0.0)
    arcs["green"] = (above, (3.5, ya), (5.0, max(ya, mid + 1.5)), (8.5, max(ya, mid + 1.5)),
                     (8.5, min(yb, mid - 1.5)), (5.0, min(yb, mid - 1.5)), (3.5, yb), below)
    return holes, arcs


def design_separating(r, s):
    """r holes in a column left of gamma, s holes right of it; green joins the lowest two."""
    left = ["B%d" % i for i in range(1, r + 1)]
    right = ["B%d" % i for i in range(r + 1, r + s + 1)]
    holes, yl = column(r, 2.5, left)
    more, yr = column(s, 7.5, right)
    holes.update(more)
    arcs = chain("grey", 2.5, yl, left)
    arcs.update(chain("red", 7.5, yr, right))
    arcs["gamma"] = ("P", (5.0, 10.0), (5.0, 0.0), "P")
    a, b = left[-1], right[-1]
    pa, pb = holes[a], holes[b]
    arcs["green"] = (a, (pa[0] + HOLE, pa[1]), (pb[0] - HOLE, pb[1]), b)
    return holes, arcs


def mirror_name(name, k):
    """Family of the mirror image of a curve in the separating design of split (k, k)."""
    if name.startswith("grey"):
        return "red" + name[4:]
    if name.startswith("red"):
        return "grey" + name[3:]
    if name.startswith("B"):
        i = int(name[1:])
        return "B%d" % (i + k if i <= k else i - k)
    return name


def left_half(sysm):
    """Regions on the grey side of gamma."""
    owner = {}
    for k, sides in enumerate(sysm.regions):
        for arc, _ in sides:
            if sysm.family[arc] != "gamma":
                owner.setdefault(arc, []).append(k)
    start = next(k for k, sides in enumerate(sysm.regions)
                 if any(sysm.family[a] == "grey1" for a, _ in sides))
    seen, todo = {start}, [start]
    while todo:
        k = todo.pop()
        for arc, _ in sysm.regions[k]:
            for m in owner.get(arc, []):
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
    return sorted(seen)


def nonseparating_from(sep, voltage):
    """Two-hole double cover A of the left half H, with its boundary circles glued.

    The separating surface is H glued to its mirror image; gamma arc ("t", ...)
    of the top sheet is the mirror of ("b", ...).  Sheet 0 of A's boundary is
    glued to sheet 1 by the lift of that identification.
    """
    def phi(arc):
        return ({"t": "b", "b": "t"}[arc[0]],) + arc[1:]

    regions, fam = [], {}
    for s in (0, 1):
        for k in left_half(sep):
            new = []
            for arc, o in sep.regions[k]:
                f = sep.family[arc]
                if f == "gamma":
                    a = ("G",) + (arc if s == 0 else phi(arc))
                else:
                    v = 1 if f in voltage else 0
                    a = (arc, s if o > 0 else (s + v) % 2)
                new.append((a, o))
                fam[a] = f
            regions.append(new)
    return System(regions, fam)


# --- canonical form for isomorphism --------------------------------------------

def canonical(sysm):
    """Minimum BFS code of the 4-regular map over all starting darts and both orientations."""
    rot = sysm.rotation()
    at = {}
    for v, cyc in enumerate(rot):
        for i, e in enumerate(cyc):
            at[e] = (v, i)

    def other(v, i):
        arc, end = rot[v][i]
        return at[(arc, 1 - end)]

    best = None
    for mirror in (1, -1):
        for v0, cyc in enumerate(rot):
            for i0 in range(len(cyc)):
                label, offset, queue, code = {v0: 0}, {v0: i0}, [v0], []
                qi = 0
                while qi < len(queue):
                    v = queue[qi]
                    qi += 1
                    n = len(rot[v])
                    for k in range(n):
                        w, j = other(v, (offset[v] + mirror * k) % n)
                        if w not in label:
                            label[w] = len(label)
                            offset[w] = j
                            queue.append(w)
                        code.append((label[w], (j - offset[w]) * mirror % len(rot[w])))
                    if best is not None and code > best[:len(code)]:
                        break
                if best is None or code < best:
                    best = code
    return tuple(best)


def pullback(sysm, voltage):
    """Double cover whose sheets swap across arcs of the curves in `voltage`."""
    regions, fam = [], {}
    for s in (0, 1):
        for sides in sysm.regions:
            new = []
            for arc, o in sides:
                v = 1 if sysm.family[arc] in voltage else 0
                sheet = s if o > 0 else (s + v) % 2
                new.append(((arc, sheet), o))
                fam[(arc, sheet)] = sysm.family[arc]
            regions.append(new)
    return System(regions, fam)


def connected(sysm):
    owner = {}
    for k, sides in enumerate(sysm.regions):
        for arc, _ in sides:
            owner.setdefault(arc, []).append(k)
    seen, todo = {0}, [0]
    while todo:
        k = todo.pop()
        for arc, _ in sysm.regions[k]:
            for m in owner[arc]:
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
    return len(seen) == len(sysm.regions)


def to_json(sysm, genus, extra):
    curve, opposite = sysm.curves()
    groups = {}
    for arc, cid in curve.items():
        groups.setdefault(cid, []).append(arc)
    index, flip = {}, {}
    by_family = {}
    for arcs in groups.values():
        by_family.setdefault(sysm.family[arcs[0]], []).append(arcs)
    named = []
    for fam, lists in by_family.items():
        lists.sort(key=lambda arcs: min(repr(a) for a in arcs))
        for i, arcs in enumerate(lists):
            named.append((fam if len(lists) == 1 else "%s.%d" % (fam, i), arcs))
    for name, arcs in named:
        first = min(arcs, key=repr)
        arc, d, order = first, 1, []
        while True:
            order.append((arc, d))
            nxt = opposite[(arc, 1) if d > 0 else (arc, 0)]
            arc, d = nxt[0], (1 if nxt[1] == 0 else -1)
            if arc == first:
                assert d == 1
                break
        assert len(order) == len(arcs)
        for i, (a, dd) in enumerate(order):
            index[a] = (name, i)
            flip[a] = dd
    names = sorted({n for n, _ in index.values()})
    assert len(names) == len(groups), "two curves share a name"
    regions = [[{"arc": [index[a][0], index[a][1]], "orient": o * flip[a]} for a, o in sides]
               for sides in sysm.regions]
    out = {"surface": {"genus": genus}, "curves": names, "regions": regions}
    out.update(extra)
    return out


def even_nonseparating(sep, k):
    """Nonseparating fixture sharing a double cover with the (k, k) separating one."""
    left = sorted({sep.family[a] for r in left_half(sep) for a, _ in sep.regions[r]}
                  - {"P", "green", "gamma"})
    # sheets switch across the hole green ends on, so green lifts to two curves
    rim = "B%d" % k
    for n in range(1, len(left) + 1):
        for volt in itertools.combinations(left, n):
            if rim not in volt:
                continue
            ns = nonseparating_from(sep, set(volt))
            if ns.problems() or not connected(ns):
                continue
            sep_volt = set(volt) | {mirror_name(f, k) for f in volt}
            a, b = pullback(ns, {"gamma"}), pullback(sep, sep_volt)
            if connected(a) and connected(b) and canonical(a) == canonical(b):
                return ns, (["gamma"], sorted(sep_volt))
    raise AssertionError("no nonseparating partner in genus %d" % (2 * k))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent / "data" / "fixtures")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    built = {}
    for g in (2, 3, 4):
        r = g // 2
        sep = surface(*design_separating(r, g - r))
        if g % 2:
            ns, volts = surface(*design_nonseparating(g)), (None, None)
        else:
            ns, volts = even_nonseparating(sep, r)
        for kind, s, volt in (("nonseparating", ns, volts[0]), ("separating", sep, volts[1])):
            problems = s.problems()
            assert s.euler() == 2 - 2 * g, (g, kind, s.euler())
            assert len(s.regions) == 12, (g, kind, len(s.regions))
            assert not problems, (g, kind, problems[:5])
            gluing = {"kind": "nonseparating"} if kind == "nonseparating" else \
                {"kind": "separating", "split": [r, g - r]}
            built[(g, kind)] = [s, gluing, volt]

    for (g, kind), (s, gluing, volt) in sorted(built.items()):
        data = to_json(s, g, {"amalgamating": "gamma", "perimeter": "P", "gluing": gluing})
        if volt is not None:
            data["double_cover"] = {"voltage_curves": sorted(volt)}
        path = args.out / ("genus%d_%s.json" % (g, kind))
        path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        print(path.name, len(data["regions"]), "regions,", len(data["curves"]), "curves",
              file=sys.stderr)


if __name__ == "__main__":
    main()
