"""Randomized (region, level) instances for the lemma checks."""
import random
from dataclasses import dataclass

from pushcurve.pushing import _sample_points, orbit_vertex, simple_pool
from pushcurve.regions import configuration, region_of


@dataclass
class Instance:
    source: str  # "orbit", "same-fiber" or "other-fiber"
    cfg: object
    k: int
    label: str


def lemma_instances(pm, base, frame, n, seed=2024, pool_cap=3):
    """n instances: orbit regions, nearby regions of the base curve, and
    regions of other simple curves around the push axis."""
    rng = random.Random(seed)
    m = frame.m
    grp = pm.grp
    c0 = base.vertex.curve
    others = [c for c in simple_pool(grp, pool_cap) if not c.same_curve(c0)]
    pts = _sample_points(grp, [pm.witness(j) for j in range(-1, m + 2)], 1)
    out = []
    for i in range(n):
        kind = ("orbit", "same-fiber", "other-fiber")[i % 3]
        if kind == "orbit":
            j = rng.randrange(-1, m + 2)
            r = orbit_vertex(pm, base.vertex, j).region
            label = f"orbit {j}"
        else:
            c = c0 if kind == "same-fiber" else rng.choice(others)
            p = rng.choice(pts)
            r = region_of(c, p)
            label = f"{c} at {p.word}"
        out.append(Instance(kind, configuration(r), rng.randrange(0, m), label))
    return out


def negative_controls(pm, base, frame):
    """Orbit regions paired with levels they are not above (i=1 frame)."""
    m = frame.m
    out = []
    for j in range(1, m):
        cfg = configuration(orbit_vertex(pm, base.vertex, j).region)
        out.append(("lemma31", cfg, j))
        out.append(("lemma32", cfg, j))
    cfg0 = configuration(base.vertex.region)
    out.append(("lemma31", cfg0, m))
    out.append(("lemma32", cfg0, 0))
    for j in (m - 1, m):
        out.append(("lemma33", configuration(orbit_vertex(pm, base.vertex, j).region), None))
    return out


def scan_regions(pm, base, frame, n_curves=8, pool_cap=3):
    """Every region of the first simple curves around the axis, in a fixed order."""
    grp = pm.grp
    c0 = base.vertex.curve
    curves = [c0] + [c for c in simple_pool(grp, pool_cap) if not c.same_curve(c0)][: n_curves - 1]
    pts = _sample_points(grp, [pm.witness(j) for j in range(-1, frame.m + 2)], 1)
    for c in curves:
        for p in pts:
            yield configuration(region_of(c, p))
