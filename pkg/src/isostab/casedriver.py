"""The end-to-end pipeline over the Table-1 registry: run a family, compare
with the expected flags, and aggregate Maslov / nullity / Main-Theorem data."""

from fractions import Fraction

from .registry import load_registry
from . import families


class Verdict:
    """Stability summary for one instantiated family."""

    def __init__(self, result):
        self.result = result
        self.desc = result.desc
        self.stable = result.stable
        self.strictly_stable = result.strictly_stable
        self.nullity = result.nullity
        self.n_hk = result.desc.n_hk
        self.min_positive_eigenvalue = result.min_pos
        self.witness = result.witness
        self.rows = result.rows

    def matches_expected(self):
        return (self.stable == self.desc.expected_stable
                and self.strictly_stable == self.desc.expected_strict)

    def summary(self):
        d = self.desc
        bits = ["%s:" % d.label()]
        bits.append("strictly stable" if self.strictly_stable else
                    ("stable (not strictly)" if self.stable else "not stable"))
        bits.append("nullity %d" % self.nullity)
        bits.append("n_hk %d" % self.n_hk)
        if not self.stable and self.witness is not None:
            lam, eig = self.witness
            bits.append("witness %s, eigenvalue %s < %d" % (lam, eig, d.n))
        return ", ".join(bits)


_DRIVERS = {
    "S1xBDII": lambda **kw: families.run_s1bdii(kw["n"]),
    "BDIIxBDII": lambda **kw: families.run_bdiixbdii(kw["p"], kw["q"]),
    "AI2": lambda **kw: families.run_ai2(),
    "a2": lambda **kw: families.run_a2(),
    "AII2": lambda **kw: families.run_aii2(),
    "EIV": lambda **kw: families.run_eiv(),
    "b2": lambda **kw: families.run_b2(),
    "AIII2": lambda **kw: families.run_aiii(kw["m"]),
    "BDI2": lambda **kw: families.run_bdi(kw["m"]),
    "CII2": lambda **kw: families.run_cii(kw["m"]),
    "DIII2": lambda **kw: families.run_diii(),
    "EIII": lambda **kw: families.run_eiii(),
    "g2xg2": lambda **kw: families.run_g2xg2(),
    "G2SO4": lambda **kw: families.run_g2so4(),
}

_RESULT_CACHE = {}


def run_family(family_id, **params):
    """Run the full pipeline for one family instance."""
    key = (family_id, tuple(sorted(params.items())))
    if key not in _RESULT_CACHE:
        if family_id not in _DRIVERS:
            raise KeyError("unknown family %r" % family_id)
        _RESULT_CACHE[key] = Verdict(_DRIVERS[family_id](**params))
    return _RESULT_CACHE[key]


def maslov_number(g, m1, m2, n):
    """Minimal Maslov number 2n/g of the Gauss image; checks the Table-1
    consistency n = g(m1+m2)/2 (g even) or n = g*m1 (g odd)."""
    if g % 2 == 0:
        if 2 * n != g * (m1 + m2):
            raise ValueError("inconsistent data: n != g(m1+m2)/2")
    else:
        if m1 != m2 or n != g * m1:
            raise ValueError("inconsistent data: n != g*m1")
    val = Fraction(2 * n, g)
    if val.denominator != 1:
        raise ValueError("2n/g is not an integer")
    return int(val)


def maslov_for(desc):
    return maslov_number(desc.g, desc.m1, desc.m2, desc.n)


def nullity_identity(family_id, **params):
    """(nullity, n_hk, equal?) for one family instance."""
    v = run_family(family_id, **params)
    return v.nullity, v.n_hk, v.nullity == v.n_hk


def default_grid(max_param=8):
    """The default scan grid over all Table-1 rows."""
    grid = []
    reg = load_registry()
    for fid in reg.family_ids():
        block = reg.blocks[fid]
        pnames = block.get("param")
        if not pnames:
            grid.append((fid, {}))
            continue
        names = [x.strip() for x in pnames.split(",")]
        mins = [int(x) for x in block.get("param_min").split(",")]
        if names == ["n"]:
            for n in range(mins[0], max_param + 1):
                grid.append((fid, {"n": n}))
        elif names == ["m"]:
            for m in range(mins[0], max_param + 1):
                grid.append((fid, {"m": m}))
        elif names == ["p", "q"]:
            for p in range(mins[0], max_param + 1):
                for q in range(p, max_param + 1):
                    grid.append((fid, {"p": p, "q": q}))
        else:
            raise ValueError("unknown parameter scheme %s" % names)
    return grid


def main_theorem_scan(max_param=8, progress=None):
    """Check stable <=> m2 - m1 <= 2 on every non-EIII instance and strict
    stability of EIII over the default grid.  Returns a report dict."""
    report = {"instances": [], "violations": []}
    for fid, params in default_grid(max_param):
        v = run_family(fid, **params)
        d = v.desc
        want_stable = (d.m2 - d.m1) <= 2
        entry = {
            "family": d.label(),
            "m1": d.m1, "m2": d.m2, "n": d.n,
            "stable": v.stable,
            "strictly_stable": v.strictly_stable,
            "nullity": v.nullity,
            "n_hk": v.n_hk,
            "maslov": maslov_for(d),
        }
        report["instances"].append(entry)
        if fid == "EIII":
            ok = v.strictly_stable and (d.m1, d.m2) == (6, 9)
        else:
            ok = v.stable == want_stable
        if not ok:
            report["violations"].append(entry)
        if progress:
            progress(entry)
    report["ok"] = not report["violations"]
    return report
