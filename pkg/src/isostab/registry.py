"""The Table-1 registry: parsing, validation, and bit-exact round-trip.

Each family block carries the symmetric pair, multiplicities, deck order,
restricted-root data (multiplicities and squared-length ratios), the
composition coefficients against the per-stage inner products, the pruning
factor, and the expected verdict flags.  Parametric entries hold integer
expressions evaluated per instance.
"""

import os
import re
from fractions import Fraction

from .lattice import RestrictedRootData
from .casimirspec import CompositionRule, stage_coefficients

DEFAULT_PATH = os.path.join(os.path.dirname(__file__), "data", "registry.txt")

_INT_LIT = re.compile(r"(?<![\w.])(\d+)(?![\w.])")


def _fracify(expr):
    return _INT_LIT.sub(r"F(\1)", expr)


def eval_expr(expr, params=None):
    """Evaluate a registry expression exactly (integer literals become
    Fractions, so division stays rational)."""
    env = {"F": Fraction, "min": min, "max": max,
           "True": True, "False": False}
    if params:
        env.update({k: Fraction(v) for k, v in params.items()})
    return eval(_fracify(expr), {"__builtins__": {}}, env)


class FamilyBlock:
    """Raw registry block: ordered key/value strings plus the family id."""

    def __init__(self, fam_id, items):
        self.id = fam_id
        self.items = items       # list of (key, raw value string)

    def get(self, key, default=None):
        for k, v in self.items:
            if k == key:
                return v
        return default


class CaseDescriptor:
    """One instantiated Table-1 row."""

    def __init__(self, block, params=None):
        self.block = block
        self.family_id = block.id
        self.params = dict(params or {})
        g = block.get
        p = self.params
        self.type_label = g("type")
        self.U_label = g("U")
        self.K_label = g("K")
        self.g = int(eval_expr(g("g"), p))
        self.deck_order = int(eval_expr(g("deck_order"), p))
        self.m1 = int(eval_expr(g("m1"), p))
        self.m2 = int(eval_expr(g("m2"), p))
        self.n = int(eval_expr(g("n"), p))
        self.dimK = int(eval_expr(g("dimK"), p))
        self.n_hk = (self.n + 2) * (self.n + 1) // 2 - self.dimK
        pt = g("pair_type")
        self.pair_type = pt if "if" not in pt else str(_eval_choice(pt, p))
        self.gamma0_sq = Fraction(eval_expr(g("gamma0_sq_u"), p))
        self.prune_alpha = Fraction(eval_expr(g("prune_alpha"), p))
        self.stage_scales = [Fraction(eval_expr(x, p))
                             for x in g("stage_scales").split(",")]
        kc = g("kcoeffs")
        if "if" in kc:
            self.kcoeffs = tuple(Fraction(x) for x in eval_expr(kc, p))
        else:
            self.kcoeffs = tuple(Fraction(eval_expr(x, p))
                                 for x in kc.split(","))
        self.stage_forms = [x.strip() for x in g("stage_forms").split(",")]
        self.chain = g("chain")
        self.expected_stable = bool(eval_expr(g("expected_stable"), p))
        self.expected_strict = bool(eval_expr(g("expected_strict"), p))
        self.provenance = g("provenance")
        self.roots = _parse_roots(g("roots"), p, self.pair_type)
        self._validate()

    def _validate(self):
        if self.deck_order != self.g:
            raise ValueError("%s: deck order %d != g %d"
                             % (self.family_id, self.deck_order, self.g))
        total = self.roots.total_multiplicity()
        if total != self.n:
            raise ValueError("%s: sum of root multiplicities %d != n %d"
                             % (self.family_id, total, self.n))
        if self.n_hk <= 0:
            raise ValueError("%s: nonpositive holomorphic Killing nullity"
                             % self.family_id)

    def composition_rule(self):
        return CompositionRule(self.pair_type, self.gamma0_sq)

    def check_kcoeffs(self):
        """Verify the stored K-level coefficients against the abstract rule
        and the stage scale ratios (skipped for the explicit-model family)."""
        if self.stage_forms == ["su2_model"]:
            return True
        scales = list(self.stage_scales)
        while len(scales) < 3:
            scales.append(Fraction(1))
        rule = self.composition_rule()
        b, b1, b2 = stage_coefficients(rule, (scales[0], scales[1], scales[2]))
        stored = list(self.kcoeffs)
        while len(stored) < 3:
            stored.append(Fraction(0))
        want = [b, b1, b2]
        # stored order is (b, b1_or_b2 for the single-stage case, ...)
        if self.pair_type in ("A1", "A1xA1", "A2"):
            return stored[0] == b and stored[1] == 0 and stored[2] == 0
        if self.pair_type in ("B2", "G2"):
            return stored[0] == b and stored[1] == b1 and stored[2] == 0
        return stored[0] == b and stored[1] == b1 and stored[2] == b2

    def label(self):
        if self.params:
            inner = ",".join("%s=%s" % (k, v) for k, v in sorted(self.params.items()))
            return "%s(%s)" % (self.family_id, inner)
        return self.family_id


def _eval_choice(expr, params):
    # pair_type expressions look like "B2 if m == 2 else BC2"
    m = re.match(r"\s*(\w+)\s+if\s+(.*)\s+else\s+(\w+)\s*$", expr)
    if not m:
        raise ValueError("bad conditional %r" % expr)
    cond = eval_expr(m.group(2), params)
    return m.group(1) if cond else m.group(3)


def _parse_roots(raw, params, pair_type):
    raw = raw.strip()
    if raw.startswith("(") and "if" in raw:
        m = re.match(r"\(\s*(.*?)\s*\)\s+if\s+(.*?)\s+else\s+\(\s*(.*?)\s*\)$", raw)
        if not m:
            raise ValueError("bad roots conditional %r" % raw)
        cond = eval_expr(m.group(2), params)
        raw = m.group(1) if cond else m.group(3)
    entries = []
    for part in raw.split(","):
        part = part.strip()
        spec, ratio = part.rsplit(":", 1)
        count, mult = spec.split("*", 1)
        c = int(eval_expr(count, params))
        mu = int(eval_expr(mult, params))
        r = Fraction(eval_expr(ratio, params))
        for i in range(c):
            entries.append(("gamma", mu, r))
    return RestrictedRootData(pair_type, entries, Fraction(1))


class Registry:
    def __init__(self, path=None, text=None):
        self.path = path or os.environ.get("ISOSTAB_REGISTRY", DEFAULT_PATH)
        if text is None:
            with open(self.path, "r", encoding="utf-8") as fh:
                text = fh.read()
        self.text = text
        self.blocks = {}
        self.order = []
        self._parse()

    def _parse(self):
        fam = None
        items = []
        for line in self.text.split("\n"):
            s = line.strip()
            if s.startswith("#") or not s:
                continue
            if s.startswith("family "):
                fam = s.split(None, 1)[1].strip()
                items = []
                continue
            if s == "end":
                if fam is None:
                    raise ValueError("end without family")
                self.blocks[fam] = FamilyBlock(fam, items)
                self.order.append(fam)
                fam = None
                continue
            if "=" not in s:
                raise ValueError("bad registry line %r" % line)
            k, v = s.split("=", 1)
            items.append((k.strip(), v.strip()))
        if fam is not None:
            raise ValueError("unterminated family block %r" % fam)

    def family_ids(self):
        return list(self.order)

    def descriptor(self, fam_id, **params):
        if fam_id not in self.blocks:
            raise KeyError("unknown family %r" % fam_id)
        block = self.blocks[fam_id]
        need = block.get("param")
        if need:
            names = [x.strip() for x in need.split(",")]
            mins = [int(x) for x in block.get("param_min").split(",")]
            for nm, mn in zip(names, mins):
                if nm not in params:
                    raise ValueError("family %s needs parameter %s" % (fam_id, nm))
                if params[nm] < mn:
                    raise ValueError("parameter %s=%s below minimum %d"
                                     % (nm, params[nm], mn))
            params = {nm: int(params[nm]) for nm in names}
        else:
            if params:
                raise ValueError("family %s takes no parameters" % fam_id)
        return CaseDescriptor(block, params)

    def serialize(self):
        """Bit-exact round trip of the registry file."""
        return self.text


_REGISTRY = None


def load_registry(path=None):
    global _REGISTRY
    if path is not None:
        return Registry(path)
    if _REGISTRY is None or os.environ.get("ISOSTAB_REGISTRY", DEFAULT_PATH) != _REGISTRY.path:
        _REGISTRY = Registry()
    return _REGISTRY
