"""Equivariant Poincaré polynomials of toric arrangement complements."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .lattice import (
    exterior_traces,
    is_stable,
    NotStable,
    power_traces,
    smith_quotient,
    torsion_fixed_count,
)
from .poset import fixed_poset
from .roots import RootSystem, build
from .weyl import WeylElement, conjugacy_classes, enumerate_group, identity_element


class NonPolynomialResult(ArithmeticError):
    pass


def poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_eval(a, t):
    s = 0
    for c in reversed(a):
        s = s * t + c
    return s


def format_poly(coeffs, var="t", descending=True):
    """Render e.g. ``19t^2 + 8t + 1``."""
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            body = mono if abs(c) == 1 else "%d%s" % (abs(c), mono)
        terms.append((c < 0, body))
    if not terms:
        return "0"
    if descending:
        terms.reverse()
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def intersection_poincare(module, g, quotient=None):
    """P(Z, t)(g) for the intersection with module of exponents ``module``.

    The number of g-fixed components times the exterior-power traces of g
    on the free quotient M/sat(N).
    """
    mat = g.matrix if isinstance(g, WeylElement) else g
    if not is_stable(mat, module):
        raise NotStable("element does not stabilize %s" % module)
    if quotient is None:
        quotient = smith_quotient(module)
    m = torsion_fixed_count(mat, quotient)
    f = quotient.free_rank
    if f == 0:
        return [m]
    free = quotient.free_action(mat)
    e = exterior_traces(power_traces(free, f), f)
    return [m * x for x in e]


def complement_poincare(source, g=None, poset=None):
    """Sum over g-stable intersections of mu(Z) (-t)^codim(Z) P(Z, t)(g)."""
    if g is None:
        g = identity_element(source.rank)
    if poset is None:
        poset = fixed_poset(source, g)
    total = [0]
    for nd in poset.nodes:
        if nd.mobius == 0:
            continue
        r = nd.rank
        coeff = nd.mobius * (-1) ** r
        term = [0] * r + [coeff * c for c in intersection_poincare(nd.module, g)]
        total = poly_add(total, term)
    return poly_trim(total)


def compactly_supported(p, n):
    """t^(2n) p(1/t) as a coefficient list; fails unless deg p <= 2n."""
    p = poly_trim(p)
    if len(p) - 1 > 2 * n:
        raise NonPolynomialResult("degree %d exceeds 2n = %d" % (len(p) - 1, 2 * n))
    out = [0] * (2 * n + 1)
    for i, c in enumerate(p):
        out[2 * n - i] += c
    return out


@dataclass
class ClassPolynomial:
    system: object
    classes: object
    coeffs: list

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self):
        return max(len(c) for c in self.coeffs) - 1

    def padded(self):
        d = self.system.rank + 1
        return [list(c) + [0] * (d - len(c)) for c in self.coeffs]

    def identity_poincare(self):
        return self.coeffs[0]

    def at(self, t):
        return [poly_eval(c, t) for c in self.coeffs]

    def to_json(self):
        return {
            "system": self.system.name,
            "classes": [
                {"label": lab, "size": size, "poincare": list(c)}
                for lab, size, c in zip(self.classes.labels, self.classes.sizes, self.padded())
            ],
        }


def _class_job(args):
    type_label, rank, matrix = args
    rs = build(type_label, rank)
    return complement_poincare(rs, WeylElement(matrix))


def equivariant_table(rs, classes=None, workers=None, executor=None, representatives=None):
    """P(T_Phi, t)(g) for one representative of every conjugacy class.

    ``executor`` reuses an existing pool; ``representatives`` replaces the
    default class representatives (any member of each class gives the
    same polynomial).
    """
    if classes is None:
        classes = conjugacy_classes(enumerate_group(rs))
    if workers is None:
        workers = int(os.environ.get("TORICARR_WORKERS", "1"))
    if representatives is None:
        representatives = classes.representatives
    reps = [g.matrix for g in representatives]
    jobs = [(rs.type_label, rs.rank, m) for m in reps]
    if executor is not None:
        coeffs = list(executor.map(_class_job, jobs))
    elif workers <= 1:
        coeffs = [complement_poincare(rs, WeylElement(m)) for m in reps]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            coeffs = list(ex.map(_class_job, jobs))
    return ClassPolynomial(rs, classes, coeffs)


def is_root_system(source):
    return isinstance(source, RootSystem)
