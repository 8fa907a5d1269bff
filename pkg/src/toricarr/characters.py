"""Character tables of Weyl groups and decomposition of class polynomials."""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt, lcm, prod

import numpy as np

from .lattice import power_traces, symmetric_traces
from .weyl import class_invariants


class CharacterError(ArithmeticError):
    pass


class SizeBudget(CharacterError):
    pass


class LiftFailure(CharacterError):
    pass


class OrthogonalityError(CharacterError):
    pass


class NonIntegralMultiplicity(CharacterError):
    pass


class NegativeMultiplicity(CharacterError):
    pass


class SchemaError(ValueError):
    pass


class ClassAlignmentError(ValueError):
    pass


MAX_SYMMETRIC_DEGREE = 12
MAX_DIXON_ORDER = 10 ** 6


@dataclass
class CharacterTable:
    """Irreducible characters as integer rows over a list of classes."""

    class_sizes: list
    irreducibles: list
    names: list
    class_labels: list = None
    classes: object = field(default=None, repr=False)
    metadata: dict = field(default_factory=dict)

    @property
    def order(self):
        return sum(self.class_sizes)

    @property
    def degrees(self):
        return [row[0] for row in self.irreducibles]

    def __len__(self):
        return len(self.irreducibles)

    def index(self, name):
        return self.names.index(name)

    def inner(self, a, b):
        """<a, b> over the group as a Fraction (characters here are real)."""
        s = sum(size * x * y for size, x, y in zip(self.class_sizes, a, b))
        return Fraction(s, self.order)

    def multiplicities(self, values):
        return [self.inner(chi, values) for chi in self.irreducibles]

    def check_orthogonality(self):
        """Raise OrthogonalityError unless rows and columns are orthonormal."""
        k = len(self.irreducibles)
        if k != len(self.class_sizes):
            raise OrthogonalityError("table is not square: %d x %d" % (k, len(self.class_sizes)))
        for i in range(k):
            for j in range(i, k):
                want = 1 if i == j else 0
                got = self.inner(self.irreducibles[i], self.irreducibles[j])
                if got != want:
                    raise OrthogonalityError(
                        "<%s, %s> = %s" % (self.names[i], self.names[j], got))
        order = self.order
        for a in range(k):
            for b in range(a, k):
                s = sum(row[a] * row[b] for row in self.irreducibles)
                want = order // self.class_sizes[a] if a == b else 0
                if s != want:
                    raise OrthogonalityError("column relation fails for classes %d, %d" % (a, b))

    def renamed(self, mapping):
        names = [mapping.get(n, n) for n in self.names]
        return CharacterTable(self.class_sizes, self.irreducibles, names, self.class_labels,
                              self.classes, dict(self.metadata))

    def reordered(self, names):
        idx = [self.names.index(n) for n in names]
        return CharacterTable(self.class_sizes, [self.irreducibles[i] for i in idx],
                              list(names), self.class_labels, self.classes, dict(self.metadata))


# symmetric groups ---------------------------------------------------------

def partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def centralizer_order(mu):
    out = 1
    for k in set(mu):
        c = mu.count(k)
        out *= k ** c * factorial(c)
    return out


@lru_cache(maxsize=None)
def mn_character(lam, mu):
    """chi^lam(mu) by removing rim hooks of length mu[0] (bead moves on beta-sets)."""
    if not mu:
        return 1 if sum(lam) == 0 else 0
    k, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in bset:
            continue
        sign = -1 if sum(1 for x in beta if c < x < b) % 2 else 1
        nb = sorted((x for x in beta if x != b), reverse=True)
        nb.append(c)
        nb.sort(reverse=True)
        m = len(nb)
        new = tuple(x for x in (nb[i] - (m - 1 - i) for i in range(m)) if x > 0)
        total += sign * mn_character(new, rest)
    return total


def symmetric_group_table(m, max_degree=None):
    """Character table of S_m; rows by partition, columns by cycle type."""
    if max_degree is None:
        max_degree = MAX_SYMMETRIC_DEGREE
    if m > max_degree:
        raise SizeBudget("S_%d exceeds the configured limit S_%d" % (m, max_degree))
    lams = list(partitions(m))
    # classes run from the identity upwards so that column 0 gives degrees
    parts = lams[::-1]
    sizes = [factorial(m) // centralizer_order(mu) for mu in parts]
    rows = [[mn_character(lam, mu) for mu in parts] for lam in lams]
    names = ["[%s]" % ",".join(map(str, lam)) for lam in lams]
    labels = ["(%s)" % ",".join(map(str, mu)) for mu in parts]
    table = CharacterTable(sizes, rows, names, labels)
    table.metadata["partitions"] = parts
    return table


def cycle_type_from_traces(traces_on_perm, m):
    """Cycle type of a permutation of m points from Tr(g^k), k = 1..m."""

    def mobius(k):
        res, p, x = 1, 2, k
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if x > 1 else res

    counts = {}
    for d in range(1, m + 1):
        s = sum(mobius(d // e) * traces_on_perm[e - 1] for e in range(1, d + 1) if d % e == 0)
        if s % d:
            raise ValueError("traces are not those of a permutation")
        if s:
            counts[d] = s // d
    mu = []
    for d in sorted(counts, reverse=True):
        mu += [d] * counts[d]
    return tuple(mu)


def weyl_cycle_type(g):
    """Cycle type in S_{n+1} of an element of W(A_n) given as a matrix."""
    n = len(g)
    tr = [t + 1 for t in power_traces(g, n + 1)]
    return cycle_type_from_traces(tr, n + 1)


def type_a_table(classes):
    """Character table of W(A_n) = S_{n+1}, aligned with computed classes."""
    rs = classes.group.rs
    n = rs.rank
    sym = symmetric_group_table(n + 1)
    parts = sym.metadata["partitions"]
    col = []
    for g in classes.representatives:
        col.append(parts.index(weyl_cycle_type(g.matrix)))
    rows = [[row[c] for c in col] for row in sym.irreducibles]
    table = CharacterTable(list(classes.sizes), rows, sym.names, list(classes.labels), classes)
    table.metadata["cycle_types"] = [parts[c] for c in col]
    return table


# Burnside-Dixon -------------------------------------------------------------

def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def dixon_primes(order, exponent):
    """Primes p = 1 mod exponent with p > 2 * sqrt(|G|), in increasing order."""
    bound = 2 * isqrt(order)
    p = exponent + 1
    while True:
        if p > bound and _is_prime(p):
            yield p
        p += exponent


def _rref_mod(rows, p):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    piv = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def _nullspace_mod(a, p):
    """Basis (as rows) of {x : a x = 0} mod p."""
    ncols = len(a[0])
    red, piv = _rref_mod(a, p)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(red, piv):
            x[c] = -row[f] % p
        basis.append(x)
    return basis


def _charpoly_mod(a, p):
    """Characteristic polynomial mod p (low degree first, monic) via Hessenberg form.

    Only field operations are used, so any prime works, including p <= dim.
    """
    d = len(a)
    h = [[int(x) % p for x in row] for row in a]
    for c in range(d - 2):
        piv = next((r for r in range(c + 1, d) if h[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[piv], h[c + 1] = h[c + 1], h[piv]
            for row in h:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        inv = pow(h[c + 1][c], -1, p)
        for r in range(c + 2, d):
            f = h[r][c] * inv % p
            if not f:
                continue
            h[r] = [(x - f * y) % p for x, y in zip(h[r], h[c + 1])]
            for row in h:
                row[c + 1] = (row[c + 1] + f * row[r]) % p
    polys = [[1]]
    for m in range(d):
        nxt = [0] + polys[m]
        for k, c in enumerate(polys[m]):
            nxt[k] = (nxt[k] - h[m][m] * c) % p
        run = 1
        for i in range(m - 1, -1, -1):
            run = run * h[i + 1][i] % p
            if not run:
                break
            f = h[i][m] * run % p
            for k, c in enumerate(polys[i]):
                nxt[k] = (nxt[k] - f * c) % p
        polys.append(nxt)
    return polys[d]


def _roots_mod(coeffs, p):
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        val = (val * xs + c) % p
    return [int(x) for x in np.nonzero(val == 0)[0]]


def class_matrix(classes, r, reps=None):
    """a[s][t] = #{y in C_r : y z_t in C_s}, z_t the class representatives.

    Weyl group classes are closed under inversion, so this equals the
    class-multiplication coefficient of C_r C_s on C_t.
    """
    group = classes.group
    k = len(classes)
    if reps is None:
        reps = [group.elements[i].astype(np.int16) for i in classes.rep_indices]
    members = group.elements[classes.members(r)].astype(np.int16)
    mat = np.zeros((k, k), dtype=np.int64)
    for t in range(k):
        prods = (members @ reps[t]).astype(np.int8)
        cls = classes.class_index[group.index_of(prods)]
        mat[:, t] = np.bincount(cls, minlength=k)
    return mat


def class_matrices(classes, order=None):
    """Lazily yield the class matrices, smallest non-central classes first by default."""
    group = classes.group
    reps = [group.elements[i].astype(np.int16) for i in classes.rep_indices]
    if order is None:
        order = sorted((r for r in range(len(classes)) if classes.sizes[r] > 1),
                       key=lambda r: (classes.sizes[r], r))
    for r in order:
        yield class_matrix(classes, r, reps)


def _split(space, mats, p):
    """Refine a list of invariant subspaces (column bases) into eigenlines."""
    k = len(space)
    spaces = [space]
    for a in mats:
        if all(len(s) == 1 for s in spaces):
            break
        a_mod = [[int(x) % p for x in row] for row in a]
        refined = []
        for basis in spaces:
            d = len(basis)
            if d == 1:
                refined.append(basis)
                continue
            # basis vectors are rows; restricted operator C with A b_j = sum_i C_ij b_i
            red, piv = _rref_mod(basis, p)
            images = [[sum(a_mod[s][t] * b[t] for t in range(k)) % p for s in range(k)]
                      for b in basis]
            sub = [[b[c] for c in piv] for b in basis]
            inv = _inverse_mod(sub, p)
            img = [[im[c] for c in piv] for im in images]
            coords = [[sum(img[j][c] * inv[c][i] for c in range(d)) % p for i in range(d)]
                      for j in range(d)]
            # coords[j] = coordinates of A b_j in the basis; operator matrix C = coords^T
            cmat = [[coords[j][i] for j in range(d)] for i in range(d)]
            lambdas = _roots_mod(_charpoly_mod(cmat, p), p)
            pieces = []
            for lam in lambdas:
                shifted = [[(cmat[i][j] - (lam if i == j else 0)) % p for j in range(d)]
                           for i in range(d)]
                ys = _nullspace_mod(shifted, p)
                vecs = [[sum(y[j] * basis[j][s] for j in range(d)) % p for s in range(k)]
                        for y in ys]
                pieces.append(vecs)
            if sum(len(x) for x in pieces) != d:
                raise LiftFailure("operator does not split over F_%d" % p)
            refined.extend(pieces)
        spaces = refined
    return spaces


def _inverse_mod(a, p):
    d = len(a)
    aug = [list(row) + [int(i == j) for j in range(d)] for i, row in enumerate(a)]
    red, piv = _rref_mod(aug, p)
    if piv[:d] != list(range(d)):
        raise LiftFailure("singular restriction mod %d" % p)
    return [row[d:] for row in red]


def _sym_mod(x, p):
    x %= p
    return x - p if x > p // 2 else x


def dixon_table(classes, max_order=None):
    """Irreducible characters from common eigenvectors of the class matrices mod p."""
    if max_order is None:
        max_order = MAX_DIXON_ORDER
    group = classes.group
    order = len(group)
    if order > max_order:
        raise SizeBudget("|W| = %d exceeds the Dixon budget %d" % (order, max_order))
    k = len(classes)
    sizes = list(classes.sizes)
    exponent = lcm(*(g.order() for g in classes.representatives))
    cached = []
    source = class_matrices(classes)

    def mats():
        # matrices are computed on first use and kept for later primes
        yield from cached
        for m in source:
            cached.append(m)
            yield m

    last_error = None
    for attempt, p in enumerate(dixon_primes(order, exponent)):
        if attempt >= 5:
            break
        try:
            table = _dixon_with_prime(classes, mats(), p, sizes, order)
        except LiftFailure as exc:
            last_error = exc
            continue
        table.metadata["prime"] = p
        table.metadata["exponent"] = exponent
        return table
    raise LiftFailure("no admissible prime succeeded: %s" % last_error)


def _dixon_with_prime(classes, mats, p, sizes, order):
    k = len(sizes)
    full = [[int(i == j) for j in range(k)] for i in range(k)]
    lines = _split(full, mats, p)
    if len(lines) != k or any(len(s) != 1 for s in lines):
        raise LiftFailure("class matrices did not separate the characters mod %d" % p)
    rows = []
    for (w,) in lines:
        if w[0] % p == 0:
            raise LiftFailure("eigenvector vanishes on the identity class")
        inv = pow(w[0], -1, p)
        omega = [x * inv % p for x in w]
        s = sum(o * o * pow(c, -1, p) for o, c in zip(omega, sizes)) % p
        d2 = order * pow(s, -1, p) % p
        deg = None
        for d in range(1, isqrt(order) + 1):
            if order % d == 0 and d * d % p == d2:
                deg = d
                break
        if deg is None:
            raise LiftFailure("no degree lifts mod %d" % p)
        rows.append([_sym_mod(o * deg * pow(c, -1, p), p) for o, c in zip(omega, sizes)])
    rows.sort(key=lambda r: (r[0], [-x for x in r[1:]]))
    table = CharacterTable(list(sizes), rows, ["chi%d" % i for i in range(k)],
                           list(classes.labels), classes)
    try:
        table.check_orthogonality()
    except OrthogonalityError as exc:
        raise LiftFailure(str(exc)) from None
    return table


def character_table(classes):
    """Type A via Murnaghan-Nakayama, everything else via Dixon."""
    rs = classes.group.rs
    if rs.type_label == "A":
        return type_a_table(classes)
    return dixon_table(classes)


# labels ---------------------------------------------------------------------

def std_character(classes):
    return [g.trace() for g in classes.representatives]


def fake_degree_exponents(table, classes, max_power=None):
    """Smallest e with the character occurring in Sym^e of the reflection representation."""
    rs = classes.group.rs
    if max_power is None:
        max_power = 2 * len(rs.positive_roots) + 2
    n = rs.rank
    sym = []
    for g in classes.representatives:
        sym.append(symmetric_traces(power_traces(g.matrix, max_power), max_power))
    first = [None] * len(table)
    for e in range(max_power + 1):
        values = [s[e] for s in sym]
        for i, chi in enumerate(table.irreducibles):
            if first[i] is None and table.inner(chi, values) != 0:
                first[i] = e
        if all(x is not None for x in first):
            break
    if any(x is None for x in first):
        raise CharacterError("some character does not occur in Sym^e for e <= %d" % max_power)
    return first


def label_phi(table, classes=None):
    """Names phi_d^e; characters sharing (d, e) get a second subscript.

    Tied characters are ordered by their value vector on the non-identity
    classes, larger first.  That order is a convention only; to match the
    subscripts of an existing table use ``apply_alignment``.
    """
    if classes is None:
        classes = table.classes
    es = fake_degree_exponents(table, classes)
    groups = {}
    for i, (chi, e) in enumerate(zip(table.irreducibles, es)):
        groups.setdefault((chi[0], e), []).append(i)
    names = [None] * len(table)
    for (d, e), idx in groups.items():
        if len(idx) == 1:
            names[idx[0]] = "phi_%d^%d" % (d, e)
            continue
        idx.sort(key=lambda i: table.irreducibles[i][1:], reverse=True)
        for sub, i in enumerate(idx, 1):
            names[i] = "phi_%d,%d^%d" % (d, sub, e)
    out = table.renamed(dict(zip(table.names, names)))
    out.metadata["fake_degree_e"] = dict(zip(names, es))
    ties = [k for k, v in groups.items() if len(v) > 1]
    if ties:
        out.metadata["tied_labels"] = ["phi_%d^%d" % k for k in sorted(ties)]
    return out


def parse_phi(name):
    """``phi_8,1^9`` -> (8, 9, 1); unsubscripted names get 0."""
    sub, _, sup = name[4:].partition("^")
    d, _, k = sub.partition(",")
    return int(d), int(sup), int(k) if k else 0


def standard_order(names):
    """Trivial, then sign, then by (d, e, subscript)."""
    keys = {n: parse_phi(n) for n in names}
    sign_e = max(e for d, e, k in keys.values() if d == 1)

    def key(n):
        d, e, k = keys[n]
        if d == 1 and e in (0, sign_e):
            return (0, e)
        return (1, d, e, k)

    return sorted(names, key=key)


def latex_name(name):
    """``phi_8,1^9`` -> ``\\phi_{8,1}^{9}``."""
    if not name.startswith("phi_"):
        return name
    body = name[4:]
    sub, _, sup = body.partition("^")
    return "\\phi_{%s}^{%s}" % (sub, sup)


# decomposition ----------------------------------------------------------------

@dataclass
class DecompositionTable:
    names: list
    rows: list

    def total(self):
        return [sum(col) for col in zip(*self.rows)]

    def column(self, name):
        i = self.names.index(name)
        return [row[i] for row in self.rows]

    def to_json(self):
        return {"irreducibles": list(self.names), "degrees": [list(r) for r in self.rows]}


def decompose(classpoly, table):
    """Multiplicity of every irreducible in every cohomology degree."""
    coeffs = classpoly.padded() if hasattr(classpoly, "padded") else classpoly
    ndeg = len(coeffs[0])
    rows = []
    for i in range(ndeg):
        values = [c[i] for c in coeffs]
        row = []
        for name, chi in zip(table.names, table.irreducibles):
            m = table.inner(chi, values)
            if m.denominator != 1:
                raise NonIntegralMultiplicity("%s in degree %d: %s" % (name, i, m))
            if m < 0:
                raise NegativeMultiplicity("%s in degree %d: %s" % (name, i, m))
            row.append(int(m))
        rows.append(row)
    return DecompositionTable(list(table.names), rows)


# closed forms for A_n -------------------------------------------------------------

def an_poincare(n):
    """prod_{i=1..n} (1 + (i+1) t) as coefficients, low degree first."""
    out = [1]
    for i in range(1, n + 1):
        out = [a + (i + 1) * b for a, b in zip(out + [0], [0] + out)]
    return out


def arnold_poincare(n):
    out = [1]
    for i in range(1, n + 1):
        out = [a + i * b for a, b in zip(out + [0], [0] + out)]
    return out


def an_total_character(n, cycle_type):
    mu = tuple(x for x in cycle_type if x > 1)
    if not mu:
        return factorial(n + 2) // 2
    if mu == (2,):
        return factorial(n)
    return 0


def an_induced_character(n, cycle_type):
    """Ind from <(12)> to S_{n+1} of the trivial character."""
    mu = tuple(x for x in cycle_type if x > 1)
    if not mu:
        return factorial(n + 1) // 2
    if mu == (2,):
        return factorial(n - 1)
    return 0


def an_oracles(n, table=None):
    """Closed-form Poincaré polynomial, total character and its decomposition."""
    if table is None:
        table = symmetric_group_table(n + 1)
    parts = table.metadata.get("cycle_types") or table.metadata["partitions"]
    total = [an_total_character(n, mu) for mu in parts]
    induced = [an_induced_character(n, mu) for mu in parts]
    trans = None
    for c, mu in enumerate(parts):
        if tuple(x for x in mu if x > 1) == (2,):
            trans = c
    decomposition = []
    for chi in table.irreducibles:
        deg = chi[0]
        restr = (deg + chi[trans]) // 2
        decomposition.append(deg + n * restr)
    return {
        "poincare": an_poincare(n),
        "arnold": arnold_poincare(n),
        "total_character": total,
        "induced_character": induced,
        "total_decomposition": decomposition,
    }


# files ----------------------------------------------------------------------

def table_to_json(table, rs=None):
    classes = table.classes
    group = {}
    if rs is None and classes is not None:
        rs = classes.group.rs
    if rs is not None:
        group = {"type": rs.type_label, "rank": rs.rank, "order": table.order}
    cls = []
    for i, size in enumerate(table.class_sizes):
        entry = {"label": table.class_labels[i] if table.class_labels else str(i), "size": size}
        if classes is not None:
            entry["invariants"] = classes.invariants[i]
        cls.append(entry)
    data = {
        "group": group,
        "classes": cls,
        "irreducibles": [{"name": n, "values": list(v)} for n, v in zip(table.names, table.irreducibles)],
    }
    if table.metadata.get("alignment"):
        data["alignment"] = table.metadata["alignment"]
    return data


def save_table(table, path, rs=None):
    with open(path, "w") as fh:
        json.dump(table_to_json(table, rs), fh, indent=1, sort_keys=True)
        fh.write("\n")


def _inv_key(inv):
    return json.dumps({k: inv[k] for k in sorted(inv) if k != "label"}, sort_keys=True)


def table_from_json(data, classes=None):
    try:
        cls = data["classes"]
        irr = data["irreducibles"]
        sizes = [int(c["size"]) for c in cls]
        labels = [str(c["label"]) for c in cls]
        names = [str(x["name"]) for x in irr]
        rows = [[int(v) for v in x["values"]] for x in irr]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("malformed character table: %s" % exc) from None
    if any(len(r) != len(sizes) for r in rows):
        raise SchemaError("row length does not match the number of classes")
    table = CharacterTable(sizes, rows, names, labels)
    if data.get("alignment"):
        table.metadata["alignment"] = data["alignment"]
    table.check_orthogonality()
    if classes is not None:
        table = align_to_classes(table, [c.get("invariants") for c in cls], classes)
    return table


def load_table(path, classes=None):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(str(exc)) from None
    return table_from_json(data, classes)


def align_to_classes(table, file_invariants, classes):
    """Permute the columns of a loaded table to match computed classes by invariants."""
    if len(file_invariants) != len(classes):
        raise ClassAlignmentError("file has %d classes, group has %d"
                                  % (len(file_invariants), len(classes)))
    if any(inv is None for inv in file_invariants):
        raise ClassAlignmentError("file classes carry no invariants")
    ours = {}
    for i, inv in enumerate(classes.invariants):
        ours.setdefault(_inv_key(inv), []).append(i)
    theirs = {}
    for j, inv in enumerate(file_invariants):
        theirs.setdefault(_inv_key(inv), []).append(j)
    col = [None] * len(classes)
    for key, mine in ours.items():
        cand = theirs.get(key, [])
        if len(cand) != len(mine):
            raise ClassAlignmentError("no matching class for invariants %s" % key)
        if len(mine) > 1:
            cols = {tuple(row[j] for row in table.irreducibles) for j in cand}
            if len(cols) > 1:
                raise ClassAlignmentError("ambiguous classes with invariants %s" % key)
        for i, j in zip(mine, cand):
            col[i] = j
    rows = [[row[j] for j in col] for row in table.irreducibles]
    out = CharacterTable(list(classes.sizes), rows, list(table.names), list(classes.labels),
                         classes, dict(table.metadata))
    out.check_orthogonality()
    return out


def apply_alignment(table, alignment):
    """Rename tied characters from a ``{computed name: published name}`` map."""
    out = table.renamed(alignment)
    if len(set(out.names)) != len(out.names):
        raise SchemaError("alignment produces duplicate names")
    out.metadata["alignment"] = dict(alignment)
    return out


# packaged tables ---------------------------------------------------------------

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# computed tie order -> published subscripts, fixed once by comparing
# decomposition columns; the values alone do not decide between primes
F4_ALIGNMENT = {
    "phi_1,1^12": "phi_1,2^12", "phi_1,2^12": "phi_1,1^12",
    "phi_2,1^4": "phi_2,2^4", "phi_2,2^4": "phi_2,1^4",
    "phi_2,1^16": "phi_2,2^16", "phi_2,2^16": "phi_2,1^16",
    "phi_9,1^6": "phi_9,2^6", "phi_9,2^6": "phi_9,1^6",
}


def packaged_table_path(rs):
    path = os.path.join(DATA_DIR, "%s.json" % rs.name)
    return path if os.path.exists(path) else None


def weyl_character_table(classes, path=None, max_order=None):
    """Labelled table: from ``path`` or the packaged file if present, else computed."""
    rs = classes.group.rs
    if path is None:
        path = packaged_table_path(rs)
    if path is not None:
        table = load_table(path, classes)
        table.metadata["source"] = path
        return table
    if rs.type_label == "A":
        table = type_a_table(classes)
    else:
        table = label_phi(dixon_table(classes, max_order), classes)
        table = table.reordered(standard_order(table.names))
    table.metadata["source"] = "computed"
    return table
