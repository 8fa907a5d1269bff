"""Command line interface: ``toricarr poincare | table | poset``.

Exit codes: 0 success, 2 bad input, 3 a size or memory budget was hit,
4 an internal consistency check failed.
"""

import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import __version__
from .cache import ResultCache, default_dir
from .characters import (
    CharacterError,
    ClassAlignmentError,
    SchemaError,
    SizeBudget,
    decompose,
    latex_name,
    weyl_character_table,
)
from .cohomology import ClassPolynomial, NonPolynomialResult, complement_poincare, format_poly
from .lattice import LatticeError
from .poset import CustomArrangement, NodeBudgetExceeded, fixed_poset, hyperplane_poset, tau_is_isomorphism
from .roots import InvalidType, build
from .weyl import MemoryBudgetExceeded, WeylElement, conjugacy_classes, enumerate_group, identity_element

EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_CHECK = 4

LARGE_MEMORY_ORDER = 4 * 10 ** 6


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


class BudgetError(click.ClickException):
    exit_code = EXIT_BUDGET


class CheckError(click.ClickException):
    exit_code = EXIT_CHECK


def _guard(fn):
    """Map library exceptions to exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (MemoryBudgetExceeded, NodeBudgetExceeded, SizeBudget) as exc:
            raise BudgetError("budget exceeded: %s" % exc) from None
        except (SchemaError, ClassAlignmentError, InvalidType, FileNotFoundError,
                json.JSONDecodeError) as exc:
            raise InputError(str(exc)) from None
        except (CharacterError, NonPolynomialResult, LatticeError) as exc:
            raise CheckError("check failed: %s: %s" % (type(exc).__name__, exc)) from None

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


class RunConfig:
    def __init__(self, type_, rank, custom, threads, large_memory, max_nodes, cache_dir):
        if custom and type_:
            raise InputError("give either --type or --custom, not both")
        if not custom and not type_:
            raise InputError("one of --type or --custom is required")
        if threads < 1:
            raise InputError("--threads must be positive")
        if max_nodes is not None and max_nodes < 1:
            raise InputError("--max-nodes must be positive")
        self.threads = threads
        self.large_memory = large_memory
        self.max_nodes = max_nodes
        self.max_order = LARGE_MEMORY_ORDER if large_memory else None
        self.cache = ResultCache(cache_dir) if cache_dir else None
        if custom:
            try:
                self.source = CustomArrangement.load(custom)
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError("bad arrangement file %s: %s" % (custom, exc)) from None
        else:
            try:
                self.source = build(type_, rank)
            except (InvalidType, ValueError) as exc:
                raise InputError(str(exc)) from None

    @property
    def is_custom(self):
        return isinstance(self.source, CustomArrangement)

    def group(self):
        rs = self.source
        if self.cache is not None:
            group = self.cache.load_group(rs)
            if group is not None:
                return group
        group = enumerate_group(rs, self.max_order)
        if self.cache is not None:
            self.cache.store_group(group)
        return group

    def classes(self):
        return conjugacy_classes(self.group())


def common_options(fn):
    opts = [
        click.option("--type", "type_", help="Root system type: A..G, or a full name like E6."),
        click.option("--rank", type=int, default=None, help="Rank for the classical types."),
        click.option("--custom", type=click.Path(dir_okay=False),
                     help="JSON file {rank: n, vectors: [[int]]} of exponent vectors."),
        click.option("--threads", type=int, default=1, show_default=True,
                     help="Worker processes for per-class jobs."),
        click.option("--large-memory", is_flag=True,
                     help="Allow groups up to %d elements (needed for E7)." % LARGE_MEMORY_ORDER),
        click.option("--max-nodes", type=int, default=None, help="Node budget per poset."),
        click.option("--cache-dir", type=click.Path(file_okay=False), default=default_dir,
                     help="Cache directory (default: $TORICARR_CACHE_DIR, unset disables)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(__version__)
def main():
    """Cohomology of complements of toric arrangements of root systems."""


# per-class polynomials -----------------------------------------------------------

def _class_job(args):
    type_label, rank, matrix, max_nodes, want_poset = args
    rs = build(type_label, rank)
    poset = fixed_poset(rs, WeylElement(matrix), max_nodes)
    poly = complement_poincare(rs, WeylElement(matrix), poset)
    return poly, (poset if want_poset else None)


def class_polynomials(cfg, classes, only_identity=False):
    rs = cfg.source
    reps = classes.representatives if classes is not None else None
    if only_identity:
        items = [("identity", identity_element(rs.rank).matrix)]
    else:
        items = list(zip(classes.labels, [g.matrix for g in reps]))
    results = [None] * len(items)
    todo = []
    for i, (label, mat) in enumerate(items):
        if cfg.cache is not None:
            results[i] = cfg.cache.load_class(rs, label, mat)
        if results[i] is None:
            todo.append(i)
    want = cfg.cache is not None
    jobs = [(rs.type_label, rs.rank, items[i][1], cfg.max_nodes, want) for i in todo]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as ex:
            done = list(ex.map(_class_job, jobs))
    else:
        done = [_class_job(j) for j in jobs]
    for i, (poly, poset) in zip(todo, done):
        results[i] = poly
        if cfg.cache is not None:
            cfg.cache.store_class(rs, items[i][0], items[i][1], poly, poset)
    return results


# rendering ------------------------------------------------------------------

def _pad(coeffs, n):
    return list(coeffs) + [0] * (n + 1 - len(coeffs))


def render_poincare(system, rows, n, fmt):
    """rows: (label, size, coeffs)."""
    if fmt == "text":
        if len(rows) == 1:
            return format_poly(rows[0][2]) + "\n"
        return "".join("%s\t%d\t%s\n" % (lab, size, format_poly(c)) for lab, size, c in rows)
    if fmt == "json":
        data = {"system": system,
                "classes": [{"label": lab, "size": size, "poincare": _pad(c, n)}
                            for lab, size, c in rows]}
        return json.dumps(data, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "size"] + ["t^%d" % i for i in range(n + 1)])
        for lab, size, c in rows:
            w.writerow([lab, size] + _pad(c, n))
        return buf.getvalue()
    if fmt == "latex":
        lines = []
        for lab, size, c in rows:
            body = re.sub(r"t\^(\d+)", r"t^{\1}", format_poly(c))
            lines.append("%% %s\nP(T_{\\Phi},t) = %s \\\\" % (lab, body))
        return "\n".join(lines) + "\n"
    raise InputError("unknown format %s" % fmt)


def render_decomposition(system, names, rows, fmt, meta=None):
    heads = ["H^%d" % i for i in range(len(rows))]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree"] + list(names))
        for h, r in zip(heads, rows):
            w.writerow([h] + list(r))
        return buf.getvalue()
    if fmt == "json":
        data = {"system": system, "decomposition": {"irreducibles": list(names),
                                                    "degrees": [list(r) for r in rows]}}
        if meta:
            data["metadata"] = meta
        return json.dumps(data, indent=1) + "\n"
    if fmt == "text":
        widths = [max(len(n), *(len(str(r[j])) for r in rows)) for j, n in enumerate(names)]
        out = ["      " + " ".join(n.rjust(w) for n, w in zip(names, widths))]
        for h, r in zip(heads, rows):
            out.append(h.ljust(6) + " ".join(str(x).rjust(w) for x, w in zip(r, widths)))
        if meta and meta.get("tied_labels"):
            out.append("# tied labels ordered by convention: %s" % ", ".join(meta["tied_labels"]))
        return "\n".join(out) + "\n"
    if fmt == "latex":
        return latex_blocks(names, rows)
    raise InputError("unknown format %s" % fmt)


def latex_blocks(names, rows, per_block=10):
    """An array with the columns split into blocks of ``per_block``."""
    out = ["\\begin{array}{r|%s}" % ("r" * per_block)]
    for start in range(0, len(names), per_block):
        block = names[start:start + per_block]
        fill = per_block - len(block)
        if start:
            out.append("\\hline")
        out.append("\\, & " + " & ".join(latex_name(n) for n in block)
                   + " & \\," * fill + " \\\\")
        out.append("\\hline")
        for i, r in enumerate(rows):
            cells = [str(x) for x in r[start:start + per_block]] + ["\\,"] * fill
            out.append("H^{%d}(T_{\\Phi}) & %s \\\\" % (i, " & ".join(cells)))
    out[-1] = out[-1][:-3].rstrip()
    out.append("\\end{array}")
    return "\n".join(out) + "\n"


# commands -------------------------------------------------------------------

FORMATS = click.Choice(["text", "json", "csv", "latex"])


@main.command()
@common_options
@click.option("--all-classes", is_flag=True, help="One polynomial per conjugacy class.")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@_guard
def poincare(type_, rank, custom, threads, large_memory, max_nodes, cache_dir, all_classes, fmt):
    """Poincaré polynomial of the complement (identity, or every class)."""
    cfg = RunConfig(type_, rank, custom, threads, large_memory, max_nodes, cache_dir)
    src = cfg.source
    n = src.rank
    if cfg.is_custom:
        if all_classes:
            raise InputError("--all-classes needs a root system")
        poset = fixed_poset(src, max_nodes=max_nodes)
        rows = [("identity", 1, complement_poincare(src, poset=poset))]
    elif all_classes:
        classes = cfg.classes()
        polys = class_polynomials(cfg, classes)
        rows = list(zip(classes.labels, classes.sizes, polys))
    else:
        rows = [("identity", 1, class_polynomials(cfg, None, only_identity=True)[0])]
    click.echo(render_poincare(src.name, rows, n, fmt), nl=False)


@main.command()
@common_options
@click.option("--char-table", type=click.Path(dir_okay=False),
              help="Character table JSON file (default: packaged or computed).")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@_guard
def table(type_, rank, custom, threads, large_memory, max_nodes, cache_dir, char_table, fmt):
    """Multiplicity of each irreducible character in each cohomology degree."""
    cfg = RunConfig(type_, rank, custom, threads, large_memory, max_nodes, cache_dir)
    if cfg.is_custom:
        raise InputError("table needs a root system")
    rs = cfg.source
    classes = cfg.classes()
    chars = weyl_character_table(classes, char_table, max_order=cfg.max_order)
    polys = class_polynomials(cfg, classes)
    cp = ClassPolynomial(rs, classes, polys)
    dec = decompose(cp, chars)
    source = chars.metadata.get("source", "computed")
    meta = {"character_table": os.path.basename(source)}
    if chars.metadata.get("tied_labels"):
        meta["tied_labels"] = chars.metadata["tied_labels"]
    if chars.metadata.get("alignment"):
        meta["alignment"] = chars.metadata["alignment"]
    if fmt == "json":
        data = json.loads(render_poincare(rs.name, list(zip(classes.labels, classes.sizes, polys)),
                                          rs.rank, "json"))
        data["decomposition"] = dec.to_json()
        data["metadata"] = meta
        click.echo(json.dumps(data, indent=1))
        return
    click.echo(render_decomposition(rs.name, dec.names, dec.rows, fmt, meta), nl=False)


@main.command()
@common_options
@click.option("--check-tau", is_flag=True, help="Report whether every node is saturated.")
@click.option("--hyperplane", is_flag=True, help="Use the intersection lattice of hyperplanes.")
@click.option("--class-index", type=int, default=None,
              help="Poset of the k-th conjugacy class representative instead of the identity.")
@click.option("--dump", type=click.Path(dir_okay=False), help="Write the full poset as JSON.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@_guard
def poset(type_, rank, custom, threads, large_memory, max_nodes, cache_dir, check_tau,
          hyperplane, class_index, dump, fmt):
    """Node counts and Möbius sums of the poset of stable intersections."""
    cfg = RunConfig(type_, rank, custom, threads, large_memory, max_nodes, cache_dir)
    src = cfg.source
    g = None
    if class_index is not None:
        if cfg.is_custom:
            raise InputError("--class-index needs a root system")
        classes = cfg.classes()
        if not 0 <= class_index < len(classes):
            raise InputError("class index out of range 0..%d" % (len(classes) - 1))
        g = classes.representatives[class_index]
    build_poset = hyperplane_poset if hyperplane else fixed_poset
    p = build_poset(src, g, max_nodes)
    summary = {
        "system": src.name,
        "nodes": len(p),
        "counts_by_rank": p.counts_by_rank(),
        "mobius_sums_by_rank": p.mobius_sums_by_rank(),
        "mobius": p.mobius_values(),
    }
    if check_tau:
        summary["tau_isomorphism"] = tau_is_isomorphism(src, g, p)
    if dump:
        with open(dump, "w") as fh:
            json.dump(p.to_json(), fh)
    if fmt == "json":
        click.echo(json.dumps(summary, indent=1))
        return
    click.echo("nodes: %d" % summary["nodes"])
    click.echo("counts by rank: %s" % " ".join(map(str, summary["counts_by_rank"])))
    click.echo("mobius sums by rank: %s" % " ".join(map(str, summary["mobius_sums_by_rank"])))
    if len(p) <= 64:
        click.echo("mobius: %s" % " ".join(map(str, summary["mobius"])))
    if check_tau:
        click.echo("tau: %s" % ("isomorphism" if summary["tau_isomorphism"] else "not an isomorphism"))


if __name__ == "__main__":
    sys.exit(main())
