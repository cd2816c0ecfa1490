"""Command-line front end: ``lenscalc compute | verify | table``.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters.
"""

import argparse
import csv
import io
import json
import sys

from . import __version__
from .exact_algebra import FinAbGroup
from .rho_engine import kernel_and_image, predicted_image_order
from .surgery_tables import (
    CASE_LABELS,
    UnsupportedParams,
    decompose_N,
    kernel_closed_form,
    l_group,
    normal_invariants,
    reduced_l_group,
    structure_set_disk,
    structure_set_product_sphere,
)
from .sweep import ALL_SUITES, SCHEMA_VERSION, SpecError, SweepSpec, run_sweep

COMPUTE_KINDS = ("structure-set-disk", "structure-set-sphere", "l-group",
                 "normal-invariants", "rho-image", "kernel-closed-form")


class UsageError(Exception):
    pass


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _document(kind, params, group, case_label=None, odd_order=1, notes=(), extra=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "kind": kind,
        "params": params,
        "case_label": case_label,
        "free_rank": group.free_rank,
        "invariant_factors": list(group.torsion),
        "declared_odd_order": odd_order,
        "notes": list(notes),
    }
    if extra:
        doc.update(extra)
    return doc


def compute(kind, N, d=None, m=None, k=None, n=None):
    """Build the JSON document for ``lenscalc compute KIND``."""
    if kind in ("structure-set-disk", "structure-set-sphere", "normal-invariants"):
        if k is not None:
            raise UsageError("--k is ambiguous for %s (m = 2k or 2k+1); pass --m" % kind)
        if d is None or m is None:
            raise UsageError("%s needs --N, --d and --m" % kind)
    if kind in ("rho-image", "kernel-closed-form"):
        if k is None and m is not None:
            if m % 2:
                raise UsageError("%s needs an even m = 2k" % kind)
            k = m // 2
        if d is None or k is None:
            raise UsageError("%s needs --N, --d and --k (or an even --m)" % kind)

    if kind == "structure-set-disk":
        desc = structure_set_disk(N, d, m)
        notes = [desc.summary()]
        if desc.derived_mode:
            notes.append("derived_mode: " + desc.derived_mode)
        return _document(kind, {"N": N, "d": d, "m": m}, desc.total, desc.case_label,
                         desc.declared_odd_order, notes, {"descriptor": desc.to_dict()})
    if kind == "structure-set-sphere":
        desc = structure_set_product_sphere(N, d, m)
        notes = [desc.summary(), "odd part known by order only"]
        return _document(kind, {"N": N, "d": d, "m": m}, desc.total, desc.case_label,
                         desc.declared_odd_order, notes, {"descriptor": desc.to_dict()})
    if kind == "l-group":
        if n is None:
            raise UsageError("l-group needs --N and --n")
        lg = l_group(N, n)
        notes = []
        if lg.arf:
            notes.append("Arf invariant Z/2")
        if lg.codim1_arf:
            notes.append("codimension 1 Arf Z/2")
        extra = {}
        if n % 2 == 0:
            extra["reduced_free_rank"] = reduced_l_group(N, n).free_rank
        return _document(kind, {"N": N, "n": n}, lg.group(), "n=%d mod 4" % (n % 4),
                         notes=notes, extra=extra)
    if kind == "normal-invariants":
        ni = normal_invariants(N, d, m, reduced=True)
        full = normal_invariants(N, d, m, reduced=False)
        return _document(kind, {"N": N, "d": d, "m": m}, ni.known_part(),
                         "reduced (ker theta)", ni.M_part_order,
                         ["unreduced: %s" % full.known_part()],
                         {"unreduced_free_rank": full.known_part().free_rank,
                          "unreduced_invariant_factors": list(full.known_part().torsion)})
    if kind == "rho-image":
        res = kernel_and_image(N, d, k)
        K, M = decompose_N(N)
        return _document(kind, {"N": N, "d": d, "k": k}, res.image, None,
                         notes=["Z(d,k)/K^, computed exactly"],
                         extra={"order": res.image.order,
                                "predicted_order": predicted_image_order(N, d, k),
                                "two_exponent": res.two_exponent,
                                "odd_order": res.odd_order})
    if kind == "kernel-closed-form":
        group = kernel_closed_form(N, d, k)
        return _document(kind, {"N": N, "d": d, "k": k}, group)
    raise UsageError("unknown kind %r" % (kind,))


def render_text(doc):
    group = FinAbGroup(doc["free_rank"], tuple(doc["invariant_factors"]))
    lines = ["%s %s" % (doc["kind"], " ".join("%s=%s" % kv for kv in sorted(doc["params"].items())))]
    if doc.get("case_label"):
        lines.append("case: %s" % doc["case_label"])
    lines.append("group: %s" % group)
    if doc.get("declared_odd_order", 1) != 1:
        lines.append("odd part of order %d" % doc["declared_odd_order"])
    for note in doc.get("notes", []):
        lines.append("note: %s" % note)
    return "\n".join(lines) + "\n"


def render_md(doc):
    group = FinAbGroup(doc["free_rank"], tuple(doc["invariant_factors"]))
    out = ["## %s" % doc["kind"], "", "| field | value |", "|---|---|"]
    for key, val in sorted(doc["params"].items()):
        out.append("| %s | %s |" % (key, val))
    out.append("| case | %s |" % (doc.get("case_label") or ""))
    out.append("| group | %s |" % group)
    out.append("| odd order | %s |" % doc.get("declared_odd_order", 1))
    return "\n".join(out) + "\n"


# -- tables -------------------------------------------------------------------

TABLE_COLUMNS = ("N", "K", "M", "d", "m", "case", "free_rank", "invariant_factors",
                 "odd_order", "summary")


def table_rows(which, N_list, d_list, m_list):
    rows = []
    for N in N_list:
        K, M = decompose_N(N)
        for d in d_list:
            for m in m_list:
                try:
                    if which == "main-theorem":
                        desc = structure_set_disk(N, d, m)
                    else:
                        desc = structure_set_product_sphere(N, d, m)
                except UnsupportedParams:
                    continue
                rows.append({
                    "N": N, "K": K, "M": M, "d": d, "m": m,
                    "case": desc.case_label,
                    "free_rank": desc.total.free_rank,
                    "invariant_factors": list(desc.total.torsion),
                    "odd_order": desc.declared_odd_order,
                    "summary": desc.summary(),
                })
    return rows


def render_table(which, rows, fmt):
    if fmt == "json":
        return dumps({"schema_version": SCHEMA_VERSION, "tool_version": __version__,
                      "table": which, "rows": rows})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow([" ".join(map(str, r[c])) if c == "invariant_factors" else r[c]
                        for c in TABLE_COLUMNS])
        return buf.getvalue()
    if fmt == "md":
        title = ("Structure sets of L x D^m" if which == "main-theorem"
                 else "Structure sets of L x S^m")
        out = ["# " + title, ""]
        order = [CASE_LABELS[key] for key in ((True, True), (True, False),
                                              (False, True), (False, False))]
        order.append(CASE_LABELS["odd"])
        for label in order:
            sel = [r for r in rows if r["case"] == label]
            if not sel:
                continue
            out += ["## " + label, "",
                    "| N | d | m | summary | free rank | invariant factors | odd order |",
                    "|---|---|---|---|---|---|---|"]
            for r in sel:
                out.append("| %d | %d | %d | %s | %d | %s | %d |" % (
                    r["N"], r["d"], r["m"], r["summary"], r["free_rank"],
                    " ".join(map(str, r["invariant_factors"])) or "-", r["odd_order"]))
            out.append("")
        return "\n".join(out)
    raise UsageError("unknown format %r" % (fmt,))


# -- argument parsing ---------------------------------------------------------

def _int_list(text):
    """'2,3,4' or '2-8' or '2-8,12' -> sorted list of ints."""
    out = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part[1:]:
                lo, hi = part.split("-", 1) if not part.startswith("-") else (part, part)
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a list like 2,3,4 or a range like 2-8")
    return sorted(out)


def _suite_list(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


def build_parser():
    p = argparse.ArgumentParser(prog="lenscalc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version="lenscalc " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="closed-form answers and rho images")
    c.add_argument("kind", choices=COMPUTE_KINDS)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--d", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--format", choices=("json", "text", "md"), default="json")
    c.add_argument("--out")

    v = sub.add_parser("verify", help="run verification sweeps")
    v.add_argument("--N", type=_int_list, default=None, dest="N_list")
    v.add_argument("--d", type=_int_list, default=None, dest="d_range")
    v.add_argument("--k", type=_int_list, default=None, dest="k_range")
    v.add_argument("--suites", type=_suite_list, default=ALL_SUITES,
                   help="comma-separated subset of: " + ", ".join(ALL_SUITES))
    v.add_argument("--mutate", choices=("scale-column",))
    v.add_argument("--snf-instances", type=int, default=1000)
    v.add_argument("--preimage-instances", type=int, default=200)
    v.add_argument("--seed", type=int, default=20180101)
    v.add_argument("--out")

    t = sub.add_parser("table", help="case tables of the main theorem or sphere corollary")
    t.add_argument("which", choices=("main-theorem", "sphere-corollary"))
    t.add_argument("--N", type=_int_list, default=[2, 4, 6, 8, 12], dest="N_list")
    t.add_argument("--d", type=_int_list, default=list(range(2, 7)), dest="d_list")
    t.add_argument("--m", type=_int_list, default=list(range(1, 7)), dest="m_list")
    t.add_argument("--format", default="json")
    t.add_argument("--out")
    return p


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            doc = compute(args.kind, args.N, d=args.d, m=args.m, k=args.k, n=args.n)
            render = {"json": dumps, "text": render_text, "md": render_md}[args.format]
            _emit(render(doc), args.out)
            return 0
        if args.command == "verify":
            defaults = SweepSpec()
            spec = SweepSpec(
                N_list=tuple(args.N_list or defaults.N_list),
                d_range=tuple(args.d_range or defaults.d_range),
                k_range=tuple(args.k_range if args.k_range is not None else defaults.k_range),
                suites=args.suites,
                mutate=args.mutate,
                snf_instances=args.snf_instances,
                preimage_instances=args.preimage_instances,
                seed=args.seed,
            )
            report = run_sweep(spec)
            _emit(dumps(report), args.out)
            return 0 if report["summary"]["passed"] else 1
        if args.command == "table":
            if args.format not in ("json", "csv", "md"):
                raise UsageError("unknown format %r (json, csv, md)" % args.format)
            rows = table_rows(args.which, args.N_list, args.d_list, args.m_list)
            _emit(render_table(args.which, rows, args.format), args.out)
            return 0
    except (UsageError, UnsupportedParams, SpecError) as exc:
        sys.stderr.write("lenscalc: error: %s\n" % exc)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
