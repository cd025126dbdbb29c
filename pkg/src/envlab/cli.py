"""Command-line front end.  One subcommand per module, batch only:

    envlab nori --input group.json
    envlab envelope --input group.json
    envlab formal-char --input weights.json
    envlab table-a --n 5 --format csv
    envlab tame --ell 5 --d 2 --e 13
    envlab tame --input rep.json --twist 1
    envlab mackey --input problem.json
    envlab clifford --input problem.json
    envlab eliminate --n 6 --constraints self_dual,rank=3

Exit codes: 0 success, 1 validation error, 2 resource cap hit, 64 usage.
Flags --seed/--cap/--format/--output fall back to ENVLAB_SEED,
ENVLAB_CAP, ENVLAB_FORMAT, ENVLAB_OUTPUT.  Reports are deterministic:
same input and seed give byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .charlattice import (FormalCharacter, fc_equivalent, fc_normalize,
                          fc_predicates, has_affine_triple)
from .errors import ResourceError, UsageError, ValidationError
from .fieldcore import (DEFAULT_CLOSURE_CAP, DEFAULT_SEED, FinMatGroup, Mat,
                        ModuleRep)
from .gf import field_make
from .mackey import clifford_decompose, induce, mackey_irreducible, subgroup_datum
from .nori import nori_points
from .pipeline import eliminate_cases, envelope_report
from .smallrep import table_a
from .tame import TameCharacter, ell_restricted_digits, tame_weights_of_rep


def _env_default(name, fallback, cast):
    raw = os.environ.get("ENVLAB_" + name)
    if raw is None:
        return fallback
    return cast(raw)


def _emit(doc, args, csv_rows=None, text_lines=None):
    fmt = args.format
    if fmt == "json":
        payload = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    elif fmt == "csv":
        if csv_rows is None:
            raise UsageError("csv format is not available for this subcommand")
        payload = "\n".join(",".join(str(c) for c in row) for row in csv_rows) + "\n"
    else:
        lines = text_lines if text_lines is not None else [
            f"{k}: {v}" for k, v in sorted(doc.items())]
        payload = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _load_input(args):
    if not args.input:
        raise UsageError("--input is required for this subcommand")
    with open(args.input) as fh:
        return json.load(fh)


def _mats_from(fld, n, flats):
    out = []
    for flat in flats:
        entries = [int(e) % fld.q for e in flat]
        out.append(Mat(fld, np.array(entries, dtype=np.int64).reshape(n, n)))
    return out


def _module_from(doc, key="module"):
    mf = doc.get("module_field", {})
    fld = field_make(int(mf.get("ell")), int(mf.get("d", 1)))
    flats = doc[key]
    m = int(round(len(flats[0]) ** 0.5))
    return ModuleRep(fld, tuple(np.array([int(e) % fld.q for e in flat],
                                         dtype=np.int64).reshape(m, m)
                                for flat in flats))


def _cmd_nori(args):
    G = FinMatGroup.from_json(_load_input(args))
    result = nori_points(G, cap=args.cap, collect_warnings=False)
    _emit(result.to_json(), args)


def _cmd_envelope(args):
    G = FinMatGroup.from_json(_load_input(args))
    report = envelope_report(G, seed=args.seed, cap=args.cap)
    _emit(report.to_json(), args)


def _cmd_formal_char(args):
    doc = _load_input(args)
    fc = fc_normalize(FormalCharacter(int(doc["rank"]),
                                      tuple(tuple(w) for w in doc["weights"])))
    p = fc_predicates(fc)
    out = {
        "rank": fc.rank,
        "weights": [list(w) for w in fc.sorted_weights()],
        "zero_weight_count": p.zero_weight_count,
        "symmetric": p.is_symmetric,
        "antipodal_free": p.antipodal_pair_free,
        "affine_triple": has_affine_triple(fc),
    }
    if "other" in doc:
        other = FormalCharacter(int(doc["other"]["rank"]),
                                tuple(tuple(w) for w in doc["other"]["weights"]))
        out["equivalent"] = fc_equivalent(fc, other)
    _emit(out, args)


def _row_doc(row):
    return row.to_json()


def _cmd_table_a(args):
    rows = table_a(args.n)
    docs = [_row_doc(r) for r in rows]
    header = ["case", "group", "rep", "dim", "self_dual", "rank",
              "zero_weight_count"]
    csv_rows = [header] + [[d[k] for k in header] for d in docs]
    text = [f"{d['case']} {d['group']} {d['rep']} dim={d['dim']} "
            f"self_dual={d['self_dual']}" for d in docs]
    _emit({"n": args.n, "rows": docs}, args, csv_rows=csv_rows, text_lines=text)


def _cmd_tame(args):
    if args.input:
        doc = _load_input(args)
        G = FinMatGroup.from_json(doc)
        if len(G.generators) != 1:
            raise ValidationError("tame input must have exactly one generator")
        w = tame_weights_of_rep(G.generators[0], twist=args.twist)
        _emit({"ell": w.ell, "digits": list(w.digits)}, args)
        return
    if args.ell is None or args.d is None or args.e is None:
        raise UsageError("tame needs either --input or all of --ell/--d/--e")
    chi = TameCharacter(args.ell, args.d, args.e)
    _emit({"ell": args.ell, "d": args.d, "e": args.e,
           "digits": ell_restricted_digits(chi)}, args)


def _cmd_mackey(args):
    doc = _load_input(args)
    G = FinMatGroup.from_json(doc["group"])
    sub_gens = _mats_from(G.field, G.n, doc["subgroup"])
    sub = subgroup_datum(G, sub_gens)
    W = _module_from(doc)
    verdict = mackey_irreducible(sub, W, seed=args.seed)
    out = {
        "irreducible": verdict.irreducible,
        "reason": verdict.reason,
        "index": sub.index,
        "induced_dim": sub.index * W.dim,
    }
    _emit(out, args)


def _cmd_clifford(args):
    doc = _load_input(args)
    G = FinMatGroup.from_json(doc["group"])
    n_gens = _mats_from(G.field, G.n, doc["normal"])
    V = _module_from(doc)
    shape = clifford_decompose(G, n_gens, V, seed=args.seed)
    _emit({"e": shape.e, "f": shape.f,
           "factor_dim": shape.factors[0].dim}, args)


def _cmd_eliminate(args):
    constraints = [c for c in (args.constraints or "").split(",") if c]
    rows = eliminate_cases(args.n, constraints)
    docs = [_row_doc(r) for r in rows]
    csv_rows = [["case"]] + [[d["case"]] for d in docs]
    _emit({"n": args.n, "constraints": constraints,
           "surviving": [d["case"] for d in docs]}, args,
          csv_rows=csv_rows,
          text_lines=[d["case"] for d in docs] or ["(none)"])


def build_parser():
    parser = argparse.ArgumentParser(prog="envlab")
    sub = parser.add_subparsers(dest="command")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input")
    common.add_argument("--output",
                        default=_env_default("OUTPUT", None, str))
    common.add_argument("--seed", type=int,
                        default=_env_default("SEED", DEFAULT_SEED, int))
    common.add_argument("--cap", type=int,
                        default=_env_default("CAP", DEFAULT_CLOSURE_CAP, int))
    common.add_argument("--format", choices=("json", "text", "csv"),
                        default=_env_default("FORMAT", "json", str))
    sub.add_parser("nori", parents=[common]).set_defaults(func=_cmd_nori)
    sub.add_parser("envelope", parents=[common]).set_defaults(func=_cmd_envelope)
    sub.add_parser("formal-char", parents=[common]).set_defaults(func=_cmd_formal_char)
    p = sub.add_parser("table-a", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_table_a)
    p = sub.add_parser("tame", parents=[common])
    p.add_argument("--ell", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--twist", type=int, default=0)
    p.set_defaults(func=_cmd_tame)
    sub.add_parser("mackey", parents=[common]).set_defaults(func=_cmd_mackey)
    sub.add_parser("clifford", parents=[common]).set_defaults(func=_cmd_clifford)
    p = sub.add_parser("eliminate", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constraints", default="")
    p.set_defaults(func=_cmd_eliminate)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 0 if ex.code == 0 else 64
    if not getattr(args, "func", None):
        parser.print_help()
        return 64
    try:
        args.func(args)
    except UsageError as ex:
        print(f"usage error: {ex}", file=sys.stderr)
        return 64
    except ResourceError as ex:
        print(json.dumps({"error": type(ex).__name__, "message": str(ex)}),
              file=sys.stderr)
        return 2
    except (ValidationError, FileNotFoundError, KeyError,
            json.JSONDecodeError) as ex:
        print(json.dumps({"error": type(ex).__name__, "message": str(ex)}),
              file=sys.stderr)
        return 1
    return 0


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
