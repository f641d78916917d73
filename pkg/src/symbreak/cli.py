"""Command-line client for the group service.

Every subcommand is a thin wrapper over the HTTP API in ``service.py``.
By default the app is driven in-process; ``--server URL`` points the
same commands at a remote instance instead.

Exit codes: 0 success (or verification pass), 1 verification failure,
2 usage or input error, 3 inconclusive under the given budgets.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

import httpx

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _make_client(server):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app
    return TestClient(app)


def _group_args(p: argparse.ArgumentParser):
    p.add_argument("designator", nargs="?", default=None,
                   help="group name: catalog id/alias, A<n>/S<n>/C<n>, "
                        "or any of these with a ^(r) suffix")
    p.add_argument("--degree", type=int, default=None,
                   help="domain size for explicit generators")
    p.add_argument("--gen", action="append", default=None, metavar="CYCLES",
                   help="generator in cycle notation (repeatable)")


class _UsageError(Exception):
    pass


def _group_spec(args) -> dict:
    if args.designator is not None:
        if args.degree is not None or args.gen:
            raise _UsageError("give a designator or --degree/--gen, not both")
        return {"name": args.designator}
    if args.degree is None or not args.gen:
        raise _UsageError("group needs a designator, or --degree with --gen")
    return {"degree": args.degree, "generators": args.gen}


def _parse_sizes(text):
    """Accept an inclusive size range: '4..14', '4-14', or a single '7'."""
    text = text.strip()
    try:
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = text.split(sep, 1)
                return [int(lo), int(hi)]
        return [int(text), int(text)]
    except ValueError:
        raise _UsageError(f"sizes must be a range like 4..14, got {text!r}")


def _post(client, path, payload):
    r = client.post(path, json=payload)
    if r.status_code != 200:
        try:
            detail = r.json().get("detail", r.text)
        except ValueError:
            detail = r.text
        raise _UsageError(f"{path}: {detail}")
    return r.json()


def _emit(data, as_json):
    if as_json:
        print(json.dumps(data, indent=2))
        return True
    return False


def _fmt_set(points):
    return "{" + ",".join(str(p) for p in points) + "}"


# ---------------------------------------------------------------------------
# subcommand handlers (each returns an exit code)


def cmd_info(client, args) -> int:
    data = _post(client, "/group/info", {"group": _group_spec(args)})
    if not _emit(data, args.json):
        print(f"degree:      {data['degree']}")
        print(f"order:       {data['order']}")
        print(f"generators:  {'  '.join(data['generators']) or '(none)'}")
        print(f"orbits:      {' '.join(_fmt_set(o) for o in data['orbits'])}")
        print(f"fixed:       {_fmt_set(data['fixed_points']) if data['fixed_points'] else '(none)'}")
        print(f"transitive:  {'yes' if data['transitive'] else 'no'}")
        if data["transitive"]:
            print(f"primitive:   {'yes' if data['primitive'] else 'no'}")
        if data.get("identified"):
            print(f"identified:  {data['identified']}")
    return EXIT_OK


def cmd_regular_set(client, args) -> int:
    payload = {"group": _group_spec(args), "mode": args.mode,
               "budget": args.budget, "seed": args.seed,
               "census": args.census}
    if args.sizes:
        payload["sizes"] = _parse_sizes(args.sizes)
    data = _post(client, "/group/regular-set", payload)
    if not _emit(data, args.json):
        if data.get("census") is not None:
            for size, got in sorted(data["census"].items(), key=lambda kv: int(kv[0])):
                print(f"size {size}: {_fmt_set(got) if got else 'none'}")
        elif data["status"] == "found":
            print(f"regular set: {_fmt_set(data['set'])}")
        elif data["status"] == "none":
            print("no regular set exists")
        else:
            print(f"inconclusive: {data['detail']}")
    return EXIT_INCONCLUSIVE if data["status"] == "inconclusive" else EXIT_OK


def cmd_distinguishing(client, args) -> int:
    payload = {"group": _group_spec(args), "k_max": args.k_max,
               "budget": args.budget, "sweep_budget": args.sweep_budget,
               "seed": args.seed}
    data = _post(client, "/group/distinguishing", payload)
    if not _emit(data, args.json):
        if data["status"] == "exact":
            print(f"distinguishing number: {data['value']}")
            if data.get("labels"):
                print(f"labeling: {data['labels']}")
        else:
            lo, hi = data.get("lower"), data.get("upper")
            print(f"inconclusive: lower bound {lo}, upper bound {hi}")
            if data.get("detail"):
                print(f"  {data['detail']}")
    return EXIT_OK if data["status"] == "exact" else EXIT_INCONCLUSIVE


def cmd_orbitals(client, args) -> int:
    payload = {"group": _group_spec(args), "ordered": not args.unordered}
    data = _post(client, "/group/orbitals", payload)
    if not _emit(data, args.json):
        kind = "unordered" if args.unordered else "ordered"
        print(f"{data['count']} {kind} pair orbitals")
        for ob in data["orbitals"]:
            a, b = ob[0]
            print(f"  size {len(ob):6d}  containing ({a},{b})")
    return EXIT_OK


def cmd_sum(client, args) -> int:
    comps = [{"name": d} for d in args.designators]
    payload = {"kind": args.kind, "components": comps, "r": args.r}
    if args.pair:
        payload["pairs"] = [list(p) for p in args.pair]
    data = _post(client, "/group/sum", payload)
    if not _emit(data, args.json):
        print(f"degree:      {data['degree']}")
        print(f"order:       {data['order']}")
        print(f"generators:  {'  '.join(data['generators'])}")
        print(f"orbits:      {' '.join(_fmt_set(o) for o in data['orbits'])}")
    return EXIT_OK


def cmd_decompose(client, args) -> int:
    payload = {"group": _group_spec(args)}
    if args.split:
        parts = [p for p in args.split.split("/") if p.strip()]
        payload["split"] = [[int(x) for x in part.split(",")] for part in parts]
    data = _post(client, "/group/decompose", payload)
    if not _emit(data, args.json):
        for i, (blk, con, ko) in enumerate(zip(data["blocks"],
                                               data["constituents"],
                                               data["kernel_orders"]), 1):
            print(f"block {i}: {_fmt_set(blk)}")
            print(f"  constituent order {con['order']} on {con['degree']} points,"
                  f" kernel order {ko}")
        print(f"rebuilt order: {data['rebuilt_order']}")
    return EXIT_OK


def cmd_catalog(client, args) -> int:
    r = client.get("/catalog")
    if r.status_code != 200:
        raise _UsageError(f"/catalog: {r.text}")
    data = r.json()
    if not _emit(data, args.json):
        print(f"{'id':16s} {'kind':9s} {'suite':8s} {'deg':>4s} {'order':>10s}"
              f" {'D':>2s}  notes")
        for e in data:
            notes = []
            if e["no_regular_set"]:
                notes.append("no regular set")
            if e["nonpermutation_pairing"]:
                notes.append("outer pairing")
            if e["repairs"]:
                notes.append("repaired")
            print(f"{e['id']:16s} {e['kind']:9s} {e['suite']:8s}"
                  f" {e['degree']:4d} {e['order']:10d}"
                  f" {e['D'] if e['D'] else '-':>2}  {', '.join(notes)}")
    return EXIT_OK


def cmd_verify_paper(client, args) -> int:
    suites = []
    if args.table:
        suites.append({"1": "table1", "1b": "table1b", "2": "table2"}[args.table])
    if args.lemma:
        suites.append({"3.2": "lemma32", "3.3": "lemma33"}[args.lemma])
    if args.theorem:
        suites.append("theorem")
    if not suites:
        suites = ["all"]
    worst = EXIT_OK
    blobs = []
    for suite in suites:
        payload = {"suite": suite, "effort": args.effort, "seed": args.seed}
        if args.budget is not None:
            payload["labeling_budget"] = args.budget
        if args.sweep_budget is not None:
            payload["sweep_budget"] = args.sweep_budget
        data = _post(client, "/verify", payload)
        blobs.append({"suite": suite, **data})
        if not args.json:
            print(f"== {suite} ==")
            for rep in data["reports"]:
                tag = {"pass": "PASS", "fail": "FAIL",
                       "inconclusive": "INCONCLUSIVE"}[rep["status"]]
                print(f"[{tag:12s}] {rep['entry_id']:20s} ({rep['elapsed']:.2f}s)")
                for c in rep["checks"]:
                    if c["status"] != "pass":
                        print(f"    {c['status']}: {c['name']} - {c['detail']}")
        if data["status"] == "fail":
            worst = EXIT_FAIL
        elif data["status"] == "inconclusive" and worst == EXIT_OK:
            worst = EXIT_INCONCLUSIVE
    if args.json:
        print(json.dumps(blobs, indent=2))
    else:
        label = {EXIT_OK: "all checks passed",
                 EXIT_INCONCLUSIVE: "passed with inconclusive checks",
                 EXIT_FAIL: "FAILURES PRESENT"}[worst]
        print(f"result: {label}")
    return worst


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symbreak",
        description="permutation groups, regular sets, distinguishing numbers")
    ap.add_argument("--server", default=None,
                    help="base URL of a running service (default: in-process)")
    ap.add_argument("--json", action="store_true",
                    help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, orbits, transitivity, identity")
    _group_args(p)
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("regular-set", help="find a set with trivial setwise stabilizer")
    _group_args(p)
    p.add_argument("--sizes", default=None,
                   help="restrict to an inclusive size range, e.g. 4..14")
    p.add_argument("--mode", choices=("exhaustive", "randomized"),
                   default="exhaustive")
    p.add_argument("--budget", type=int, default=50_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--census", action="store_true",
                   help="report one witness per requested size")
    p.set_defaults(fn=cmd_regular_set)

    p = sub.add_parser("distinguishing", help="least label count with trivial partition stabilizer")
    _group_args(p)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="labelings examined per label count")
    p.add_argument("--sweep-budget", type=int, default=50_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_distinguishing)

    p = sub.add_parser("orbitals", help="orbits on pairs of distinct points")
    _group_args(p)
    p.add_argument("--unordered", action="store_true")
    p.set_defaults(fn=cmd_orbitals)

    p = sub.add_parser("sum", help="combine groups on disjoint blocks")
    p.add_argument("--kind", choices=("direct", "parallel", "multiple"),
                   required=True)
    p.add_argument("designators", nargs="+")
    p.add_argument("--r", type=int, default=2,
                   help="copy count for --kind multiple")
    p.add_argument("--pair", nargs=2, action="append", default=None,
                   metavar=("SRC", "IMG"),
                   help="generator pairing for --kind parallel (repeatable)")
    p.set_defaults(fn=cmd_sum)

    p = sub.add_parser("decompose", help="split an intransitive group over two blocks")
    _group_args(p)
    p.add_argument("--split", default=None,
                   help="explicit two-part split, e.g. 1,2,3/4,5,6,7")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("catalog", help="the bundled entries")
    p.add_argument("action", choices=("list",))
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("verify-paper",
                       help="re-derive the recorded claims suite by suite")
    p.add_argument("--table", choices=("1", "1b", "2"), default=None)
    p.add_argument("--lemma", choices=("3.2", "3.3"), default=None)
    p.add_argument("--theorem", action="store_true")
    p.add_argument("--effort", choices=("quick", "full"), default="full")
    p.add_argument("--budget", type=int, default=None,
                   help="labelings examined per label count")
    p.add_argument("--sweep-budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        with _make_client(args.server) as client:
            return args.fn(client, args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except httpx.HTTPError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
