"""Command-line front door.

The CLI is a thin client over the HTTP facade: every subcommand posts to
the corresponding endpoint and renders the response.  By default the app
runs in-process; --server points the same client at a remote instance.

Exit codes: 0 success; 2 usage; 3 bad input (parse/validation); 4 cap
exceeded; 5 violation (a failed group check, a theorem check that did not
hold, or an internal consistency alarm); 6 precondition failed; 7
transport or unexpected failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Optional

import httpx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CAP = 4
EXIT_VIOLATION = 5
EXIT_PRECONDITION = 6
EXIT_TRANSPORT = 7


class ServiceClient:
    """POSTs to the in-process app, or to --server when given."""

    def __init__(self, server: Optional[str] = None) -> None:
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> tuple[int, Any]:
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"error": {"code": "transport", "detail": resp.text[:500]}}
        return resp.status_code, body


def _error_exit_code(status: int, body: Any) -> int:
    code = ""
    if isinstance(body, dict):
        code = body.get("error", {}).get("code", "") if isinstance(body.get("error"), dict) else ""
    if status == 400:
        return EXIT_PARSE
    if status == 422 and code == "cap-exceeded":
        return EXIT_CAP
    if status == 422 and code == "not-a-group":
        return EXIT_VIOLATION
    if status == 422:
        return EXIT_PARSE
    if status == 500 and code == "internal-check":
        return EXIT_VIOLATION
    return EXIT_TRANSPORT


def _print_error(status: int, body: Any) -> None:
    if isinstance(body, dict) and isinstance(body.get("error"), dict):
        err = body["error"]
        print(f"error [{err.get('code')}]: {err.get('detail')}", file=sys.stderr)
        if "rejection" in err:
            rej = err["rejection"]
            print(
                f"  axiom failed: {rej.get('axiom')}; {rej.get('detail')}",
                file=sys.stderr,
            )
    elif isinstance(body, dict) and "detail" in body:
        print(f"error [validation]: {body['detail']}", file=sys.stderr)
    else:
        print(f"error: HTTP {status}", file=sys.stderr)


# rendering helpers; base is 0 or 1 and affects human output only


def _shift_map(text: str, base: int) -> str:
    if base == 0:
        return text
    inner = text.strip()[1:-1]
    return "[" + ",".join(str(int(t) + base) for t in inner.split(",")) + "]"


def _fmt_points(values: list[int], base: int) -> str:
    return "{" + ",".join(str(v + base) for v in values) + "}"


def _fmt_blocks(blocks: list[list[int]], base: int) -> str:
    return " ".join(_fmt_points(b, base) for b in blocks)


def _render_group(report: dict, base: int, indent: str = "") -> list[str]:
    kind = "NG group" if report["is_ng"] else "permutation group"
    lines = [
        f"{indent}{kind} of order {report['order']} on {report['n']} points",
        f"{indent}  identity:      {_shift_map(report['identity'], base)}",
        f"{indent}  kernel blocks: {_fmt_blocks(report['kernel_blocks'], base)}",
        f"{indent}  image:         {_fmt_points(report['image'], base)}",
        f"{indent}  quotient size: {report['quotient_order']}",
    ]
    elems = " ".join(_shift_map(t, base) for t in report["elements"])
    lines.append(f"{indent}  elements:      {elems}")
    return lines


def _render_claim(report: dict, base: int, indent: str = "") -> list[str]:
    lines = [f"{indent}[{report['status']}] {report['claim']}"]
    for check in report.get("checks", []):
        lines.append(f"{indent}  [{check['status']}] {check['claim']}")
    if report.get("status") != "holds" and report.get("witness"):
        lines.append(f"{indent}  witness: {json.dumps(report['witness'])}")
    return lines


def _claim_exit(report: dict) -> int:
    status = report.get("status")
    if status == "holds":
        return EXIT_OK
    if status == "precondition-failed":
        return EXIT_PRECONDITION
    return EXIT_VIOLATION


def _cmd_membership(args, client: ServiceClient, base: int) -> tuple[int, Any, list[str]]:
    status, body = client.post("/membership", {"map": args.map})
    if status != 200:
        return status, body, []
    verdict = "can belong to a transformation group" if body["member"] else "cannot belong to any transformation group"
    lines = [f"{_shift_map(body['map'], base)}: {verdict}", f"  reason: {body['reason']}"]
    lines.append(f"  can serve as a group identity: {'yes' if body['identity_capable'] else 'no'}")
    if body.get("witness_group"):
        lines.append("  cyclic witness:")
        lines.extend(_render_group(body["witness_group"], base, "  "))
    return status, body, lines


def _cmd_idempotents(args, client, base) -> tuple[int, Any, list[str]]:
    status, body = client.post("/idempotents", {"n": args.n})
    if status != 200:
        return status, body, []
    lines = [
        f"n={body['n']}: {body['count']} idempotents "
        f"(closed form {body['formula_count']})"
    ]
    lines.extend(f"  {_shift_map(t, base)}" for t in body["idempotents"])
    return status, body, lines


def _cmd_hclass(args, client, base):
    status, body = client.post("/hclass", {"map": args.map})
    if status != 200:
        return status, body, []
    return status, body, _render_group(body, base)


def _cmd_max_ng(args, client, base):
    status, body = client.post("/max-ng", {"n": args.n})
    if status != 200:
        return status, body, []
    lines = [f"n={body['n']}: maximal NG group order {body['max_ng_order']}"]
    lines.extend(_render_group(body["witness"], base, "  "))
    return status, body, lines


def _cmd_scan(args, client, base):
    status, body = client.post(
        "/scan", {"n": args.n, "bounded": args.bounded, "workers": args.threads}
    )
    if status != 200:
        return status, body, []
    total_groups = sum(len(p["groups"]) for p in body["pools"])
    lines = [
        f"scan n={body['n']} ({body['mode']}): {len(body['pools'])} pools, "
        f"{total_groups} groups, max NG order {body['max_ng_order']}"
    ]
    if body.get("structural_max_ng_order") is not None:
        lines.append(
            f"  structural bound via idempotent groups: {body['structural_max_ng_order']}"
        )
    for p in body["pools"]:
        rej = ", ".join(f"{k}={v}" for k, v in sorted(p["rejections"].items()))
        lines.append(
            f"  pool {_fmt_blocks(p['partition'], base)}: size {p['pool_size']}, "
            f"{p['subsets_examined']}/{p['subsets_total']} subsets examined, "
            f"{len(p['groups'])} groups ({rej})"
        )
        if p.get("member_hclass"):
            mh = p["member_hclass"]
            lines.append(
                f"    H-class containment: {mh['checked']} members checked, "
                f"{len(mh['violations'])} violations, max H-class order "
                f"{mh['max_hclass_order']}"
            )
    for note in body["notes"]:
        lines.append(f"  note: {note}")
    return status, body, lines


def _cmd_witness(args, client, base):
    status, body = client.post("/witness", {"n": args.n})
    if status != 200:
        return status, body, []
    return status, body, _render_group(body, base)


def _cmd_rho(args, client, base):
    status, body = client.post("/rho", {"maps": args.maps})
    if status != 200:
        return status, body, []
    if body.get("rejection"):
        rej = body["rejection"]
        lines = [
            f"not a group: {rej['axiom']}",
            f"  {rej['detail']}",
        ]
        return status, body, lines
    lines = _render_group(body["group"], base)
    q = body["quotient"]
    lines.append(f"quotient permutation group on {q['m']} blocks:")
    for src, perm in q["label_map"].items():
        lines.append(f"  {_shift_map(src, base)} -> {perm}")
    return status, body, lines


def _cmd_semidirect(args, client, base):
    status, body = client.post("/semidirect", {"spec": args.spec})
    if status != 200:
        return status, body, []
    labels = body["group"]["labels"]

    def named(indices: list[int]) -> str:
        return "{" + ", ".join(labels[i] for i in indices) + "}"

    lines = [
        f"{body['group']['name']}: order {body['order']} "
        f"(p={body['p']}, q={body['q']}, a={body['a']})",
        f"  N (order {len(body['N'])}): {named(body['N'])}",
        f"  H (order {len(body['H'])}): {named(body['H'])}",
        f"  U (order {len(body['U'])}): {named(body['U'])}",
        f"  V (order {len(body['V'])}): {named(body['V'])}",
        f"  x = {labels[body['x']]} (index {body['x']}), "
        f"y = {labels[body['y']]} (index {body['y']})",
    ]
    return status, body, lines


def _cmd_thm33(args, client, base):
    status, body = client.post("/thm33", {"spec": args.spec})
    if status != 200:
        return status, body, []
    lines = _render_claim(body, base)
    sr = body.get("statement_reading")
    if sr:
        lines.append(
            f"  with V = <xy> alone: order {sr['V_order']}, "
            f"subnormal: {sr['V_subnormal']}, UV covers G: {sr['UV_covers_G']}"
        )
    return status, body, lines


def _load_group_file(path: str) -> dict:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def _cmd_residual(args, client, base):
    payload = {"group": _load_group_file(args.group), "class": args.group_class}
    status, body = client.post(f"/{args.command}", payload)
    if status != 200:
        return status, body, []
    lines = [
        f"{args.command} for class {body['class']}: order {body['order']}",
        f"  members: {body['members']}",
        f"  labels:  {', '.join(body['labels'])}",
    ]
    return status, body, lines


def _cmd_check_thm32(args, client, base):
    payload = {
        "group": _load_group_file(args.group),
        "u": args.u,
        "v": args.v,
        "class": args.group_class,
    }
    status, body = client.post("/check-thm32", payload)
    if status != 200:
        return status, body, []
    return status, body, _render_claim(body, base)


def _cmd_verify_all(args, client, base):
    status, body = client.post(
        "/verify-all",
        {"max_n": args.max_n, "seed": args.seed, "workers": args.threads},
    )
    if status != 200:
        return status, body, []
    lines = []
    for c in body["criteria"]:
        flag = "PASS" if c["passed"] else "FAIL"
        lines.append(
            f"[{flag}] {c['id']}. {c['name']} ({c['seconds']:.2f}s) - {c['details']}"
        )
    lines.append(
        "all criteria passed" if body["all_passed"] else "SOME CRITERIA FAILED"
    )
    return status, body, lines


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngroups",
        description=(
            "Groups of non-bijective transformations on a finite set: "
            "membership checks, idempotent censuses, exhaustive scans, the "
            "(n-1)! witness, and residual/radical verification on finite "
            "group tables."
        ),
    )
    parser.add_argument("--json", action="store_true", help="emit raw JSON")
    parser.add_argument(
        "--one-based",
        action="store_true",
        help="render carrier points as 1..n in human output (JSON stays 0-based)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    parser.add_argument(
        "--threads", type=int, default=1, help="worker processes for pool scans"
    )
    parser.add_argument(
        "--server", metavar="URL", default=None, help="use a remote service instance"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("membership", help="can this map belong to a group?")
    s.add_argument("map", help='transformation literal, e.g. "[0,0,2]"')

    s = sub.add_parser("idempotents", help="enumerate the idempotents of T_n")
    s.add_argument("n", type=int)

    s = sub.add_parser("hclass", help="the maximal group at an idempotent")
    s.add_argument("map")

    s = sub.add_parser("max-ng", help="largest NG group order for carrier size n")
    s.add_argument("n", type=int)

    s = sub.add_parser("scan", help="exhaustive kernel-pool group census")
    s.add_argument("n", type=int)
    s.add_argument("--bounded", action="store_true", help="size-capped mode (allows n=4)")

    s = sub.add_parser("witness", help="the order-(n-1)! NG witness group")
    s.add_argument("n", type=int)

    s = sub.add_parser("rho", help="check a group and show its block permutations")
    s.add_argument("maps", nargs="+", help="transformation literals")

    s = sub.add_parser("semidirect", help="build C_q x| (C_p x C_p)")
    s.add_argument("spec", help='"p,q" or "p,q,a"')

    s = sub.add_parser("thm33", help="radical/residual contrast on a semidirect instance")
    s.add_argument("spec")

    for name, help_text in (
        ("residual", "smallest normal subgroup with quotient in the class"),
        ("radical", "largest normal subgroup inside the class"),
    ):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("group", help="group table JSON file (or - for stdin)")
        s.add_argument(
            "--class",
            dest="group_class",
            required=True,
            help="p:<prime> or nilpotent",
        )

    s = sub.add_parser(
        "check-thm32", help="residual factorization over a subnormal product"
    )
    s.add_argument("group", help="group table JSON file (or - for stdin)")
    s.add_argument("u", type=_parse_indices, help="comma-separated U member indices")
    s.add_argument("v", type=_parse_indices, help="comma-separated V member indices")
    s.add_argument("--class", dest="group_class", required=True)

    s = sub.add_parser("verify-all", help="run the full acceptance suite")
    s.add_argument("--max-n", type=int, default=4, choices=(2, 3, 4))

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)

    return parser


_HANDLERS: dict[str, Callable] = {
    "membership": _cmd_membership,
    "idempotents": _cmd_idempotents,
    "hclass": _cmd_hclass,
    "max-ng": _cmd_max_ng,
    "scan": _cmd_scan,
    "witness": _cmd_witness,
    "rho": _cmd_rho,
    "semidirect": _cmd_semidirect,
    "thm33": _cmd_thm33,
    "residual": _cmd_residual,
    "radical": _cmd_residual,
    "check-thm32": _cmd_check_thm32,
    "verify-all": _cmd_verify_all,
}


def _verdict_exit(command: str, body: Any) -> int:
    if command in ("thm33", "check-thm32"):
        return _claim_exit(body)
    if command == "rho" and body.get("rejection"):
        return EXIT_VIOLATION
    if command == "verify-all" and not body.get("all_passed"):
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        client = ServiceClient(args.server)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach {args.server}: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT

    base = 1 if args.one_based and not args.json else 0
    handler = _HANDLERS[args.command]
    try:
        status, body, lines = handler(args, client, base)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except httpx.HTTPError as exc:
        print(f"error: transport failure: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT

    if status != 200:
        _print_error(status, body)
        return _error_exit_code(status, body)

    if args.json:
        print(json.dumps(body, indent=2))
    else:
        for line in lines:
            print(line)
    return _verdict_exit(args.command, body)


if __name__ == "__main__":
    sys.exit(main())
