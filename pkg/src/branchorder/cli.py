"""Command-line front end.  JSON on stdout, a one-line summary on stderr.

Exit codes: 0 informative result, 1 internal error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .certificate import NloCertificate, verify_certificate
from .cosets import FiniteOrder, todd_coxeter
from .family import FamilyParams, build_raw_presentation, build_standard_presentation
from .homology import h1
from .orderability import Inconclusive, TrivialGroup, nlo_search
from .replay import replay_suite, summarize
from .rewriting import DEFAULT_BUDGET, SearchBudget

COMMANDS = ("present", "homology", "certify", "verify", "replay", "coset")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    params: FamilyParams | None = None
    form: str = "standard"
    radius: int = 2
    budget: SearchBudget = DEFAULT_BUDGET
    m_range: tuple[int, int] = (-4, 4)
    output_path: str | None = None
    cert_path: str | None = None
    timestamp: bool = True


def parse_k(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise argparse.ArgumentTypeError("--k needs a comma-separated list of integers, e.g. 0,0")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchorder",
                                     description="Presentations, homology, coset enumeration and "
                                                 "non-left-orderability certificates for a family "
                                                 "of branched-cover groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def family(p, form=True):
        p.add_argument("--k", type=parse_k, required=True, help="comma-separated k_1,...,k_n")
        p.add_argument("--n", type=positive_int, help="number of k values (inferred if omitted)")
        if form:
            p.add_argument("--form", choices=("raw", "standard"), default="standard")
        p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")

    family(sub.add_parser("present", help="print a presentation"))
    family(sub.add_parser("homology", help="H_1 via Smith normal form"))
    p = sub.add_parser("certify", help="search for a non-left-orderability certificate")
    family(p, form=False)
    p.add_argument("--radius", type=positive_int, default=2)
    p.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET.max_states,
                   help="max search states per equality proof")
    p.add_argument("--out", help="write the certificate here")
    p = sub.add_parser("verify", help="check a certificate independently")
    family(p, form=False)
    p.add_argument("--cert", required=True)
    p = sub.add_parser("replay", help="replay the word identities for a range of m")
    family(p, form=False)
    p.add_argument("--m-from", type=int, default=-4)
    p.add_argument("--m-to", type=int, default=4)
    p.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET.max_states)
    p = sub.add_parser("coset", help="Todd-Coxeter enumeration over the trivial subgroup")
    family(p)
    p.add_argument("--max-cosets", type=positive_int, default=DEFAULT_BUDGET.max_cosets)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--k -1,-1" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a == "--k" and i + 1 < len(argv) and argv[i + 1].startswith("-") and \
                argv[i + 1][1:2].isdigit():
            out.append(f"--k={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    try:
        params = FamilyParams.of(ns.k, ns.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = CliConfig(command=ns.command, params=params, timestamp=not ns.no_timestamp)
    cfg.form = getattr(ns, "form", "standard")
    if ns.command in ("certify", "replay"):
        cfg.budget = SearchBudget(max_states=ns.budget)
    if ns.command == "certify":
        cfg.radius = ns.radius
        cfg.output_path = ns.out
    if ns.command == "verify":
        cfg.cert_path = ns.cert
    if ns.command == "replay":
        if ns.m_from > ns.m_to:
            raise UsageError("--m-from must not exceed --m-to")
        cfg.m_range = (ns.m_from, ns.m_to)
    if ns.command == "coset":
        cfg.budget = SearchBudget(max_cosets=ns.max_cosets)
    return cfg


def _presentation(cfg: CliConfig):
    if cfg.form == "raw":
        return build_raw_presentation(cfg.params)
    return build_standard_presentation(cfg.params)


def _check_writable(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path)) or "."
    if os.path.isdir(path) or not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise UsageError(f"cannot write output file {path!r}")
    if os.path.exists(path) and not os.access(path, os.W_OK):
        raise UsageError(f"cannot write output file {path!r}")


def cmd_present(cfg: CliConfig) -> tuple[dict, str]:
    P = _presentation(cfg)
    return ({"presentation": P.to_json(), "form": cfg.form},
            f"{cfg.form} presentation: {len(P.generators)} generators, {len(P.relators)} relators")


def cmd_homology(cfg: CliConfig) -> tuple[dict, str]:
    snf = h1(_presentation(cfg))
    return ({"form": cfg.form, "h1": snf.to_json()}, f"|H_1| = {snf.order}")


def cmd_certify(cfg: CliConfig) -> tuple[dict, str]:
    if cfg.output_path:
        _check_writable(cfg.output_path)
    P = build_standard_presentation(cfg.params)
    result = nlo_search(P, radius=cfg.radius, budget=cfg.budget)
    out = {"radius": cfg.radius, "max_states": cfg.budget.max_states}
    if isinstance(result, TrivialGroup):
        out.update(outcome="trivial-group", detail=result.explanation)
    elif isinstance(result, Inconclusive):
        out.update(outcome="inconclusive", detail=result.reason)
    else:
        out.update(outcome="certified", method=result.method, leaves=len(result.leaves()))
        if cfg.output_path:
            with open(cfg.output_path, "w") as fh:
                fh.write(result.dumps() + "\n")
            out["certificate"] = cfg.output_path
        else:
            out["certificate"] = result.to_json()
    return out, out["outcome"]


def cmd_verify(cfg: CliConfig) -> tuple[dict, str]:
    try:
        with open(cfg.cert_path) as fh:
            cert = NloCertificate.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read certificate {cfg.cert_path!r}: {exc}") from None
    verdict = verify_certificate(build_standard_presentation(cfg.params), cert)
    if verdict:
        return {"verdict": "accept", "leaves": verdict.leaves}, "Accept"
    return ({"verdict": "reject", "reason": verdict.reason,
             "path": [list(p) for p in verdict.path]}, f"Reject: {verdict}")


def cmd_replay(cfg: CliConfig) -> tuple[dict, str]:
    report = replay_suite(cfg.params, cfg.m_range, cfg.budget)
    if not cfg.timestamp:
        for e in report:
            e["millis"] = 0
    totals = summarize(report)
    proved = sum(t["proved"] for t in totals.values())
    return ({"m_from": cfg.m_range[0], "m_to": cfg.m_range[1], "summary": totals,
             "instances": report}, f"{proved}/{len(report)} identities proved")


def cmd_coset(cfg: CliConfig) -> tuple[dict, str]:
    res = todd_coxeter(_presentation(cfg), cfg.budget)
    out = {"form": cfg.form, "max_cosets": cfg.budget.max_cosets, **res.to_json()}
    if isinstance(res, FiniteOrder):
        return out, f"finite, order {res.order}"
    return out, f"exceeded after {res.cosets_defined} cosets"


HANDLERS = {
    "present": cmd_present,
    "homology": cmd_homology,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "replay": cmd_replay,
    "coset": cmd_coset,
}


def run(cfg: CliConfig) -> tuple[dict, str]:
    body, summary = HANDLERS[cfg.command](cfg)
    doc = {"command": cfg.command, "k": list(cfg.params.k), "n": cfg.params.n, **body}
    if cfg.timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return doc, summary


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        doc, summary = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"branchorder: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report, don't traceback
        print(f"branchorder: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    json.dump(doc, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
