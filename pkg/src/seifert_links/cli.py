"""Command-line front end.

    seifert-links DIAGRAM [--command validate|group|homology|class|alexander|all]
                          [--sigma INDEX|all] [--format text|structured]
    seifert-links --fixtures DIR

Exit status: 0 success, 1 validation failure (or a failed fixture pair), 2 I/O or
parse error.  The structured format is JSON with sorted keys; it carries exactly the
data of the text report.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import DiagramSyntaxError, components, load_diagram, validate
from .grouppres import build_presentation, format_presentation
from .homology import ambient_h1, h1, homology_class
from .moves import load_fixture_pairs
from .twisted import UnsupportedLink, twisted_alexander

COMMANDS = ("validate", "group", "homology", "class", "alexander", "all")


def _group_report(p) -> dict:
    return {"generators": list(p.generators),
            "relators": [{"tag": r.tag, "word": line.split(": ", 1)[1]}
                         for r, line in zip(p.relators, format_presentation(p).splitlines()[1:])]}


def _homology_report(p) -> dict:
    H = h1(p)
    return {"group": str(H)[len("H1 = "):], "rank": H.rank, "torsion": list(H.torsion),
            "images": {lab: {"free": list(H.images[lab][0]), "torsion": list(H.images[lab][1])}
                       for lab in H.labels}}


def _class_report(d) -> dict:
    amb = ambient_h1(d)
    out = {"ambient": str(amb)[len("H1 = "):], "components": []}
    for k in range(1, components(d).nu + 1):
        c = homology_class(d, k)
        free, tors = amb.coordinates(c.as_vector())
        out["components"].append({
            "component": k, "eta_a": list(c.eta_a), "eta_b": list(c.eta_b), "eta_h": c.eta_h,
            "eta_l": list(c.eta_l), "image_free": list(free), "image_torsion": list(tors),
            "trivial": not any(free) and not any(tors)})
    return out


def _alexander_report(p, sigma) -> dict:
    try:
        polys = twisted_alexander(p, sigma_index=sigma)
    except UnsupportedLink as exc:
        return {"unsupported": str(exc), "polynomials": []}
    return {"polynomials": [{"sigma": t.sigma.label(), "character": t.sigma.describe(),
                             "convention": t.convention, "delta": str(t)} for t in polys]}


def build_report(d, command: str, sigma="all") -> dict:
    report = {}
    problems = validate(d)
    report["validation"] = {"valid": not problems, "violations": problems}
    if problems or command == "validate":
        return report
    p = build_presentation(d)
    if command in ("group", "all"):
        report["group"] = _group_report(p)
    if command in ("homology", "all"):
        report["homology"] = _homology_report(p)
    if command in ("class", "all"):
        report["class"] = _class_report(d)
    if command in ("alexander", "all"):
        report["alexander"] = _alexander_report(p, sigma)
    return report


def render_text(report: dict) -> str:
    lines = []
    v = report["validation"]
    lines.append("valid" if v["valid"] else "invalid")
    lines += [f"  {msg}" for msg in v["violations"]]
    if "group" in report:
        g = report["group"]
        lines.append("generators: " + " ".join(g["generators"]))
        lines += [f"{r['tag']}: {r['word']}" for r in g["relators"]]
    if "homology" in report:
        h = report["homology"]
        lines.append(f"H1 = {h['group']}")
        for lab, img in h["images"].items():
            lines.append(f"  {lab} -> free {tuple(img['free'])} torsion {tuple(img['torsion'])}")
    if "class" in report:
        c = report["class"]
        lines.append(f"H1(M) = {c['ambient']}")
        for comp in c["components"]:
            lines.append(f"component {comp['component']}: eta_a={tuple(comp['eta_a'])} "
                         f"eta_b={tuple(comp['eta_b'])} eta_h={comp['eta_h']} "
                         f"eta_l={tuple(comp['eta_l'])}")
            lines.append(f"component {comp['component']} class: "
                         + ("trivial" if comp["trivial"] else "nontrivial")
                         + f" (free {tuple(comp['image_free'])}, torsion {tuple(comp['image_torsion'])})")
    if "alexander" in report:
        a = report["alexander"]
        if "unsupported" in a:
            lines.append(f"Delta unsupported: {a['unsupported']}")
        for t in a["polynomials"]:
            lines.append(f"Delta[sigma={t['sigma']}] = {t['delta']}  ({t['convention']}; {t['character']})")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return render_text(report)


def run_fixtures(directory: str, out) -> int:
    failed = 0
    for pair in load_fixture_pairs(directory):
        sides = []
        for d in (pair.before, pair.after):
            p = build_presentation(d)
            H = h1(p)
            polys = [str(t) for t in twisted_alexander(p, H=H)] if H.rank else []
            sides.append((str(H), polys[:1], sorted(polys[1:])))
        ok = sides[0] == sides[1]
        failed += not ok
        out.write(f"{pair.move_name}_{pair.ident}: {'ok' if ok else 'FAIL'} {sides[0][0]}\n")
    return 1 if failed else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="seifert-links",
                                 description="Link groups and twisted Alexander polynomials "
                                             "of arrow diagrams in Seifert fibered spaces.")
    ap.add_argument("path", nargs="?", help="diagram file")
    ap.add_argument("--command", choices=COMMANDS, default="all")
    ap.add_argument("--sigma", default="all", help="character index or 'all'")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--fixtures", metavar="DIR", help="check every before/after pair in DIR")
    args = ap.parse_args(argv)

    if args.fixtures:
        try:
            return run_fixtures(args.fixtures, sys.stdout)
        except (OSError, DiagramSyntaxError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if not args.path:
        ap.error("a diagram path is required unless --fixtures is given")
    sigma = args.sigma
    if sigma != "all":
        try:
            sigma = int(sigma)
        except ValueError:
            ap.error("--sigma takes an integer index or 'all'")
    try:
        d = load_diagram(args.path)
    except (OSError, UnicodeDecodeError, DiagramSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = build_report(d, args.command, sigma)
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(report, args.format))
    return 0 if report["validation"]["valid"] else 1


if __name__ == "__main__":
    sys.exit(main())
