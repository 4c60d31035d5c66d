"""Report assembly and rendering shared by the command-line verbs."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_VERSION = 1


def schema() -> dict:
    text = resources.files("perpcalc").joinpath("report.schema.json").read_text()
    return json.loads(text)


def new_report(verb: str, targets: list[str], flags: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": {"verb": verb, "targets": list(targets), "flags": flags},
        "ring": None,
        "module": None,
        "checks": [],
        "guards": {},
        "status": "ok",
    }


def ring_id(R) -> dict:
    return {"name": R.name, "order": R.order, "digest": R.digest}


def add_check(report: dict, name: str, verdict: str, witness=None, **detail) -> dict:
    """``verdict`` is one of pass, fail, info."""
    entry = {"name": name, "verdict": verdict, "witness": witness}
    if detail:
        entry["detail"] = detail
    report["checks"].append(entry)
    return entry


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _flat(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=True, separators=(", ", ": "))
    if value is None:
        return "-"
    return str(value)


def to_text(report: dict) -> str:
    cmd = report["command"]
    lines = [f"perpcalc {cmd['verb']} " + " ".join(repr(t) for t in cmd["targets"])]
    if report.get("ring"):
        r = report["ring"]
        lines.append(f"ring: {r['name']}  order {r['order']}  digest {r['digest']}")
    if report.get("module"):
        lines.append(f"module: {_flat(report['module'])}")
    for c in report["checks"]:
        lines.append(f"[{c['verdict'].upper():4}] {c['name']}")
        for k, v in sorted(c.get("detail", {}).items()):
            lines.append(f"       {k}: {_flat(v)}")
        if c.get("witness") is not None:
            lines.append(f"       witness: {_flat(c['witness'])}")
    if report.get("error"):
        lines.append(f"error ({report['error']['kind']}): {report['error']['message']}")
    if "timings" in report:
        lines.append(f"timings: {_flat(report['timings'])}")
    lines.append(f"guards: {_flat(report['guards'])}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"
