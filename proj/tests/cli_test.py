"""Runs the command-line tool: exit codes, stable output, report schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
failures = []


def run(args, want_code, report=True):
    with tempfile.TemporaryDirectory() as tmp:
        rpath = Path(tmp) / "report.json"
        cmd = [cli, *args] + (["--report", str(rpath)] if report else [])
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
        if proc.returncode != want_code:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}, want {want_code}\n{proc.stdout}{proc.stderr}")
            return proc, None
        doc = None
        if report and want_code in (0, 1):
            doc = json.loads(rpath.read_text())
            try:
                jsonschema.validate(doc, schema)
            except jsonschema.ValidationError as e:
                failures.append(f"{' '.join(args)}: report does not match the schema: {e.message}")
        return proc, doc


ok = [
    ["verify", "--family", "so", "--n", "3"],
    ["verify", "--family", "sl", "--n", "3", "--m", "2", "--format", "json"],
    ["verify", "--family", "so", "--n", "3", "--extended", "--star", "--metric"],
    ["verify", "--family", "so", "--n", "5", "--sphere", "--format", "latex"],
    ["verify", "--family", "sl", "--n", "2", "--heisenberg", "--epsilon", "-1", "--suite", "confluence,hilbert"],
    ["unbraid", "--n", "3", "--m", "2", "--format", "latex"],
    ["unbraid", "--n", "3", "--m", "3", "--sign", "plus", "--star"],
    ["unbraid", "--n", "3", "--m", "2", "--param", "gamma1=q^(-1/2)"],
    ["relations", "--family", "so", "--n", "3", "--m", "2", "--extended"],
    ["relations", "--free", "--format", "json"],
]
for args in ok:
    run(args, 0)

run(["unbraid", "--n", "3", "--m", "2", "--star", "--reality", "trivial"], 1)
run(["unbraid", "--n", "4", "--m", "2"], 2, report=False)
run(["unbraid", "--n", "3", "--m", "1"], 2, report=False)
run(["verify", "--family", "sl", "--n", "2", "--metric"], 2, report=False)
run(["verify", "--suite", "nonsense"], 2, report=False)
run(["verify", "--bogus-flag"], 2, report=False)
run(["unbraid", "--n", "3", "--m", "2", "--phi", "/nonexistent/phi.txt"], 2, report=False)
run(["--help"], 0, report=False)

# text output and reports are deterministic
for args in (["unbraid", "--n", "3", "--m", "3"], ["relations", "--family", "so", "--n", "5"]):
    a, ra = run(args, 0)
    b, rb = run(args, 0)
    if a.stdout != b.stdout or ra != rb:
        failures.append(f"{' '.join(args)}: output differs between runs")

# the relation listing for so(3)
p, doc = run(["relations", "--family", "so", "--n", "3"], 0)
if doc is not None and doc["counts"] != {"x": 3}:
    failures.append(f"so(3) relation counts {doc['counts']}")

# a configuration file, with a command-line override
with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "config.json"
    cfg.write_text(json.dumps({"family": "so", "n": 3, "m": 3, "sign": "plus"}))
    p, doc = run(["unbraid", "--config", str(cfg), "--sign", "minus"], 0)
    if doc is not None and (doc["config"]["sign"] != "minus" or doc["config"]["m"] != 3):
        failures.append(f"--config override gave {doc['config']}")
    run(["verify", "--config", str(Path(tmp) / "missing.json")], 2, report=False)

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
