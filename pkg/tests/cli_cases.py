"""Shared CLI golden cases: (label, argv, expected exit code)."""
import json
import subprocess
import sys

FAMILY = json.dumps({"n": 2, "N": 2, "k": 1, "delta": 1, "r": 1, "tau": ["z1", "z2", "1"],
                     "a": {"(1,0,0)": "1", "(0,0,1)": "-1"}})

GOLDEN = [
    ("diff-example", ["diff", "--expr", "z1*z2", "--p", "2", "--n", "2", "--k", "2"], 0),
    ("diff-order-zero", ["diff", "--expr", "z1^2 - 3*z2", "--p", "0", "--n", "2", "--k", "1"], 0),
    ("diff-parse-error", ["diff", "--expr", "z1^^2", "--p", "1", "--n", "1", "--k", "1"], 2),
    ("diff-overflow", ["diff", "--expr", "z1", "--p", "3", "--n", "1", "--k", "2"], 2),
    ("wronskian", ["wronskian", "--expr", "1", "--expr", "z1", "--n", "1", "--k", "1"], 0),
    ("bounds-example", ["bounds", "--n", "2", "--N", "2", "--k", "1", "--delta", "4"], 0),
    ("bounds-deng", ["bounds", "--deng", "--n", "2"], 0),
    ("bounds-missing-flag", ["bounds", "--n", "2"], 2),
    ("verify-pass", ["verify", "--suite", "invariance", "--seed", "42", "--trials", "12"], 0),
    ("verify-unknown-suite", ["verify", "--suite", "nope"], 2),
    ("incidence-on-surface", ["incidence", "--spec", FAMILY, "--point", "1,0"], 0),
    ("incidence-off-surface", ["incidence", "--spec", FAMILY, "--germ", "1,1;0,1"], 1),
]


def run_cli(argv):
    proc = subprocess.run([sys.executable, "-m", "jetwronsk", *argv, "--quiet"],
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def without_timing(stdout: str) -> str:
    report = json.loads(stdout)
    report.pop("timing", None)
    return json.dumps(report, sort_keys=True, indent=2)
