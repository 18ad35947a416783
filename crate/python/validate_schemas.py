"""Runs each JSON-emitting subcommand of the `polar-rank` binary and
validates its output against the schema files in schemas/.

    cargo build --release -p polar-rank-cli
    python3 python/validate_schemas.py [--bin target/release/polar-rank]
"""

import argparse
import json
import pathlib
import subprocess
import tempfile

import jsonschema

ROOT = pathlib.Path(__file__).resolve().parent.parent


def run(binary, args, expect=0):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise SystemExit(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bin", default=str(ROOT / "target" / "release" / "polar-rank"))
    binary = ap.parse_args().bin

    with tempfile.TemporaryDirectory() as tmp:
        matrix = str(pathlib.Path(tmp) / "w33.txt")
        cases = [
            ("rank_report", ["verify", "--m", "2", "--p", "3", "--t", "2"], 0),
            ("rank_report", ["verify", "--m", "2", "--p", "3", "--mode", "formula-only"], 0),
            ("rank_report", ["formula", "--m", "3", "--p", "5", "--r", "4", "--all-t", "3"], 0),
            ("table", ["table", "--m", "2", "--p", "2,3,5,7", "--t", "6"], 0),
            ("export", ["export", "--m", "2", "--p", "3", "--out", matrix], 0),
            ("rank", ["rank", matrix], 0),
            ("dmatrix", ["dmatrix", "--m", "3", "--p", "7"], 0),
            ("posets", ["posets", "--m", "2", "--p", "3", "--t", "2", "--d", "1"], 0),
            ("lemma_ledger", ["lab", "verify-lemmas", "--m", "2", "--p", "3", "--t", "1"], 2),
        ]
        for name, args, expect in cases:
            schema = json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())
            jsonschema.Draft202012Validator.check_schema(schema)
            jsonschema.validate(run(binary, args, expect), schema, cls=jsonschema.Draft202012Validator)
            print(f"ok  {name:<13} {' '.join(args[:1])}")


if __name__ == "__main__":
    main()
