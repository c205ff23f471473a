#!/usr/bin/env python3
"""End-to-end checks of the dplane command line: exit codes, schema, payloads, reproducibility."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

EXE, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as fh:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(fh))

failures = 0


def run(*args):
    p = subprocess.run([EXE, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, detail=""):
    global failures
    if not cond:
        failures += 1
        print(f"FAIL {name} {detail}")
    else:
        print(f"ok   {name}")


def certificate(name, *args):
    code, out, err = run(*args)
    check(f"{name}: exit 0", code == 0, err)
    if code != 0:
        return None
    doc = json.loads(out)
    errors = list(VALIDATOR.iter_errors(doc))
    check(f"{name}: schema", not errors, "; ".join(e.message for e in errors[:3]))
    return doc


def failure(name, want_code, want_kind, *args):
    code, _, err = run(*args)
    check(f"{name}: exit {want_code}", code == want_code, f"got {code}: {err.strip()}")
    if want_kind:
        try:
            kind = json.loads(err)["error"]["kind"]
        except (ValueError, KeyError):
            kind = None
        check(f"{name}: {want_kind}", kind == want_kind, err.strip())


# check-tangency
d = certificate("tangent line to conic", "check-tangency", "--B", "x*z - y^2", "--C", "z", "--field", "F13")
check("tangent line: one order-2 record", d and [r["order"] for r in d["result"]["records"]] == [2])
d = certificate("secant line", "check-tangency", "--B", "x*z - y^2", "--C", "y", "--field", "F13")
check("secant: two order-1 records", d and [r["order"] for r in d["result"]["records"]] == [1, 1])
failure("cuspidal B", 3, "BNotSmooth", "check-tangency", "--B", "y^2*z - x^3", "--C", "y", "--field", "F13")
failure("bad polynomial", 2, "SyntaxError", "check-tangency", "--B", "x^2 +", "--C", "y")
failure("inhomogeneous", 2, "Inhomogeneous", "check-tangency", "--B", "x^2 + y", "--C", "y")
failure("bad field", 2, None, "check-tangency", "--B", "x*z - y^2", "--C", "y", "--field", "F12")
failure("unknown subcommand", 2, None, "bogus")
failure("bad format", 2, None, "check-tangency", "--B", "x", "--C", "y", "--format", "xml")

# verify-ulrich
d = certificate("Fermat s=2", "verify-ulrich", "--B", "x^4 - y^4 - z^4", "--C", "x^2 - y^2 - z^2", "--field", "F13")
check("Fermat s=2: Exists, D.sigma(D) = 4",
      d and d["result"]["verdict"] == "Exists" and d["result"]["d_sigma_d"] == 4)
d = certificate("conic and secant", "verify-ulrich", "--B", "x*z - y^2", "--C", "y", "--field", "F13")
check("conic and secant: NotExists", d and d["result"]["verdict"] == "NotExists")
failure("degree mismatch", 3, "DegreeMismatch", "verify-ulrich", "--B", "x^4 - y^4 - z^4", "--C", "x", "--field", "F13")
d = certificate("Fermat over Q", "verify-ulrich", "--B", "x^4 - y^4 - z^4", "--C", "x^2 - y^2 - z^2", "--field", "Q")
check("Fermat over Q: Exists by parity", d and d["result"]["verdict"] == "Exists" and d["result"]["parity_only"])

# construct
d = certificate("construct fermat", "construct", "fermat", "--s", "2", "--field", "F13")
check("construct fermat: Exists", d and d["result"]["certificate"]["verdict"] == "Exists")
failure("construct fermat s=3", 3, "OddS", "construct", "fermat", "--s", "3", "--field", "F13")
d = certificate("construct squared", "construct", "squared", "--C", "x^3 - y^3 - z^3", "--field", "F13", "--seed", "1")
sextic = d and d["result"]["B"]
check("construct squared: sextic, Exists", d and d["result"]["certificate"]["verdict"] == "Exists"
      and d["result"]["certificate"]["s"] == 3)
if sextic:
    r = certificate("re-certify squared", "verify-ulrich", "--B", sextic, "--C", "x^3 - y^3 - z^3", "--field", "F13")
    check("re-certify squared: Exists", r and r["result"]["verdict"] == "Exists")
d = certificate("construct tangent-line", "construct", "tangent-line", "--B", "x*z - y^2", "--point", "1:2:4",
                "--field", "F13")
check("construct tangent-line: one record", d and len(d["result"]["certificate"]["report"]["records"]) == 1)
failure("tangent-line off the conic", 3, "PointNotOnCurve", "construct", "tangent-line", "--B", "x*z - y^2",
        "--point", "1:1:2", "--field", "F13")
failure("tangent-line on a cubic", 3, "NotAConic", "construct", "tangent-line", "--B", "x^3 - y^3 - z^3",
        "--point", "1:1:0", "--field", "F13")

# split-test
if sextic:
    d = certificate("split squared", "split-test", "--B", sextic, "--C", "x^3 - y^3 - z^3", "--field", "F13",
                    "--n", "40", "--seed", "3")
    check("split squared: AllSamplesSquare(40)",
          d and d["result"]["outcome"] == "AllSamplesSquare" and d["result"]["samples"] == 40)
d = certificate("split exact tangent", "split-test", "--mode", "exact", "--B", "x*z - y^2", "--C", "4*x - 4*y + z",
                "--field", "F13")
check("split exact tangent: RationalSplit", d and d["result"]["outcome"] == "RationalSplit")
d = certificate("split secant", "split-test", "--B", "x*z - y^2", "--C", "y", "--field", "F13")
check("split secant: NonSquareWitness", d and d["result"]["outcome"] == "NonSquareWitness")
d = certificate("split local", "split-test", "--mode", "local", "--l", "4")
check("split local: multiplicity 4", d and d["result"]["local_mult"] == 4 and d["result"]["product_ok"])
failure("monte carlo over Q", 3, "FieldNotFinite", "split-test", "--B", "x*z - y^2", "--C", "y", "--field", "Q")

# hunt-conics
d = certificate("hunt F5", "hunt-conics", "--B", "x^4 - y^4 - z^4", "--field", "F5")
check("hunt F5: count <= 63", d and 0 < d["result"]["count"] <= 63)
failure("hunt F101", 3, "FieldTooLarge", "hunt-conics", "--B", "x^4 - y^4 - z^4", "--field", "F101")
failure("hunt singular", 3, "BNotSmooth", "hunt-conics", "--B", "y^2*z^2 - x^4", "--field", "F5")

# input files and reproducibility
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "pair.txt")
    with open(path, "w") as fh:
        fh.write("# Fermat pair\nB = x^4 - y^4 - z^4\nC = x^2 - y^2 - z^2\n")
    d = certificate("input file", "verify-ulrich", "--input", path, "--field", "F13")
    check("input file: Exists", d and d["result"]["verdict"] == "Exists")

args = ["verify-ulrich", "--B", "x^8 - y^8 - z^8", "--C", "x^4 - y^4 - z^4", "--field", "F17", "--seed", "9"]
outs = []
for _ in range(2):
    _, out, _ = run(*args)
    doc = json.loads(out)
    doc.pop("timings")
    outs.append(json.dumps(doc))
check("byte-identical reruns", outs[0] == outs[1])

code, out, _ = run("check-tangency", "--B", "x*z - y^2", "--C", "z", "--field", "F13", "--format", "text")
check("text format", code == 0 and "order 2" in out)

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
