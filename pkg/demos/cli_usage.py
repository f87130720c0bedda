# # Driving the command-line tool
#
# Each call reads a CSV or JSON input and writes a JSON result document.

import json
import subprocess
import sys
import tempfile
from pathlib import Path

tmp = Path(tempfile.mkdtemp())


def pronyiir(*args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "pronyiir", *args],
                          input=stdin, capture_output=True, text=True)
    if proc.stderr:
        print("stderr:", proc.stderr.strip())
    return proc.returncode, proc.stdout


# ## Time-domain design from a sample file

(tmp / "h.csv").write_text("n,value\n" + "".join(f"{n},{0.5 ** n}\n" for n in range(4)))
code, out = pronyiir("design-time", str(tmp / "h.csv"), "-M", "1", "-N", "2", "--mode", "interp")
print("exit", code)
print(out)

# ## The lowpass band specification

spec = {"length": 41, "bands": [{"lo": 0.0, "hi": 0.2, "magnitude": 1.0},
                                {"lo": 0.2, "hi": 0.5, "magnitude": 0.0}]}
code, out = pronyiir("design-freq", "-", "-M", "6", "-N", "6", "--mode", "ls", stdin=json.dumps(spec))
doc = json.loads(out)
print("exit", code, "stable:", doc["report"]["stable"])
print("pole moduli:", [round(p["modulus"], 4) for p in doc["report"]["poles"]])

# ## Evaluating the designed filter

(tmp / "lowpass.json").write_text(out)
code, out = pronyiir("eval", str(tmp / "lowpass.json"), "--grid", "8")
for row in json.loads(out)["grid"]:
    print(f"  omega = {row['omega']:.3f}  |H| = {row['magnitude']:.4f}")

# ## A failing design exits with status 3

(tmp / "bad.csv").write_text("n,value\n0,0\n1,1\n2,0\n")
code, out = pronyiir("design-time", str(tmp / "bad.csv"), "-M", "0", "-N", "2")
print("exit", code)
print(out)
