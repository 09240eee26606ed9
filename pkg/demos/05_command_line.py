"""
The command-line front end
==========================

``frenet-kit`` samples a curve on a grid and writes CSV or JSON. Exit codes:
0 success, 2 bad input, 3 degenerate curve or domain error, 4 failed
verification.
"""

import subprocess
import sys


def frenet_kit(*args):
    proc = subprocess.run([sys.executable, "-m", "frenet_kit", *args],
                          capture_output=True, text=True)
    print("$ frenet-kit", " ".join(repr(a) if " " in a else a for a in args))
    print(proc.stdout + proc.stderr, end="")
    print("exit", proc.returncode, "\n")


frenet_kit("--curve", "[t, t^2, t^3, t^4]", "--samples", "3")
frenet_kit("--curve", "[cos(t), sin(t), 0.5*t]", "--samples", "2", "--verify")
frenet_kit("--curve", "[cos(t), sin(t), 0, 0]", "--samples", "2")
frenet_kit("--curve", "[cos(t), sin(t), 0, 0]", "--samples", "2", "--degenerate-ok")
frenet_kit("--curve", "[t, t^2", "--samples", "2")
frenet_kit("--curve", "[t, t^2]", "--samples", "1", "--output", "json")
