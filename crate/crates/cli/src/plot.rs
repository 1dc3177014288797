//! Generated plotting script. The tool itself renders nothing.

pub const SCRIPT_NAME: &str = "plot.py";

pub fn script() -> &'static str {
    r#"#!/usr/bin/env python3
"""Throughput and SER curves from the CSVs in this directory.

Usage: python3 plot.py [directory]
"""
import csv
import os
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

root = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))


def rows(name):
    path = os.path.join(root, name)
    if not os.path.exists(path):
        return []
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def curves(data, value):
    out = defaultdict(list)
    for r in data:
        out[r["scheme"]].append((float(r["rho_db"]), float(r[value])))
    return {k: sorted(v) for k, v in out.items()}


throughput = curves(rows("throughput.csv"), "throughput")
fig, ax = plt.subplots()
for scheme, pts in throughput.items():
    ax.plot(*zip(*pts), marker="o", label=scheme)
bounds = rows("analytic_bounds.csv")
if bounds:
    x = [float(r["rho_db"]) for r in bounds]
    ax.plot(x, [float(r["zeta_upper"]) for r in bounds], "k--", label="upper bound")
    ax.plot(x, [float(r["zeta_lower"]) for r in bounds], "k:", label="lower bound")
ax.set_xlabel("SNR (dB)")
ax.set_ylabel("Throughput (bits/s/Hz)")
ax.grid(True)
ax.legend()
fig.savefig(os.path.join(root, "throughput.png"), dpi=150)

ser = curves([r for r in rows("ser.csv") if float(r["ser"]) > 0], "ser")
fig, ax = plt.subplots()
for scheme, pts in ser.items():
    if scheme != "all_relays":
        ax.semilogy(*zip(*pts), marker="o", label=scheme)
ax.set_xlabel("SNR (dB)")
ax.set_ylabel("SER")
ax.grid(True, which="both")
ax.legend()
fig.savefig(os.path.join(root, "ser.png"), dpi=150)
"#
}
