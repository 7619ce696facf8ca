#!/usr/bin/env python3
"""Regenerates classification_golden.csv from the theorem statements.

Written independently of the Rust implementation; run from this directory.
"""
import csv


def transverse(chi, e):
    return e <= -chi if chi <= 0 else e < 0


def spectrum(chi, e):
    if chi > 0 or not transverse(chi, e):
        return None
    if chi == 0 and e == 0:
        return "all"
    ns = {1} | {n for n in range(1, 1000) if n * e == -chi}
    return sorted(ns)


def tau(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def vot_bound(chi, e):
    base = max(0, -chi - e - 1)
    return base + 1 if e > 0 else base


def sphere_enrollment(chi, e):
    if chi != 2 or e >= 0:
        return ""
    return "-2" if e == -1 else "-1"


rows = []
for chi in (-4, -2, 0, 2):
    for e in range(-6, 7):
        s = spectrum(chi, e)
        if s is None:
            cell, classes = "", ""
        elif s == "all":
            cell, classes = "all", "1"
        else:
            cell, classes = ";".join(map(str, s)), str(tau(max(s)))
        rows.append([chi, e, str(transverse(chi, e)).lower(), cell, classes,
                     vot_bound(chi, e), sphere_enrollment(chi, e)])

with open("classification_golden.csv", "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["chi_s", "euler", "transverse_exists", "enrollment_spectrum",
                "conjugacy_classes", "vot_bound", "sphere_enrollment"])
    w.writerows(rows)
