#!/usr/bin/env python3
"""Minimal external representation speaking the probe line protocol.

Reads "eval <f.csv> <g.csv> <out.csv>" requests on stdin, computes the plain
tensor product f(x1) g(x2), writes the 2-variable field CSV, replies "ok".
"""
import sys


def read_field(path):
    with open(path) as fh:
        header = fh.readline().split()
        nvars = int(header[2].split("=")[1])
        n = int(header[3].split("=")[1])
        vals = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            _, re, im = line.split(",")
            vals.append(complex(float(re), float(im)))
        return nvars, n, vals


def write_field(path, nvars, n, vals):
    with open(path, "w") as fh:
        fh.write(f"# field vars={nvars} N={n}\n")
        for i, v in enumerate(vals):
            fh.write(f"{i},{v.real:.17g},{v.imag:.17g}\n")


def main():
    for line in sys.stdin:
        parts = line.split()
        if not parts:
            continue
        if parts[0] != "eval" or len(parts) != 4:
            print("err unknown request", flush=True)
            continue
        try:
            _, f_path, g_path, out_path = parts
            _, n, f_vals = read_field(f_path)
            _, _, g_vals = read_field(g_path)
            out = [a * b for a in f_vals for b in g_vals]
            write_field(out_path, 2, n, out)
            print("ok", flush=True)
        except Exception as exc:  # report, do not die
            print(f"err {exc}", flush=True)


if __name__ == "__main__":
    main()
