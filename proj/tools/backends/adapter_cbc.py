#!/usr/bin/env python3
"""Solve an LP/MILP file with the CBC command-line solver.

Usage: adapter_cbc.py <model.lp> <out.sol> <time_limit_s> <threads>

CBC's own solution file mixes row and column records, so the adapter reads
the model's variable names from the LP file and emits only those, in the
"<name> <value>" / "=status=" / "=obj=" grammar the caller expects.
"""
import os
import subprocess
import sys

def find_cbc():
    env = os.environ.get("DARP_CBC_BIN")
    if env:
        return env
    try:
        from pulp.apis import coin_api

        path = coin_api.pulp_cbc_path
        if os.path.exists(path):
            return path
    except Exception:
        pass
    return "cbc"


def lp_variable_names(path):
    names = set()
    section = None
    with open(path) as f:
        for raw in f:
            tokens = raw.split()
            if not tokens:
                continue
            head = tokens[0].lower()
            if head in ("minimize", "min", "maximize", "max", "subject", "st", "s.t."):
                section = "rows"
                continue
            if head == "bounds":
                section = "bounds"
                continue
            if head in ("generals", "general", "integers", "binaries", "binary"):
                section = "ints"
                continue
            if head == "end":
                break
            if section == "bounds":
                if len(tokens) == 5:  # lb <= name <= ub
                    names.add(tokens[2])
                else:  # name free | name = v | name >= v | name <= v
                    names.add(tokens[0])
            elif section == "ints":
                names.update(tokens)
    return names


def main():
    model, out, time_limit = sys.argv[1], sys.argv[2], float(sys.argv[3])
    raw = out + ".cbc"
    cbc = find_cbc()
    cmd = [
        cbc,
        model,
        "-seconds",
        str(time_limit),
        "branch",
        "printingOptions",
        "all",
        "solution",
        raw,
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if not os.path.exists(raw):
        sys.stderr.write(proc.stdout + proc.stderr)
        sys.exit(2)

    names = lp_variable_names(model)
    status, objective, values = "limit", 0.0, {}
    with open(raw) as f:
        first = f.readline()
        low = first.lower()
        if "objective value" in low:
            try:
                objective = float(first.split("objective value")[1].split()[0])
            except (IndexError, ValueError):
                pass
        if "infeasible" in low:
            status = "infeasible"
        elif "optimal" in low:
            status = "optimal"
        for line in f:
            tokens = line.split()
            for k, tok in enumerate(tokens):
                if tok in names and k + 1 < len(tokens):
                    try:
                        values[tok] = float(tokens[k + 1])
                    except ValueError:
                        pass
                    break
    if status == "limit" and values:
        status = "feasible"
    with open(out, "w") as f:
        for name, value in values.items():
            f.write("%s %.17g\n" % (name, value))
        f.write("=status= %s\n" % status)
        f.write("=obj= %.17g\n" % objective)


if __name__ == "__main__":
    main()
