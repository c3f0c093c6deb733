#!/usr/bin/env python3
"""Solve an LP/MILP file with HiGHS and write a plain name/value solution.

Usage: adapter_highs.py <model.lp> <out.sol> <time_limit_s> <threads>

The output file holds one "<column name> <value>" line per column followed
by "=status= optimal|feasible|infeasible|limit" and "=obj= <value>".
"""
import sys

import highspy


def column_names(h, num_col):
    lp = h.getLp()
    names = list(getattr(lp, "col_names_", []))
    if len(names) == num_col:
        return names
    out = []
    for j in range(num_col):
        got = h.getColName(j)
        out.append(got[1] if isinstance(got, tuple) else got)
    return out


def main():
    model, out, time_limit, threads = (
        sys.argv[1],
        sys.argv[2],
        float(sys.argv[3]),
        int(sys.argv[4]),
    )
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", time_limit)
    h.setOptionValue("threads", threads)
    h.setOptionValue("random_seed", 0)
    if h.readModel(model) != highspy.HighsStatus.kOk:
        sys.stderr.write("cannot read %s\n" % model)
        sys.exit(2)
    h.run()

    status_text = h.modelStatusToString(h.getModelStatus())
    sol = h.getSolution()
    have_solution = bool(getattr(sol, "value_valid", False))
    lowered = status_text.lower()
    if "optimal" in lowered:
        status = "optimal"
    elif "infeasible" in lowered and "or" not in lowered:
        status = "infeasible"
    elif have_solution:
        status = "feasible"
    else:
        status = "limit"

    num_col = h.getNumCol()
    names = column_names(h, num_col)
    with open(out, "w") as f:
        if have_solution:
            for j in range(num_col):
                f.write("%s %.17g\n" % (names[j], sol.col_value[j]))
        f.write("=status= %s\n" % status)
        f.write("=obj= %.17g\n" % h.getObjectiveValue())


if __name__ == "__main__":
    main()
