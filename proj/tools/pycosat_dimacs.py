#!/usr/bin/env python3
"""Solve a DIMACS CNF file with pycosat and print a competition-style answer."""

import sys

import pycosat


def read_dimacs(path):
    clauses, current = [], []
    with open(path) as f:
        for line in f:
            if line.startswith(("c", "p", "%")):
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    clauses.append(current)
                    current = []
                else:
                    current.append(lit)
    if current:
        clauses.append(current)
    return clauses


def main():
    if len(sys.argv) != 2:
        sys.stderr.write("usage: pycosat_dimacs.py FILE.cnf\n")
        return 2
    result = pycosat.solve(read_dimacs(sys.argv[1]))
    if result == "UNSAT":
        print("s UNSATISFIABLE")
        return 20
    if result == "UNKNOWN":
        print("s UNKNOWN")
        return 0
    print("s SATISFIABLE")
    print("v " + " ".join(map(str, result)) + " 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
