#!/usr/bin/env python3
"""Equivalence sweep: NAE brute force vs compiled coloring search.

Runs the full desk-scale corpus (every instance with n <= 2 and m <= 2,
duplicate literals included, plus a seeded random sample up to n = m = 4)
and reports agreement counts, worst-case solver nodes, and timing.  Any
DISAGREE or budget exhaustion is a bug and makes the exit status nonzero.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time
from multiprocessing import Pool
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from d2color.reduction import Literal, NaeInstance, roundtrip_report


def all_clauses(n: int) -> list[tuple[Literal, Literal, Literal]]:
    lits = [Literal(v, pos) for v in range(1, n + 1) for pos in (True, False)]
    return list(itertools.product(lits, repeat=3))


def exhaustive_instances(n_max: int, m_max: int):
    for n in range(1, n_max + 1):
        clauses = all_clauses(n)
        for m in range(m_max + 1):
            for combo in itertools.product(clauses, repeat=m):
                yield NaeInstance(num_vars=n, clauses=list(combo))


def random_instances(count: int, n_max: int, m_max: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, n_max)
        m = rng.randint(0, m_max)
        clauses = [tuple(Literal(rng.randint(1, n), rng.random() < 0.5)
                         for _ in range(3)) for _ in range(m)]
        yield NaeInstance(num_vars=n, clauses=clauses)


def _run_one(inst: NaeInstance) -> tuple[bool, str, int]:
    rep = roundtrip_report(inst, node_budget=5_000_000)
    ok = (rep.solve_status in ("sat", "unsat") and bool(rep.agree)
          and rep.extraction_ok in (True, None)
          and rep.identity_ok in (True, None))
    return ok, rep.solve_status, rep.nodes


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=20260819)
    ap.add_argument("--random-count", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=2,
                    help="exhaustive corpus variable bound")
    ap.add_argument("--m-max", type=int, default=2,
                    help="exhaustive corpus clause bound")
    args = ap.parse_args()

    instances = list(exhaustive_instances(args.n_max, args.m_max))
    instances += list(random_instances(args.random_count, 4, 4, args.seed))
    print(f"corpus: {len(instances)} instances")

    t0 = time.time()
    if args.jobs > 1:
        with Pool(processes=args.jobs) as pool:
            results = pool.map(_run_one, instances, chunksize=16)
    else:
        results = [_run_one(inst) for inst in instances]
    took = time.time() - t0

    agreed = sum(1 for ok, _, _ in results if ok)
    sat = sum(1 for _, st, _ in results if st == "sat")
    unsat = sum(1 for _, st, _ in results if st == "unsat")
    worst = max(n for _, _, n in results)
    print(f"agree {agreed}/{len(results)}  sat {sat}  unsat {unsat}")
    print(f"worst solver nodes {worst}")
    print(f"elapsed {took:.1f}s")
    if agreed != len(results):
        for inst, (ok, st, n) in zip(instances, results):
            if not ok:
                print(f"MISMATCH ({st}, nodes={n}): n={inst.num_vars} "
                      f"clauses={inst.clauses}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
