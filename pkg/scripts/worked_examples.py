"""Run the worked examples: two pole analyses, the weight split, three zeta values."""

import json
import math

from shintani import (
    WeightInstance,
    decompose_flow,
    decompose_graph,
    enumerate_pole_families,
    mellin_cross_check_1d,
    validate_matrix,
    zeta_value,
)


def show_poles(name, entries):
    rep = enumerate_pole_families(validate_matrix(entries))
    print(f"{name} = {entries}")
    for f in rep.families:
        lr = "l >= 0" if f.l_range == "all" else f"l in {set(f.l_range)}"
        print(f"  {f.hyperplane(0)} - l,  {lr}")
    print("  converges for " + ", ".join(c.describe() for c in rep.convergence.support_constraints))


def main():
    show_poles("B", [[1, 1], [1, 1]])
    show_poles("A", [[1, 0, 0], [1, 1, 1], [0, 1, 0]])

    inst = WeightInstance.from_json({
        "n": 6, "sets": [[2, 3], [1, 4, 6], [1, 5], [6], [3, 4, 5]],
        "sigma": [1.9, 0.6, 0.6, 0.8, 0.2, 1.4],
    })
    for build in (decompose_graph, decompose_flow):
        dec = build(inst)
        print(f"{build.__name__}: valid={dec.is_valid(inst)}")
        for j, p in enumerate(dec.parts, 1):
            print(f"  sigma_{j} = {[round(x, 12) for x in p]}")

    for entries, s, exact, label in [
        ([[1]], (2,), math.pi ** 2 / 6, "zeta(2)"),
        ([[1, 0], [1, 1]], (1, 2), 1.2020569031595942, "zeta(3)"),
        ([[1, 1], [1, 1]], (2, 2), 1.2020569031595942 - math.pi ** 4 / 90, "zeta(3)-zeta(4)"),
    ]:
        res = zeta_value(entries, s)
        print(f"{label:16s} {res.value.real:.12f}  |err| {abs(res.value - exact):.1e}  "
              f"est {res.error_estimate:.1e}  converged={res.converged}")
    for s in (2.0, 3.0, 4.5):
        print(json.dumps(mellin_cross_check_1d(s)))


if __name__ == "__main__":
    main()
