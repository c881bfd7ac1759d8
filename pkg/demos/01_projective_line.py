"""The projective line as an exact symplectic quotient.

C^2 reduced by the anti-diagonal circle ker(B), B = [1 -1], at level lift
(1, 0). The residual circle's moment image is a unit segment, both poles
are smooth, and the quotient is the round two-sphere of symplectic area
matching the segment length.
"""

from toricstacks import (
    inertia_table,
    labeled_polytope,
    normalized_volume,
    stack_summary,
)
from toricstacks.corpus import projective_line


def main():
    data = projective_line()
    print("input: N =", data.N, " B =", [list(r) for r in data.B],
          " level lift =", list(data.a_lift))

    summary = stack_summary(data)
    print("regular level:", summary.regular)
    print("real dimension:", summary.dimension)
    print("gerbe group:", summary.gerbe)
    print("effective residual action:", summary.effective)

    poly = labeled_polytope(data)
    print("moment segment vertices:", [tuple(v) for v in poly.v_rep])
    print("facet labels:", poly.facet_labels)
    print("normalized length:", normalized_volume(data))

    print("inertia by stratum:")
    for rec in inertia_table(data):
        where = "generic" if rec.is_generic else f"zeros {rec.face.zeros}"
        print(f"  {where}: {rec.group}")


if __name__ == "__main__":
    main()
