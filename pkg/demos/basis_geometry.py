"""Walk through the measurement-family geometry that makes decoding work.

For a node of degree delta we build delta/2 two-outcome bases rotated by
phi = pi/delta. Each encoded state is certain in its home basis, and its
probability of mimicking a foreign basis run is capped by
cos^2(pi/(2 delta)) < 1, which is what drives the repetition counts.
"""

import math

import numpy as np

from qpebble import (
    basis_family,
    bloch_angles,
    born_probability,
    cross_overlap_closed_form,
    delta_bound,
    encode_port,
    EncodingScheme,
)


def show_family(delta: int) -> None:
    fam = basis_family(EncodingScheme.GENERAL, delta)
    print(f"degree delta={delta}: {len(fam)} bases, rotation step "
          f"pi/{delta} = {math.pi / delta:.6f} rad")
    for basis in fam:
        tp, pp = bloch_angles(basis.plus_vec)
        tm, pm = bloch_angles(basis.minus_vec)
        print(f"  basis {basis.index}: plus at (theta={tp:.4f}, phi={pp:.4f}) "
              f"minus at (theta={tm:.4f}, phi={pm:.4f})")


def overlap_matrix(delta: int) -> np.ndarray:
    """P(plus outcome in basis k | state = plus vector of basis j)."""
    fam = basis_family(EncodingScheme.GENERAL, delta)
    m = np.empty((len(fam), len(fam)))
    for j, src in enumerate(fam):
        for k, dst in enumerate(fam):
            m[j, k] = born_probability(src.plus_vec, dst.plus_vec)
    return m


def main() -> None:
    print("== measurement families ==")
    for delta in (2, 4, 6):
        show_family(delta)
        print()

    delta = 6
    print(f"== cross-basis overlap matrix, delta={delta} ==")
    m = overlap_matrix(delta)
    print("rows: emitted plus state of basis j, cols: measured basis k")
    for row in m:
        print("  " + "  ".join(f"{p:.4f}" for p in row))
    closed = np.array([
        [cross_overlap_closed_form(j, k, +1, +1, delta)
         for k in range(delta // 2)]
        for j in range(delta // 2)
    ])
    print(f"max |matrix - closed form| = {np.abs(m - closed).max():.3e}")
    print()

    print("== worst-case mimic probability ==")
    for delta in (2, 4, 8, 16, 64):
        fam = basis_family(EncodingScheme.GENERAL, delta)
        worst = 0.0
        for j in range(1, delta + 1):
            state = encode_port(j, delta)
            for basis in fam:
                for vec in (basis.plus_vec, basis.minus_vec):
                    p = born_probability(state, vec)
                    if p < 1.0 - 1e-9:
                        worst = max(worst, p)
        bound = delta_bound(delta)
        note = "  (single basis, nothing to mimic)" if delta == 2 else ""
        print(f"  delta={delta:3d}: measured worst {worst:.6f}, "
              f"bound cos^2(pi/(2 delta)) = {bound:.6f}{note}")
    print()
    print("The bound approaches 1 as delta grows, so each extra unit of")
    print("degree costs more repetitions to keep the run distinguishable.")


if __name__ == "__main__":
    main()
