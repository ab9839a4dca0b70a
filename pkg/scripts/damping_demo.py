"""Worked example: qubit amplitude damping, end to end.

Builds the master equation (H = w*sigma_z, damping rate g), converts it to the
real coherence-vector ODE v' = G v + c, solves it in closed form, checks
complete positivity, and round-trips the generator back to (H, a).

Usage:
    python3 scripts/damping_demo.py --omega 1.0 --gamma 0.5
"""

import argparse

import numpy as np

from lindblad_ode import (
    MasterEqParams,
    check_lindblad,
    coherence_vector,
    forward_map,
    generate_gell_mann,
    inverse_map,
    solve,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--omega", type=float, default=1.0)
    ap.add_argument("--gamma", type=float, default=0.5)
    args = ap.parse_args()

    w, g = args.omega, args.gamma
    basis = generate_gell_mann(2)
    h = w * np.diag([1.0, -1.0]).astype(complex)
    a = np.array([[g, -1j * g, 0.0], [1j * g, g, 0.0], [0.0, 0.0, 0.0]])
    params = MasterEqParams(hamiltonian=h, rates=a)

    pair = forward_map(params, basis)
    print("G =\n", np.round(pair.G, 6))
    print("c =", np.round(pair.c, 6))

    report = check_lindblad(pair, basis)
    print("completely positive:", report.is_lindblad, " rate eigenvalues:", np.round(report.eigenvalues, 6))

    rho0 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)  # excited state
    sol = solve(pair, coherence_vector(rho0, basis))
    for t in (0.0, 0.5, 1.0, 2.0, 5.0):
        v = sol.at(t)
        pop = 0.5 + v[2] / np.sqrt(2.0)  # ground-state population
        print(f"t={t:4.1f}  v={np.round(v, 4)}  p_ground={pop:.4f}")
    if sol.v_infinity is not None:
        print("fixed point v_inf =", np.round(sol.v_infinity, 6))

    back = inverse_map(pair, basis)
    print("round-trip max |dH| =", np.max(np.abs(back.hamiltonian - h)))
    print("round-trip max |da| =", np.max(np.abs(back.rates - a)))


if __name__ == "__main__":
    main()
