"""Command-line front end.

Subcommands
-----------
eigenvalues   chi table for all modes 2k + n <= N        -> CSV alpha,c,n,k,chi
coeffs        Jacobi coefficient vector of one mode      -> CSV j,beta_j
field         sampled mode on a grid                     -> CSV x,y,z,vx,vy,vz
                                                            (x,y,z,value with --scalar)
verify        run verification checks                    -> JSON report

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
All floats are printed with 17 significant digits (round-trip safe); CSV
files start with a ``# schema_version`` comment line and progress written to
stdout is '#'-prefixed so piped CSV stays parseable.  No environment
variables are consulted for numeric parameters.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import bouwkamp, verification
from .errors import ConfigurationError, DomainError, ParameterError, SamplingError
from .pswf import (
    ModeIndex,
    ScalarPswf,
    VectorPswf,
    apply_D_fd,
    apply_L_radial,
    divergence_fd,
    radial_profile,
    scalar_eval,
    vector_eval,
)
from .quadrature import ball_rule

SCHEMA_VERSION = 1
_AXIS_RHO = 1e-12


def _fmt(x):
    return f"{x:.17g}"


def _open_out(path):
    if path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _progress(message):
    print(f"# {message}")


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------


def parse_grid(spec, extent):
    """Grid points from a ``kind:AxB[xC][:offset]`` descriptor.

    Points are generated in lexicographic grid order and restricted to the
    closed unit ball; the number of discarded exterior points is returned
    alongside.
    """
    parts = spec.split(":")
    kind = parts[0]
    if len(parts) < 2:
        raise ParameterError(f"grid spec needs a resolution, got {spec!r}")
    try:
        res = tuple(int(t) for t in parts[1].split("x"))
        offset = float(parts[2]) if len(parts) > 2 else None
    except ValueError as exc:
        raise ParameterError(f"malformed grid spec {spec!r}") from exc
    if any(r < 1 for r in res):
        raise ParameterError("grid resolutions must be positive")
    lo, hi = extent
    if not (-1.0 <= lo < hi <= 1.0):
        raise ParameterError("extent must satisfy -1 <= lo < hi <= 1")

    def axis(count):
        return np.linspace(lo, hi, count)

    if kind in ("slice-z", "slice-y"):
        if len(res) != 2:
            raise ParameterError(f"{kind} needs an AxB resolution")
        level = 0.0 if offset is None else offset
        if abs(level) >= 1.0:
            raise ParameterError("slice offset must lie inside (-1, 1)")
        u, v = np.meshgrid(axis(res[0]), axis(res[1]), indexing="ij")
        flat_u, flat_v = u.ravel(), v.ravel()
        zcol = np.full_like(flat_u, level)
        if kind == "slice-z":
            pts = np.stack([flat_u, flat_v, zcol], axis=-1)
        else:
            pts = np.stack([flat_u, zcol, flat_v], axis=-1)
    elif kind == "ball3d":
        if len(res) != 3:
            raise ParameterError("ball3d needs an AxBxC resolution")
        g = np.meshgrid(axis(res[0]), axis(res[1]), axis(res[2]), indexing="ij")
        pts = np.stack([a.ravel() for a in g], axis=-1)
    elif kind == "sphere-shell":
        if len(res) != 2:
            raise ParameterError("sphere-shell needs an AxB resolution")
        radius = 0.9 if offset is None else offset
        if not (0.0 < radius < 1.0):
            raise ParameterError("shell radius must lie inside (0, 1)")
        theta = math.pi * (np.arange(res[0]) + 0.5) / res[0]
        phi = 2.0 * math.pi * np.arange(res[1]) / res[1]
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        st = np.sin(tt).ravel()
        pts = radius * np.stack(
            [st * np.cos(pp.ravel()), st * np.sin(pp.ravel()), np.cos(tt).ravel()],
            axis=-1,
        )
    else:
        raise ParameterError(f"unknown grid kind {kind!r}")
    inside = np.linalg.norm(pts, axis=1) <= 1.0
    return pts[inside], int((~inside).sum())


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_eigenvalues(args):
    table = bouwkamp.solve_modes(args.N, args.alpha, args.c)
    out, close = _open_out(args.out)
    try:
        out.write(f"# schema_version={SCHEMA_VERSION}\n")
        out.write("alpha,c,n,k,chi\n")
        for n, k in table.modes():
            chi = table[(n, k)].chi
            out.write(f"{_fmt(args.alpha)},{_fmt(args.c)},{n},{k},{_fmt(chi)}\n")
    finally:
        if close:
            out.close()
    if close:
        _progress(f"wrote {len(table.entries)} eigenvalues to {args.out}")
    return 0


def cmd_coeffs(args):
    exp = bouwkamp.radial_expansion(args.alpha, args.c, args.n, args.k,
                                    scalar=(args.n == 0))
    out, close = _open_out(args.out)
    try:
        out.write(f"# schema_version={SCHEMA_VERSION}\n")
        out.write("j,beta_j\n")
        rows = 0
        for j, b in enumerate(exp.beta):
            if b == 0.0:
                continue  # exact zeros (c = 0 basis vectors) carry no information
            out.write(f"{j},{_fmt(b)}\n")
            rows += 1
    finally:
        if close:
            out.close()
    if close:
        _progress(f"wrote {rows} coefficients to {args.out}")
    return 0


def cmd_field(args):
    mode = ModeIndex(args.alpha, args.c, args.n, args.k, args.ell)
    points, dropped_outside = parse_grid(args.grid, args.extent)
    if dropped_outside:
        print(f"dropped {dropped_outside} points outside the unit ball",
              file=sys.stderr)
    out, close = _open_out(args.out)
    try:
        out.write(f"# schema_version={SCHEMA_VERSION}\n")
        if args.scalar:
            s = ScalarPswf.solve(mode)
            out.write("x,y,z,value\n")
            values = scalar_eval(s, points)
            for p, val in zip(points, values):
                out.write(",".join(_fmt(t) for t in (*p, val)) + "\n")
            count = len(points)
        else:
            v = VectorPswf.solve(mode)
            rho = np.hypot(points[:, 0], points[:, 1])
            on_axis = rho <= _AXIS_RHO
            if on_axis.any():
                print(f"dropped {int(on_axis.sum())} axis points from vector grid",
                      file=sys.stderr)
            points = points[~on_axis]
            out.write("x,y,z,vx,vy,vz\n")
            values = vector_eval(v, points)
            for p, val in zip(points, values):
                out.write(",".join(_fmt(t) for t in (*p, *val)) + "\n")
            count = len(points)
    finally:
        if close:
            out.close()
    if close:
        _progress(f"wrote {count} rows to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

CHECK_NAMES = (
    "identities",
    "c0-law",
    "residual",
    "ordering",
    "sl-radial",
    "gram-scalar",
    "gram-vector",
    "divfree",
    "d-shift",
    "lambda",
    "mu",
)

_QUAD_CHECKS = {"gram-scalar", "gram-vector", "lambda", "mu"}


def _vector_modes(table, alpha, c, nmax_ell=None):
    modes = []
    for n, k in table.modes():
        if n < 1:
            continue
        ell_hi = 2 * n + 1 if nmax_ell is None else min(2 * n + 1, nmax_ell)
        for ell in range(1, ell_hi + 1):
            modes.append(VectorPswf(ScalarPswf(ModeIndex(alpha, c, n, k, ell),
                                               table[(n, k)])))
    return modes


def run_checks(alpha, c, N, checks, counts, seed):
    """Run the requested verification checks; returns (all_passed, results)."""
    results = []

    def add(name, passed, residual, tolerance, **details):
        results.append({
            "name": name,
            "passed": bool(passed),
            "residual": residual,
            "tolerance": tolerance,
            "details": details,
        })

    if _QUAD_CHECKS & set(checks):
        ok, change, _ = verification.convergence_gate(alpha, c, counts)
        add("quadrature-gate", ok, change, 1e-10, counts=list(counts))
        if not ok:
            return False, results

    table = bouwkamp.solve_modes(N, alpha, c, include_scalar=True)

    if "identities" in checks:
        defects = verification.identity_suite(seed=seed, trials=20)
        worst = max(defects.values())
        add("identities", worst <= 1e-12, worst, 1e-12, defects=defects)

    if "c0-law" in checks:
        zero = bouwkamp.solve_modes(N, alpha, 0.0, include_scalar=True)
        worst = 0.0
        for (n, k), exp in zero.entries.items():
            expect = bouwkamp.gamma_eigenvalue(n + 2 * k, alpha)
            worst = max(worst, abs(exp.chi - expect) / expect if expect else abs(exp.chi))
        add("c0-law", worst <= 1e-12, worst, 1e-12)

    if "residual" in checks:
        worst = 0.0
        for n in range(0, N + 1):
            K = bouwkamp.truncation_order(N, alpha, n)
            T = bouwkamp.build_matrix(n, alpha, c, K, scalar=(n == 0))
            scale = T.norm()
            for chi, vec in bouwkamp.eigen_tridiagonal(T):
                worst = max(worst, bouwkamp.residual(T, chi, vec) / scale)
        add("residual", worst <= 1e-11, worst, 1e-11)

    if "ordering" in checks:
        ok = True
        for n in set(n for n, _ in table.modes()):
            chis = [table[(m, k)].chi for m, k in table.modes() if m == n]
            ok = ok and all(a < b for a, b in zip(chis, chis[1:]))
        add("ordering", ok, 0.0 if ok else 1.0, 0.0)

    if "sl-radial" in checks:
        radii = np.cos((2 * np.arange(32) + 1) * math.pi / 128.0) * 0.45 + 0.5
        worst = 0.0
        for n, k in table.modes():
            s = ScalarPswf(ModeIndex(alpha, c, n, k, 1), table[(n, k)])
            lhs = apply_L_radial(s, radii)
            rhs = s.chi * radial_profile(s, radii)
            worst = max(worst, np.abs(lhs - rhs).max() / np.abs(rhs).max())
        add("sl-radial", worst <= 1e-9, worst, 1e-9)

    rule = None
    if _QUAD_CHECKS & set(checks):
        rule = ball_rule(alpha, *counts)

    if "gram-scalar" in checks:
        modes = [ScalarPswf(ModeIndex(alpha, c, n, k, 1), table[(n, k)])
                 for n, k in table.modes()]
        G = verification.gram_scalar(modes, rule)
        worst = float(np.abs(G - np.eye(len(modes))).max())
        add("gram-scalar", worst <= 1e-8, worst, 1e-8, modes=len(modes))

    if "gram-vector" in checks:
        vmodes = _vector_modes(table, alpha, c)
        G = verification.gram_vector(vmodes, rule)
        expect = np.zeros_like(G)
        for i, v in enumerate(vmodes):
            expect[i, i] = v.mode.n * (v.mode.n + 1)
        worst = float(np.abs(G - expect).max())
        add("gram-vector", worst <= 1e-8, worst, 1e-8, modes=len(vmodes),
            diagonal=[float(expect[i, i]) for i in range(len(vmodes))])

    if "divfree" in checks:
        worst = 0.0
        h = 1e-4
        for v in _vector_modes(table, alpha, c, nmax_ell=2):
            pts = verification.sample_points(v, count=25, seed=seed)
            for x in pts:
                worst = max(worst, abs(divergence_fd(v, x, h)))
        add("divfree", worst <= 1e-6, worst, 1e-6, step=h)

    if "d-shift" in checks:
        h = 1e-3
        worst = 0.0
        for v in _vector_modes(table, alpha, c, nmax_ell=1)[:4]:
            pts = verification.sample_points(v, count=3, seed=seed)
            expect = v.chi + 2.0 * alpha + 2.0
            for x in pts:
                lhs = apply_D_fd(v, x, h)
                ref = vector_eval(v, x)
                worst = max(worst, np.abs(lhs - expect * ref).max()
                            / (abs(expect) * np.abs(ref).max()))
        add("d-shift", worst <= 5e-4, worst, 5e-4, step=h)

    lam_by_mode = {}
    if "lambda" in checks:
        worst_disp = 0.0
        worst_phase = 0.0
        ordered = True
        for v in _vector_modes(table, alpha, c, nmax_ell=1):
            rep = verification.estimate_lambda(v, rule, seed=seed)
            lam_by_mode[(v.mode.n, v.mode.k)] = rep.lam
            worst_disp = max(worst_disp, rep.dispersion)
            worst_phase = max(worst_phase, rep.residuals["phase_defect_rad"])
        for n in set(n for n, _ in lam_by_mode):
            lams = [lam_by_mode[(m, k)] for m, k in sorted(lam_by_mode) if m == n]
            ordered = ordered and all(a > b > 0.0 for a, b in zip(lams, lams[1:]))
        passed = worst_disp <= 1e-5 and worst_phase <= 1e-6 and ordered
        add("lambda", passed, worst_disp, 1e-5, phase_defect=worst_phase,
            phase_tolerance=1e-6, ordered=ordered,
            values={f"{n},{k}": lam for (n, k), lam in lam_by_mode.items()})

    if "mu" in checks:
        mu_counts = tuple(min(m, ref) for m, ref in zip(counts, (16, 16, 32)))
        mu_rule = ball_rule(alpha, *mu_counts)
        worst = 0.0
        for v in _vector_modes(table, alpha, c, nmax_ell=1)[:2]:
            rep = verification.estimate_lambda(v, rule, seed=seed)
            mu, _ = verification.mu_via_double_transform(v, mu_rule, seed=seed)
            worst = max(worst, abs(mu - rep.lam**2) / rep.lam**2)
        add("mu", worst <= 1e-5, worst, 1e-5, counts=list(mu_counts))

    return all(r["passed"] for r in results), results


def cmd_verify(args):
    checks = CHECK_NAMES if args.checks == "all" else tuple(args.checks.split(","))
    unknown = set(checks) - set(CHECK_NAMES)
    if unknown:
        raise ParameterError(f"unknown checks: {sorted(unknown)}")
    if args.c == 0.0:
        checks = tuple(ch for ch in checks if ch not in ("lambda", "mu"))
    counts = (args.quad_mr, args.quad_mt, args.quad_mp)
    passed, results = run_checks(args.alpha, args.c, args.N, checks, counts,
                                 args.seed)
    report = {
        "schema_version": SCHEMA_VERSION,
        "params": {"alpha": args.alpha, "c": args.c, "N": args.N,
                   "seed": args.seed},
        "quadrature": {"m_r": counts[0], "m_theta": counts[1], "m_phi": counts[2]},
        "checks": results,
        "passed": bool(passed),
    }
    out, close = _open_out(args.out)
    try:
        json.dump(report, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    if close:
        _progress(f"wrote report to {args.out}")
    for r in results:
        _progress(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']} "
                  f"residual={r['residual']:.3e} tol={r['tolerance']:.0e}")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _extent(text):
    lo, hi = (float(t) for t in text.split(","))
    return lo, hi


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ballprolate",
        description="Divergence-free vectorial ball prolate functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_k=False, ell=False, big_n=False):
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--c", type=float, required=True)
        if n_k:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
        if ell:
            p.add_argument("--ell", type=int, required=True)
        if big_n:
            p.add_argument("--N", type=int, required=True)
        p.add_argument("--out", required=True, help="output path or - for stdout")

    p_eig = sub.add_parser("eigenvalues", help="chi table for 2k+n <= N")
    common(p_eig, big_n=True)
    p_eig.set_defaults(func=cmd_eigenvalues)

    p_coef = sub.add_parser("coeffs", help="Jacobi coefficients of one mode")
    common(p_coef, n_k=True)
    p_coef.set_defaults(func=cmd_coeffs)

    p_field = sub.add_parser("field", help="sample a mode on a grid")
    common(p_field, n_k=True, ell=True)
    p_field.add_argument("--grid", required=True,
                         help="kind:AxB[xC][:offset], kinds: slice-z slice-y "
                              "ball3d sphere-shell")
    p_field.add_argument("--extent", type=_extent, default=(-1.0, 1.0),
                         help="lo,hi bounds for lattice axes (default -1,1)")
    p_field.add_argument("--scalar", action="store_true",
                         help="write the scalar mode (x,y,z,value)")
    p_field.set_defaults(func=cmd_field)

    p_ver = sub.add_parser("verify", help="run verification checks")
    common(p_ver, big_n=True)
    p_ver.add_argument("--checks", default="all",
                       help="comma-separated subset of: " + ",".join(CHECK_NAMES))
    p_ver.add_argument("--quad-mr", type=int, default=48)
    p_ver.add_argument("--quad-mt", type=int, default=48)
    p_ver.add_argument("--quad-mp", type=int, default=96)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ConfigurationError, DomainError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
