"""Command-line entry point.

    lorentzpol simulate SCENE -o OUT.csv [--degrees]
    lorentzpol canonicalize SCENE [--degrees]
    lorentzpol verify --seed N --trials M
    lorentzpol wigner --eta X --axis-angle Y [--degrees]

Exit codes: 0 ok, 2 bad input, 3 invariant breach, 4 domain error (pure
state), 5 verification failure.
"""
import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import List

import numpy as np

from .desitter import (
    chi_from_time,
    complementary_dets,
    decohere_step,
    lift_first,
    lift_second,
    o32_norm,
    tu_rotation,
)
from .jones import (
    attenuator,
    compose,
    det2,
    phase_shifter,
    random_sl2c,
    rotator,
    squeezer,
)
from .sphere import (
    BeamState,
    PureStateNotReducible,
    canonicalize,
    density_matrix,
    sphere_geometry,
    uncanonicalize,
)
from .stokes import (
    SQRT2,
    conjugate,
    minkowski_norm,
    mueller_from_sl2c,
    polar_decompose,
    stokes_from_coherency,
    three_squeezes,
)

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4, 5

CSV_HEADER = ["t", "S0", "S1", "S2", "S3", "det", "s", "r", "chi", "det_rho", "det_sigma"]
COMPLEMENTARITY_TOL = 1e-8

# parameter names (and whether each is an angle) per element kind
ELEMENT_PARAMS = {
    "rotator": {"theta": True},
    "phase_shifter": {"phi": True},
    "squeezer": {"eta": False},
    "attenuator": {"eta1": False, "eta2": False},
}


class SceneError(ValueError):
    pass


@dataclass(frozen=True)
class Scene:
    beam: BeamState  # time is ignored; the grid supplies it
    elements: list
    times: np.ndarray

    def pipeline(self):
        """Composed SL(2,C) element and the intensity factor from attenuators."""
        mats, factor = [np.eye(2, dtype=complex)], 1.0
        for kind, params in self.elements:
            if kind == "rotator":
                mats.append(rotator(params["theta"]))
            elif kind == "phase_shifter":
                mats.append(phase_shifter(params["phi"]))
            elif kind == "squeezer":
                mats.append(squeezer(params["eta"]))
            else:
                att = attenuator(params["eta1"], params["eta2"])
                mats.append(att.relative)
                factor *= att.overall_factor
        return compose(mats), factor


def _number(obj, key, where, nonneg=False):
    if key not in obj:
        raise SceneError(f"{where}.{key}: missing")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SceneError(f"{where}.{key}: expected a number, got {v!r}")
    v = float(v)
    if not np.isfinite(v):
        raise SceneError(f"{where}.{key}: must be finite")
    if nonneg and v < 0:
        raise SceneError(f"{where}.{key}: must be >= 0, got {v!r}")
    return v


def parse_scene(text, degrees=False):
    """Parse and validate a JSON scene.

    Raises
    ------
    SceneError
        With a line/column for syntax errors or a dotted field path otherwise.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise SceneError("scene: expected a JSON object")
    conv = np.deg2rad if degrees else float

    beam = data.get("beam")
    if not isinstance(beam, dict):
        raise SceneError("beam: missing or not an object")
    state = BeamState(
        amp_a=_number(beam, "A", "beam", nonneg=True),
        amp_b=_number(beam, "B", "beam", nonneg=True),
        phase=float(conv(_number(beam, "phi", "beam"))),
        lambda_rate=_number(beam, "lambda", "beam", nonneg=True),
    )

    elements = []
    raw = data.get("elements", [])
    if not isinstance(raw, list):
        raise SceneError("elements: expected a list")
    for i, el in enumerate(raw):
        where = f"elements[{i}]"
        if not isinstance(el, dict):
            raise SceneError(f"{where}: expected an object")
        kind = el.get("kind")
        if kind not in ELEMENT_PARAMS:
            raise SceneError(f"{where}.kind: expected one of {sorted(ELEMENT_PARAMS)}, got {kind!r}")
        params = {}
        for name, is_angle in ELEMENT_PARAMS[kind].items():
            v = _number(el, name, where)
            params[name] = float(conv(v)) if is_angle else v
        elements.append((kind, params))

    grid = data.get("time_grid")
    if not isinstance(grid, dict):
        raise SceneError("time_grid: missing or not an object")
    if "times" in grid:
        ts = grid["times"]
        if not isinstance(ts, list) or not ts:
            raise SceneError("time_grid.times: expected a non-empty list")
        times = np.array([_number({"t": t}, "t", f"time_grid.times[{i}]", nonneg=True)
                          for i, t in enumerate(ts)])
    else:
        start = _number(grid, "start", "time_grid", nonneg=True)
        end = _number(grid, "end", "time_grid", nonneg=True)
        steps = grid.get("steps")
        if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
            raise SceneError(f"time_grid.steps: expected a positive integer, got {steps!r}")
        if end < start:
            raise SceneError("time_grid.end: must be >= time_grid.start")
        times = np.linspace(start, end, steps + 1)
    return Scene(state, elements, times)


def load_scene(path, degrees=False):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise SceneError(f"{path}: {e.strerror}") from None
    return parse_scene(text, degrees)


def _fmt(x):
    return format(float(x), ".17g")


def trajectory(scene: Scene):
    """One row per grid time, in CSV column order."""
    g, factor = scene.pipeline()
    b = scene.beam
    ab2 = (b.amp_a * b.amp_b) ** 2
    rows = []
    for t in scene.times:
        state = b.at(float(t))
        c = factor ** 2 * conjugate(g, density_matrix(state))
        s = stokes_from_coherency(c)
        chi = chi_from_time(state.lambda_rate, state.time)
        det_rho, det_sigma = complementary_dets(b.amp_a, b.amp_b, b.phase, chi)
        if abs(det_rho + det_sigma - ab2) > COMPLEMENTARITY_TOL * max(1.0, ab2):
            raise ArithmeticError(
                f"complementarity violated at t={t!r}: "
                f"{det_rho!r} + {det_sigma!r} != {ab2!r}"
            )
        rows.append([
            t, *s, det2(c).real,
            s[0] / SQRT2, np.linalg.norm(s[1:]) / SQRT2,
            chi, det_rho, det_sigma,
        ])
    return rows


def cmd_simulate(args):
    scene = load_scene(args.scene, args.degrees)
    rows = trajectory(scene)
    with open(args.output, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    return EXIT_OK


def cmd_canonicalize(args):
    scene = load_scene(args.scene, args.degrees)
    state = scene.beam.at(float(scene.times[0]))
    try:
        form, transform = canonicalize(state)
    except PureStateNotReducible as e:
        print(f"error: pure state not reducible ({e})", file=sys.stderr)
        return EXIT_DOMAIN
    geom = sphere_geometry(state)
    vec = geom.four_vector()
    reduced = transform @ vec
    residual = max(
        float(np.max(np.abs(reduced[1:]))),
        float(np.max(np.abs(uncanonicalize(form.value, transform) - vec))),
    )
    print(f"t         {_fmt(state.time)}")
    print(f"s         {_fmt(geom.outer_s)}")
    print(f"r         {_fmt(geom.inner_r)}")
    print(f"eta       {_fmt(form.boost_eta)}")
    print(f"value     {_fmt(form.value)}")
    print(f"residual  {residual:.3e}")
    return EXIT_OK


def cmd_wigner(args):
    a = float(np.deg2rad(args.axis_angle)) if args.degrees else args.axis_angle
    if not (np.isfinite(args.eta) and np.isfinite(a)):
        print("error: --eta and --axis-angle must be finite", file=sys.stderr)
        return EXIT_INPUT
    g = three_squeezes(args.eta, a)
    pf = polar_decompose(g)
    u = pf.rotation_part
    print(f"wigner_angle        {pf.wigner_angle:.12g}")
    print(f"product_residual    {np.max(np.abs(pf.product() - g)):.3e}")
    print(f"unitarity_residual  {np.max(np.abs(u.conj().T @ u - np.eye(2))):.3e}")
    print(f"hermitian_residual  {np.max(np.abs(pf.boost_part - pf.boost_part.conj().T)):.3e}")
    return EXIT_OK


# ---------------------------------------------------------------- verify

VERIFY_TOL = {
    "homomorphism": 1e-9,
    "metric": 1e-9,
    "determinant_bridge": 1e-10,
    "complementarity": 1e-12,
    "dual_path": 1e-9,
}


def _suite_homomorphism(rng, trials):
    g1 = random_sl2c(rng, 0.5, trials)
    g2 = random_sl2c(rng, 0.5, trials)
    worst, arg = 0.0, None
    for a, b in zip(g1, g2):
        d = np.max(np.abs(mueller_from_sl2c(a @ b) - mueller_from_sl2c(a) @ mueller_from_sl2c(b)))
        if d > worst:
            worst, arg = d, (a, b)
    return worst, arg


def _suite_metric(rng, trials):
    # Lorentz (4x4) and O(3,2) (5x5) length preservation
    worst, arg = 0.0, None
    for _ in range(trials):
        m = mueller_from_sl2c(random_sl2c(rng, 0.5))
        s = rng.standard_normal(4)
        d4 = abs(minkowski_norm(m @ s) - minkowski_norm(s))
        chi = rng.uniform(0, np.pi / 2)
        five = rng.standard_normal(5)
        big = lift_second(m) @ tu_rotation(chi) @ lift_first(m)
        d5 = abs(o32_norm(big @ five) - o32_norm(five))
        scale = max(1.0, float(np.dot(s, s)), float(np.dot(five, five)))
        d = max(d4, d5) / scale
        if d > worst:
            worst, arg = d, (s, five, chi)
    return worst, arg


def _random_hermitian(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    return (z + z.conj().T) / 2


def _suite_bridge(rng, trials):
    worst, arg = 0.0, None
    for _ in range(trials):
        c = _random_hermitian(rng)
        d = abs(minkowski_norm(stokes_from_coherency(c)) - 2 * det2(c).real)
        if d > worst:
            worst, arg = d, c
    return worst, arg


def _suite_complementarity(rng, trials):
    worst, arg = 0.0, None
    for _ in range(trials):
        a, b = rng.uniform(0, 2, 2)
        phi, chi = rng.uniform(-np.pi, np.pi), rng.uniform(0, np.pi / 2)
        dr, ds = complementary_dets(a, b, phi, chi)
        d = abs(dr + ds - (a * b) ** 2)
        if d > worst:
            worst, arg = d, (a, b, phi, chi)
    return worst, arg


def _random_mixed_state(rng):
    return BeamState(
        amp_a=rng.uniform(0.2, 2.0),
        amp_b=rng.uniform(0.2, 2.0),
        phase=rng.uniform(-np.pi, np.pi),
        lambda_rate=rng.uniform(0.1, 2.0),
        time=rng.uniform(0.1, 2.0),
    )


def _suite_dual_path(rng, trials):
    worst, arg = 0.0, None
    for _ in range(trials):
        st = _random_mixed_state(rng)
        dt = rng.uniform(0.0, 2.0)
        _, direct, _ = decohere_step(st, dt)
        _, via, _ = decohere_step(st, dt, path="o32")
        d = float(np.max(np.abs(direct - via)))
        if d > worst:
            worst, arg = d, (st, dt)
    return worst, arg


SUITES = {
    "homomorphism": _suite_homomorphism,
    "metric": _suite_metric,
    "determinant_bridge": _suite_bridge,
    "complementarity": _suite_complementarity,
    "dual_path": _suite_dual_path,
}


def run_verify(seed, trials, inject_fault=None):
    """Run every suite; returns ``{name: (max_deviation, worst_input)}``."""
    results = {}
    for i, (name, suite) in enumerate(SUITES.items()):
        rng = np.random.default_rng([seed, i])
        worst, arg = suite(rng, trials)
        if name == inject_fault:
            worst += 1.0
        results[name] = (worst, arg)
    return results


def cmd_verify(args):
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    results = run_verify(args.seed, args.trials, args.inject_fault)
    failed = []
    for name, (worst, arg) in results.items():
        ok = worst <= VERIFY_TOL[name]
        print(f"{name:<20s} max_dev={worst:.3e} tol={VERIFY_TOL[name]:.0e} {'ok' if ok else 'FAIL'}")
        if not ok:
            failed.append((name, arg))
    if failed:
        for name, arg in failed:
            print(f"FAILED {name}: worst input {arg!r}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="lorentzpol", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="write a decoherence trajectory as CSV")
    sp.add_argument("scene")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--degrees", action="store_true", help="angles in the scene are degrees")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("canonicalize", help="reduce the scene state to its one-number form")
    sp.add_argument("scene")
    sp.add_argument("--degrees", action="store_true")
    sp.set_defaults(func=cmd_canonicalize)

    sp = sub.add_parser("verify", help="run the seeded invariant suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    # self-test hook: corrupt one suite's result to exercise the failure path
    sp.add_argument("--inject-fault", choices=sorted(SUITES), help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("wigner", help="rotation left over from three squeezes")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--axis-angle", type=float, required=True)
    sp.add_argument("--degrees", action="store_true")
    sp.set_defaults(func=cmd_wigner)
    return p


def main(argv: List[str] = None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SceneError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
