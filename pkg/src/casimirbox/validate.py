"""Independent desk-scale oracles and the golden-check runner.

Everything here deliberately avoids the code paths of the main modules:
Bessel functions come from adaptive quadrature of the integral
representation, the lattice functions from direct brute-force summation
with fixed cutoffs (in 30-digit arithmetic for the Bessel-kernel sums,
compensated double precision for the plain log-sums), and thermodynamic
relations from Richardson-extrapolated finite differences.

Pinned oracle outputs live in data/fixtures.txt, one per line:

    name key=value ... value=<17 significant digits> tol=<relative>

The checks compare the production implementation against those pins and a
handful of closed-form golden values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import mpmath
import numpy as np
from scipy.integrate import quad

from . import boxzero, plates, thermal
from .boxzero import BoxGeometry, FieldKind
from .specfun import HBAR_C, K_BOLTZMANN, PI, ZETA3, bessel_k
from .thermal import ThermalPoint

__all__ = [
    "oracle_bessel_k",
    "oracle_lattice",
    "oracle_e0",
    "oracle_thermo_consistency",
    "ThermoReport",
    "CheckResult",
    "load_fixtures",
    "regenerate_fixtures",
    "run_checks",
]

_ORACLE_X_RANGE = (0.01, 50.0)


def oracle_bessel_k(order: float, x: float) -> float:
    """K_order(x) from the integral representation
    int_0^inf exp(-x cosh u) cosh(order u) du, by adaptive quadrature.

    Valid for x in [0.01, 50]; independent of specfun's evaluation.
    """
    if order not in (0.5, 1.0, 1.5):
        raise ValueError(f"unsupported order {order!r}")
    if not (_ORACLE_X_RANGE[0] <= x <= _ORACLE_X_RANGE[1]):
        raise ValueError(f"oracle_bessel_k: x={x!r} outside {_ORACLE_X_RANGE}")
    # beyond u_max the integrand is below the double underflow threshold
    u_max = math.acosh(746.0 / x)

    def integrand(u: float) -> float:
        return math.exp(-x * math.cosh(u)) * math.cosh(order * u)

    # epsabs=0: the value can be exponentially small, only relative error counts
    val, err = quad(integrand, 0.0, u_max, epsabs=0.0, epsrel=1e-13, limit=500)
    if err > 1e-11 * abs(val):
        raise RuntimeError(f"quadrature did not converge: estimate {val}, error {err}")
    return val


def _oracle_g(z: float, cutoff: int) -> float:
    """Brute-force G(z), 30-digit arithmetic, n, l <= cutoff."""
    with mpmath.workdps(30):
        zz = mpmath.mpf(repr(z))
        total = mpmath.mpf(0)
        for n in range(1, cutoff + 1):
            for l in range(1, cutoff + 1):
                y = 2 * mpmath.pi * n * l * zz
                if y > 200:  # below 1e-85, irrelevant at the pin precision
                    if l == 1:
                        return float(-total / (2 * mpmath.pi)) if n > 1 else 0.0
                    break
                total += mpmath.mpf(n) / l * mpmath.besselk(1, y)
        return float(-total / (2 * mpmath.pi))


def _oracle_r(z1: float, z2: float, cutoff: int) -> float:
    """Brute-force R(z1, z2), 30-digit arithmetic, |l|, |p|, j <= cutoff."""
    with mpmath.workdps(30):
        m1 = mpmath.mpf(repr(z1))
        m2 = mpmath.mpf(repr(z2))
        total = mpmath.mpf(0)
        for l in range(-cutoff, cutoff + 1):
            for p in range(-cutoff, cutoff + 1):
                if l == 0 and p == 0:
                    continue
                rho = mpmath.sqrt((l * m1) ** 2 + (p * m2) ** 2)
                two_pi_rho = 2 * mpmath.pi * rho
                if two_pi_rho > 200:
                    continue
                for j in range(1, cutoff + 1):
                    y = two_pi_rho * j
                    if y > 200:
                        break
                    # K_{3/2}(y) = sqrt(pi/(2y)) e^{-y} (1 + 1/y)
                    k32 = mpmath.sqrt(mpmath.pi / (2 * y)) * mpmath.e ** (-y) * (1 + 1 / y)
                    total += (j / rho) ** mpmath.mpf("1.5") * k32
        return float(m1 * m2 / 8 * total)


def _oracle_x(betas: tuple[float, float, float], cutoff: int) -> float:
    """Direct triple log-sum, compensated double precision."""
    ba, bb, bc = betas
    terms = []
    for n in range(1, cutoff + 1):
        for l in range(1, cutoff + 1):
            for p in range(1, cutoff + 1):
                r = math.sqrt((ba * n) ** 2 + (bb * l) ** 2 + (bc * p) ** 2)
                if r > 745.0:
                    break
                terms.append(math.log1p(-math.exp(-r)))
    return math.fsum(terms)


def _oracle_log_double(b1: float, b2: float, cutoff: int) -> float:
    terms = []
    for n in range(1, cutoff + 1):
        for l in range(1, cutoff + 1):
            r = math.hypot(b1 * n, b2 * l)
            if r > 745.0:
                break
            terms.append(math.log1p(-math.exp(-r)))
    return math.fsum(terms)


def _oracle_y(betas: tuple[float, float, float], cutoff: int) -> float:
    """Direct electromagnetic log-sum: 2X plus the three double sums."""
    ba, bb, bc = betas
    return math.fsum(
        [
            2.0 * _oracle_x(betas, cutoff),
            _oracle_log_double(bb, bc, cutoff),
            _oracle_log_double(ba, bb, cutoff),
            _oracle_log_double(ba, bc, cutoff),
        ]
    )


def oracle_lattice(kind: str, params: dict, cutoff: int) -> float:
    """Direct summation of a lattice quantity with an explicit index cutoff.

    kind is one of "G", "R", "X" (scalar triple log-sum) or "Y"
    (electromagnetic log-sum); params carries the arguments:
    G: z; R: z1, z2; X/Y: beta_a, beta_b, beta_c.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    kind = kind.upper().split("-")[0]
    if kind == "G":
        return _oracle_g(params["z"], cutoff)
    if kind == "R":
        return _oracle_r(params["z1"], params["z2"], cutoff)
    if kind == "X":
        return _oracle_x((params["beta_a"], params["beta_b"], params["beta_c"]), cutoff)
    if kind == "Y":
        return _oracle_y((params["beta_a"], params["beta_b"], params["beta_c"]), cutoff)
    raise ValueError(f"unknown lattice kind {kind!r}")


def oracle_e0(field: FieldKind, a: float, b: float, c: float, cutoff: int = 120) -> float:
    """Zero-temperature box energy assembled from the brute-force G and R."""
    if field is FieldKind.SCALAR_DIRICHLET:
        return math.fsum(
            [
                -(PI**2) * b * c / (1440.0 * a**3),
                ZETA3 * (b + c) / (32.0 * PI * a**2),
                -PI / (96.0 * a),
                -(PI / (2.0 * a)) * (_oracle_g(b / a, cutoff) + _oracle_g(c / a, cutoff)),
                -(1.0 / a) * _oracle_r(b / a, c / a, cutoff),
            ]
        )
    return math.fsum(
        [
            -(PI**2) * b * c / (720.0 * a**3),
            -ZETA3 * c / (16.0 * PI * b**2),
            (PI / 48.0) * (1.0 / a + 1.0 / b),
            (PI / b) * _oracle_g(c / b, cutoff),
            -(2.0 / a) * _oracle_r(b / a, c / a, cutoff),
        ]
    )


@dataclass(frozen=True)
class ThermoReport:
    """Relative deviations of U and S from finite differences of F."""

    u_deviation: float
    s_deviation: float

    @property
    def max_deviation(self) -> float:
        return max(self.u_deviation, self.s_deviation)


def _richardson_dt(func, t: float, h_rel: float) -> float:
    h = h_rel * t
    d1 = (func(t + h) - func(t - h)) / (2.0 * h)
    d2 = (func(t + h / 2.0) - func(t - h / 2.0)) / h
    return (4.0 * d2 - d1) / 3.0


def oracle_thermo_consistency(
    geom: BoxGeometry, field: FieldKind, temperature: float, h_rel: float = 1e-4
) -> ThermoReport:
    """Check U = -T^2 d(F/T)/dT and S = -dF/dT by central differences.

    Reports relative deviations; never raises on disagreement.
    """
    if temperature <= 0.0:
        raise ValueError("needs T > 0")

    def f_of_t(t: float) -> float:
        return thermal.free_energy(geom, field, ThermalPoint(t)).total

    tp = ThermalPoint(temperature)
    u = thermal.internal_energy(geom, field, tp)
    s = thermal.entropy(geom, field, tp)

    d_f_over_t = _richardson_dt(lambda t: f_of_t(t) / t, temperature, h_rel)
    u_fd = -(temperature**2) * d_f_over_t
    df_dt = _richardson_dt(f_of_t, temperature, h_rel)
    # -dF/dT is an entropy in 1/(m K); convert to k_B units via T/(kT)
    s_fd = -df_dt * temperature / tp.kt
    u_dev = abs(u - u_fd) / max(abs(u), abs(u_fd))
    s_dev = abs(s - s_fd) / max(abs(s), abs(s_fd))
    return ThermoReport(u_deviation=u_dev, s_deviation=s_dev)


# ----------------------------------------------------------------------
# fixtures

def _beta_cube_2um_300k() -> float:
    """Reduced frequency pi beta/a for the a = 2 um cube at 300 K."""
    return PI / (2e-6 * K_BOLTZMANN * 300.0 / HBAR_C)


def _oracle_internal_energy(field: FieldKind, a: float, temperature: float, h_rel: float) -> float:
    """U by Richardson finite differences of the free energy in T."""
    geom = BoxGeometry(a, a, a)

    def f_over_t(t: float) -> float:
        return thermal.free_energy(geom, field, ThermalPoint(t)).total / t

    return -(temperature**2) * _richardson_dt(f_over_t, temperature, h_rel)


_FIXTURE_SPECS = [
    # (name, kind, params, cutoff, tol)
    ("bessel_k1_at_1", "bessel", {"order": 1.0, "x": 1.0}, 0, 1e-11),
    ("lattice_g_at_1", "G", {"z": 1.0}, 200, 1e-9),
    ("lattice_g_at_0.5", "G", {"z": 0.5}, 200, 1e-9),
    ("lattice_r_at_1_1", "R", {"z1": 1.0, "z2": 1.0}, 100, 1e-9),
    ("lattice_r_at_0.5_2", "R", {"z1": 0.5, "z2": 2.0}, 100, 1e-9),
    ("x_unit_cube_t1", "X", {"beta_a": 2 * PI, "beta_b": 2 * PI, "beta_c": 2 * PI}, 50, 1e-9),
    ("y_unit_cube_t1", "Y", {"beta_a": 2 * PI, "beta_b": 2 * PI, "beta_c": 2 * PI}, 50, 1e-9),
    ("e0_scalar_cube_unit", "E0S", {"a": 1.0, "b": 1.0, "c": 1.0}, 120, 1e-8),
    ("e0_em_cube_unit", "E0EM", {"a": 1.0, "b": 1.0, "c": 1.0}, 120, 1e-8),
    ("e0_scalar_slab_1_5_5", "E0S", {"a": 1.0, "b": 5.0, "c": 5.0}, 120, 1e-8),
    (
        "x_cube_2um_300K",
        "X",
        {
            "beta_a": _beta_cube_2um_300k(),
            "beta_b": _beta_cube_2um_300k(),
            "beta_c": _beta_cube_2um_300k(),
        },
        200,
        1e-9,
    ),
    (
        "u_scalar_cube_2um_300K",
        "U",
        {"field": 0.0, "a": 2e-6, "temperature": 300.0, "h_rel": 1e-4},
        0,
        1e-8,
    ),
    (
        "u_em_cube_2um_300K",
        "U",
        {"field": 1.0, "a": 2e-6, "temperature": 300.0, "h_rel": 1e-4},
        0,
        1e-8,
    ),
]


def _field_from_flag(flag: float) -> FieldKind:
    return FieldKind.ELECTROMAGNETIC if flag else FieldKind.SCALAR_DIRICHLET


def _eval_fixture(kind: str, params: dict, cutoff: int) -> float:
    if kind == "bessel":
        return oracle_bessel_k(params["order"], params["x"])
    if kind == "E0S":
        return oracle_e0(FieldKind.SCALAR_DIRICHLET, params["a"], params["b"], params["c"], cutoff)
    if kind == "E0EM":
        return oracle_e0(FieldKind.ELECTROMAGNETIC, params["a"], params["b"], params["c"], cutoff)
    if kind == "U":
        return _oracle_internal_energy(
            _field_from_flag(params["field"]), params["a"], params["temperature"], params["h_rel"]
        )
    return oracle_lattice(kind, params, cutoff)


def regenerate_fixtures(path) -> None:
    """Recompute every pinned value with its recorded oracle parameters."""
    lines = []
    for name, kind, params, cutoff, tol in _FIXTURE_SPECS:
        value = _eval_fixture(kind, params, cutoff)
        parts = [name, f"kind={kind}"] + [f"{k}={v:.17g}" for k, v in params.items()]
        parts.append(f"cutoff={cutoff}")
        parts.append(f"value={value:.17g}")
        parts.append(f"tol={tol:g}")
        lines.append(" ".join(parts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    params: dict
    cutoff: int
    value: float
    tol: float


def load_fixtures(path=None) -> list[Fixture]:
    """Parse the line-oriented fixtures file."""
    if path is None:
        text = resources.files("casimirbox").joinpath("data/fixtures.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        name = fields[0]
        kv = dict(f.split("=", 1) for f in fields[1:])
        kind = kv.pop("kind")
        cutoff = int(kv.pop("cutoff"))
        value = float(kv.pop("value"))
        tol = float(kv.pop("tol"))
        params = {k: float(v) for k, v in kv.items()}
        out.append(Fixture(name, kind, params, cutoff, value, tol))
    return out


# ----------------------------------------------------------------------
# golden checks

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    expected: float
    actual: float
    tol: float

    def __str__(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (
            f"[{tag}] {self.name}: expected {self.expected:.12e}, "
            f"actual {self.actual:.12e}, tol {self.tol:g}"
        )


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def _fixture_actual(fix: Fixture) -> float:
    """Production-path value corresponding to a pinned oracle value."""
    p = fix.params
    if fix.kind == "bessel":
        return bessel_k(p["order"], p["x"])
    if fix.kind == "G":
        return boxzero.lattice_g(p["z"])
    if fix.kind == "R":
        return boxzero.lattice_r(p["z1"], p["z2"])
    if fix.kind in ("X", "Y"):
        betas = (p["beta_a"], p["beta_b"], p["beta_c"])
        from . import _modesum

        x = _modesum.log_sum(betas, 1e-12)
        if fix.kind == "X":
            return x
        doubles = math.fsum(
            _modesum.log_sum(pair, 1e-12)
            for pair in ((betas[1], betas[2]), (betas[0], betas[1]), (betas[0], betas[2]))
        )
        return 2.0 * x + doubles
    if fix.kind == "E0S":
        return boxzero.e0_scalar(BoxGeometry(p["a"], p["b"], p["c"]))
    if fix.kind == "E0EM":
        return boxzero.e0_em(BoxGeometry(p["a"], p["b"], p["c"]))
    if fix.kind == "U":
        geom = BoxGeometry(p["a"], p["a"], p["a"])
        return thermal.internal_energy(
            geom, _field_from_flag(p["field"]), ThermalPoint(p["temperature"])
        )
    raise ValueError(f"unknown fixture kind {fix.kind!r}")


def run_checks(name_filter: str | None = None, fixtures_path=None) -> list[CheckResult]:
    """Run fixture comparisons plus closed-form golden checks.

    A fresh checkout passes every check; perturbing a fixture value makes
    exactly that check fail.
    """
    results: list[CheckResult] = []

    def add(name: str, expected: float, actual: float, tol: float):
        results.append(CheckResult(name, _rel(expected, actual) <= tol, expected, actual, tol))

    def add_bound(name: str, actual: float, bound: float):
        # for deviation-style quantities whose target is plain smallness
        results.append(CheckResult(name, abs(actual) <= bound, 0.0, actual, bound))

    for fix in load_fixtures(fixtures_path):
        add(f"fixture:{fix.name}", fix.value, _fixture_actual(fix), fix.tol)

    # closed-form Bessel anchors
    add("bessel:k_half_closed_form", math.sqrt(PI / 4.0) * math.exp(-2.0), bessel_k(0.5, 2.0), 1e-13)
    add(
        "bessel:recurrence_k32",
        bessel_k(0.5, 1.0) * 2.0,
        bessel_k(1.5, 1.0),
        1e-13,
    )
    grid = np.linspace(0.01, 50.0, 20)
    dev = max(
        _rel(oracle_bessel_k(order, float(x)), bessel_k(order, float(x)))
        for order in (0.5, 1.0, 1.5)
        for x in grid
    )
    add_bound("bessel:quadrature_grid_max_dev", dev, 1e-11)

    # paper-anchored electromagnetic cube energy (dimensionless a*E0)
    cube = BoxGeometry(1.0, 1.0, 1.0)
    add("boxzero:em_cube_energy", 0.09166, boxzero.e0_em(cube), 0.0055)

    # blackbody internal-energy density, electromagnetic: pi^2 (kT)^4 / 15
    tp = ThermalPoint(300.0)
    add(
        "thermal:planck_density",
        PI**2 * tp.kt**4 / 15.0,
        thermal.blackbody_internal_density(tp, FieldKind.ELECTROMAGNETIC),
        1e-10,
    )

    # heat-kernel route to the subtraction coefficients
    coeffs = thermal.subtraction_coeffs(cube, FieldKind.SCALAR_DIRICHLET)
    a_half, a_one = thermal.heat_kernel_coeffs(cube)
    add("thermal:alpha1_heat_kernel", -ZETA3 * a_half / (4.0 * PI**1.5), coeffs.alpha1, 1e-12)
    add("thermal:alpha2_heat_kernel", -a_one / 24.0, coeffs.alpha2, 1e-12)

    # thermodynamic consistency at desk scale
    box2um = BoxGeometry(2e-6, 2e-6, 2e-6)
    rep_em = oracle_thermo_consistency(box2um, FieldKind.ELECTROMAGNETIC, 300.0)
    add_bound("thermo:em_cube_300K", rep_em.max_deviation, 1e-4)
    rep_s = oracle_thermo_consistency(box2um, FieldKind.SCALAR_DIRICHLET, 50.0)
    add_bound("thermo:scalar_cube_50K", rep_s.max_deviation, 1e-4)

    # plates: low-temperature expansion and classical limit
    t10 = _plates_cfg_for_t(1e-6, 10.0)
    f_expansion = -(PI**2) / (720.0 * t10.separation**3) * (
        1.0 + 45.0 * ZETA3 / PI**3 / 10.0**3 - 1.0 / 10.0**4
    )
    add("plates:low_t_expansion", f_expansion, plates.plates_free_energy(t10), 1e-6)
    t005 = _plates_cfg_for_t(1e-6, 0.05)
    f_classical = -t005.kt * ZETA3 / (8.0 * PI * t005.separation**2)
    add("plates:classical_limit", f_classical, plates.plates_free_energy(t005), 1e-3)
    p_fd = _plates_pressure_reference(t10)
    add("plates:pressure_consistency", p_fd, plates.plates_pressure(t10), 1e-5)

    # reduced-variable anchor: a = 2 um, T = 300 K gives t ~ 1.908
    add("units:reduced_t_anchor", 1.9082371, ThermalPoint(300.0).reduced_t(2e-6), 1e-4)

    if name_filter:
        results = [r for r in results if name_filter in r.name]
    return results


def _plates_cfg_for_t(separation: float, t: float) -> plates.PlatesConfig:
    """PlatesConfig at the temperature that realizes reduced t for this gap."""
    temperature = HBAR_C / (2.0 * separation * K_BOLTZMANN * t)
    return plates.PlatesConfig(separation, temperature)


def _plates_pressure_reference(cfg: plates.PlatesConfig) -> float:
    """Independent pressure estimate with a different step ladder."""
    a = cfg.separation
    h = 3e-5 * a

    def f(aa: float) -> float:
        return plates.plates_free_energy(plates.PlatesConfig(aa, cfg.temperature))

    d1 = (f(a + h) - f(a - h)) / (2.0 * h)
    d2 = (f(a + h / 2.0) - f(a - h / 2.0)) / h
    return -(4.0 * d2 - d1) / 3.0
