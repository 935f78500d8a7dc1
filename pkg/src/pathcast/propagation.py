"""Empirical path-loss models: SUI, Okumura, COST-231 Hata, COST-231
Walfisch-Ikegami and Ericsson 9999.

All operations are pure functions over immutable inputs.  External units are
meters and MHz everywhere; models that are natively written in km convert
internally.  Logarithms are base 10 throughout.

Several formulas circulate with misprinted terms.  Operations that are
affected take a :class:`FidelityMode`: ``CORRECTED`` (default) follows the
standard literature definitions, ``AS_PRINTED`` follows the comparison
source's printed formulas verbatim, falling back to the corrected branch
(with a warning) where the printed branch set has gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

LIGHT_SPEED_M_S = 299_792_458.0

_log10 = math.log10


class FidelityMode(Enum):
    CORRECTED = "corrected"
    AS_PRINTED = "as_printed"


class Environment(Enum):
    URBAN = "urban"
    SUBURBAN = "suburban"
    RURAL = "rural"


class SuiTerrain(Enum):
    """SUI terrain class, densest (A) to flattest (C)."""

    A = "A"
    B = "B"
    C = "C"


#: Each environment maps to exactly one SUI terrain class.
TERRAIN_FOR_ENVIRONMENT = {
    Environment.URBAN: SuiTerrain.A,
    Environment.SUBURBAN: SuiTerrain.B,
    Environment.RURAL: SuiTerrain.C,
}


@dataclass(frozen=True)
class SuiTerrainParams:
    """SUI path-loss exponent parameters (a dimensionless, b per meter, c meters)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a <= 0 or self.b < 0 or self.c < 0:
            raise DomainError("SUI terrain parameters require a > 0, b >= 0, c >= 0")


SUI_TERRAIN_PARAMS = {
    SuiTerrain.A: SuiTerrainParams(4.6, 0.0075, 12.6),
    SuiTerrain.B: SuiTerrainParams(4.0, 0.0065, 17.1),
    SuiTerrain.C: SuiTerrainParams(3.6, 0.005, 20.0),
}


@dataclass(frozen=True)
class RadioLink:
    """One transmitter-receiver geometry.

    Wavelength is always derived from the frequency (c = 299 792 458 m/s),
    never stored.  ``sui_reference_distance_m`` is the d0 of the SUI model.
    """

    frequency_mhz: float
    distance_m: float
    bs_height_m: float
    rx_height_m: float
    sui_reference_distance_m: float = 100.0

    def __post_init__(self):
        if self.frequency_mhz <= 0:
            raise DomainError("frequency must be positive")
        if self.distance_m <= 0:
            raise DomainError("distance must be positive")
        if not self.bs_height_m > self.rx_height_m > 0:
            raise DomainError("heights must satisfy bs_height > rx_height > 0")
        if self.sui_reference_distance_m <= 0:
            raise DomainError("SUI reference distance must be positive")

    @property
    def wavelength_m(self) -> float:
        return LIGHT_SPEED_M_S / (self.frequency_mhz * 1e6)

    @property
    def distance_km(self) -> float:
        return self.distance_m / 1000.0


@dataclass(frozen=True)
class WiGeometry:
    """Street geometry for the Walfisch-Ikegami model.

    ``metro_factor_k`` is 0.7 for suburban centers and 1.5 for metropolitan
    centers; other values are permitted as explicit overrides.  ``los``
    selects the line-of-sight formula over the NLOS diffraction path.
    """

    street_width_m: float = 25.0
    building_separation_m: float = 50.0
    roof_height_m: float = 15.0
    orientation_deg: float = 30.0
    metro_factor_k: float = 1.5
    los: bool = False

    def __post_init__(self):
        if self.street_width_m <= 0 or self.building_separation_m <= 0:
            raise DomainError("street width and building separation must be positive")
        if self.roof_height_m <= 0:
            raise DomainError("roof height must be positive")
        if not 0.0 <= self.orientation_deg <= 90.0:
            raise DomainError("street orientation must lie in [0, 90] degrees")


@dataclass(frozen=True)
class EricssonCoefficients:
    a0: float = 36.2
    a1: float = 30.2
    a2: float = 12.0
    a3: float = 0.1


@dataclass(frozen=True)
class PathLossResult:
    """Total loss plus an itemized breakdown and provenance warnings.

    ``total_db`` always equals the sum of the component values; labels are
    unique within one result.
    """

    total_db: float
    components: tuple[tuple[str, float], ...]
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.components:
            raise DomainError("a path-loss result needs at least one component")
        labels = [label for label, _ in self.components]
        if len(set(labels)) != len(labels):
            raise DomainError("component labels must be unique")
        if abs(self.total_db - sum(v for _, v in self.components)) > 1e-9:
            raise DomainError("total does not equal the component sum")

    def component(self, label: str) -> float:
        for name, value in self.components:
            if name == label:
                return value
        raise KeyError(label)


def _result(components, warnings=()):
    return PathLossResult(
        total_db=sum(v for _, v in components),
        components=tuple(components),
        warnings=tuple(warnings),
    )


# --------------------------------------------------------------------------
# SUI
# --------------------------------------------------------------------------

def sui_gamma(params: SuiTerrainParams, bs_height_m: float) -> float:
    """Path-loss exponent gamma = a - b*h_b + c/h_b."""
    if bs_height_m <= 0:
        raise DomainError("base-station height must be positive")
    return params.a - params.b * bs_height_m + params.c / bs_height_m


def sui_reference_loss(frequency_mhz: float, d0_m: float) -> float:
    """Free-space loss at the reference distance: 20*log10(4*pi*d0/lambda)."""
    if frequency_mhz <= 0:
        raise DomainError("frequency must be positive")
    if d0_m <= 0:
        raise DomainError("reference distance must be positive")
    wavelength = LIGHT_SPEED_M_S / (frequency_mhz * 1e6)
    return 20.0 * _log10(4.0 * math.pi * d0_m / wavelength)


def sui_freq_correction(frequency_mhz: float) -> float:
    """Frequency correction X_f = 6*log10(f/2000)."""
    if frequency_mhz <= 0:
        raise DomainError("frequency must be positive")
    return 6.0 * _log10(frequency_mhz / 2000.0)


def sui_height_correction(rx_height_m: float, terrain: SuiTerrain) -> float:
    """Receiver-height correction X_h; terrain C uses the steeper -20 slope."""
    if rx_height_m <= 0:
        raise DomainError("receiver height must be positive")
    slope = -20.0 if terrain is SuiTerrain.C else -10.8
    return slope * _log10(rx_height_m / 2000.0)


def sui_shadowing(frequency_mhz: float, environment: Environment) -> float:
    """Closed-form shadowing term 0.65*(log f)^2 - 1.3*log f + alpha.

    alpha is bound by environment name: 6.6 dB urban, 5.2 dB suburban/rural.
    Deterministic by design; no random sampling.
    """
    if frequency_mhz <= 0:
        raise DomainError("frequency must be positive")
    alpha = 6.6 if environment is Environment.URBAN else 5.2
    lf = _log10(frequency_mhz)
    return 0.65 * lf * lf - 1.3 * lf + alpha


def sui_path_loss(link: RadioLink, environment: Environment,
                  include_shadowing: bool = True) -> PathLossResult:
    """SUI total: A + 10*gamma*log10(d/d0) + X_f + X_h (+ S)."""
    d0 = link.sui_reference_distance_m
    if link.distance_m <= d0:
        raise DomainError(
            f"distance {link.distance_m:g} m is below reference distance {d0:g} m")
    terrain = TERRAIN_FOR_ENVIRONMENT[environment]
    gamma = sui_gamma(SUI_TERRAIN_PARAMS[terrain], link.bs_height_m)
    components = [
        ("free_space_ref", sui_reference_loss(link.frequency_mhz, d0)),
        ("distance", 10.0 * gamma * _log10(link.distance_m / d0)),
        ("frequency_correction", sui_freq_correction(link.frequency_mhz)),
        ("height_correction", sui_height_correction(link.rx_height_m, terrain)),
    ]
    if include_shadowing:
        components.append(("shadowing", sui_shadowing(link.frequency_mhz, environment)))
    return _result(components)


# --------------------------------------------------------------------------
# Okumura
# --------------------------------------------------------------------------

def okumura_antenna_gains(bs_height_m: float, rx_height_m: float) -> tuple[float, float]:
    """Antenna gain factors G(h_b) = 20*log10(h_b/200), G(h_r) = 10*log10(h_r/3)."""
    if bs_height_m <= 0 or rx_height_m <= 0:
        raise DomainError("antenna heights must be positive")
    return 20.0 * _log10(bs_height_m / 200.0), 10.0 * _log10(rx_height_m / 3.0)


def okumura_path_loss(link: RadioLink, environment: Environment, curves,
                      clamp: bool = False) -> PathLossResult:
    """Okumura total: L_f + A_mu(f,d) - G(h_b) - G(h_r) - G_AREA(f, env).

    ``curves`` is a :class:`pathcast.curves.CurveTable`.  The free-space term
    uses the actual Tx-Rx distance.  Out-of-grid lookups raise unless
    ``clamp`` is set, in which case the clamped axes are reported as warnings.
    """
    from .curves import amu_lookup, clamp_to_grid, garea_lookup

    warnings = []
    freq, dist = link.frequency_mhz, link.distance_m
    if clamp:
        freq, dist, notes = clamp_to_grid(curves, freq, dist)
        warnings.extend(notes)
    amu = amu_lookup(curves, freq, dist)
    garea = garea_lookup(curves, freq, environment)
    g_bs, g_rx = okumura_antenna_gains(link.bs_height_m, link.rx_height_m)
    free_space = 20.0 * _log10(4.0 * math.pi * link.distance_m / link.wavelength_m)
    components = [
        ("free_space", free_space),
        ("median_attenuation", amu),
        ("bs_height_gain", -g_bs),
        ("rx_height_gain", -g_rx),
        ("area_gain", -garea),
    ]
    return _result(components, warnings)


# --------------------------------------------------------------------------
# COST-231 Hata
# --------------------------------------------------------------------------

COST231_VALID_MHZ = (1500.0, 2000.0)


def hata_rx_correction(frequency_mhz: float, rx_height_m: float,
                       environment: Environment,
                       mode: FidelityMode = FidelityMode.CORRECTED) -> float:
    """Receiver correction a(h_r).

    Urban: 3.2*(log10(11.75*h_r))^2 - 4.97 in both modes.  Suburban/rural:
    the standard small-city term in corrected mode; the misprinted variant
    (0.7 multiplying h_r alone, 1.58*f in place of 1.56*log f) as printed.
    """
    if frequency_mhz <= 0 or rx_height_m <= 0:
        raise DomainError("frequency and receiver height must be positive")
    if environment is Environment.URBAN:
        return 3.2 * _log10(11.75 * rx_height_m) ** 2 - 4.97
    lf = _log10(frequency_mhz)
    if mode is FidelityMode.AS_PRINTED:
        return 1.1 * lf - 0.7 * rx_height_m - (1.58 * frequency_mhz - 0.8)
    return (1.1 * lf - 0.7) * rx_height_m - (1.56 * lf - 0.8)


def cost231_hata_path_loss(link: RadioLink, environment: Environment,
                           mode: FidelityMode = FidelityMode.CORRECTED) -> PathLossResult:
    """COST-231 Hata median loss; c = 3 dB urban, 0 otherwise; d in km."""
    lo, hi = COST231_VALID_MHZ
    warnings = []
    if not lo <= link.frequency_mhz <= hi:
        warnings.append(
            f"frequency {link.frequency_mhz:g} MHz outside model validity "
            f"range {lo:g}-{hi:g} MHz")
    components = [
        ("constant", 46.3),
        ("frequency", 33.9 * _log10(link.frequency_mhz)),
        ("bs_height", -13.82 * _log10(link.bs_height_m)),
        ("rx_correction", -hata_rx_correction(link.frequency_mhz, link.rx_height_m,
                                              environment, mode)),
        ("distance", (44.9 - 6.55 * _log10(link.bs_height_m)) * _log10(link.distance_km)),
        ("environment", 3.0 if environment is Environment.URBAN else 0.0),
    ]
    return _result(components, warnings)


# --------------------------------------------------------------------------
# COST-231 Walfisch-Ikegami
# --------------------------------------------------------------------------

def wi_los_path_loss(link: RadioLink) -> PathLossResult:
    """Line-of-sight street canyon loss: 42.64 + 26*log10(d_km) + 20*log10(f)."""
    components = [
        ("constant", 42.64),
        ("distance", 26.0 * _log10(link.distance_km)),
        ("frequency", 20.0 * _log10(link.frequency_mhz)),
    ]
    return _result(components)


def wi_orientation_loss(orientation_deg: float) -> float:
    """Street-orientation correction, piecewise over [0,35), [35,55), [55,90]."""
    a = orientation_deg
    if not 0.0 <= a <= 90.0:
        raise DomainError("street orientation must lie in [0, 90] degrees")
    if a < 35.0:
        return -10.0 + 0.354 * a
    if a < 55.0:
        return 2.5 + 0.075 * (a - 35.0)
    return 4.0 - 0.114 * (a - 55.0)


def wi_rooftop_to_street(geometry: WiGeometry, frequency_mhz: float,
                         rx_height_m: float) -> float:
    """Rooftop-to-street diffraction L_RTS.

    The height difference is read as roof height minus receiver height (the
    printed form reuses the base-station symbol; see wi_nlos_path_loss for
    the warning surfacing the alternative reading).
    """
    if frequency_mhz <= 0:
        raise DomainError("frequency must be positive")
    drop = geometry.roof_height_m - rx_height_m
    if drop <= 0:
        raise DomainError(
            "rooftop term undefined: roof height must exceed receiver height")
    return (-16.9 - 10.0 * _log10(geometry.street_width_m)
            + 10.0 * _log10(frequency_mhz) + 20.0 * _log10(drop)
            + wi_orientation_loss(geometry.orientation_deg))


def _wi_multiscreen_terms(geometry: WiGeometry, link: RadioLink,
                          mode: FidelityMode):
    """L_MSD term values plus any garbled-branch warnings."""
    d_km = link.distance_km
    freq = link.frequency_mhz
    roof = geometry.roof_height_m
    delta = link.bs_height_m - roof  # BS height relative to the rooftops
    warnings = []

    if mode is FidelityMode.AS_PRINTED:
        if delta > 0:
            l_bsh = -18.0 * _log10(1.0 + delta)
            k_a = 54.0
            k_d = 18.0 + 15.0 * delta / roof
        else:
            # The printed branch sets only cover (d < 0.5 km) for L_BSH and
            # (d > 0.5 km) for k_A and k_D; the gaps use the corrected forms.
            if d_km < 0.5:
                l_bsh = 54.0 + 0.8 * delta * 2.0 * d_km
            else:
                l_bsh = 0.0
                warnings.append(
                    "garbled branch: corrected definition substituted for the "
                    "multiscreen base term below rooftop at d >= 0.5 km")
            if d_km > 0.5:
                k_a = 54.0 + 0.8 * delta
            else:
                k_a = 54.0 - 0.8 * delta * (d_km / 0.5)
                warnings.append(
                    "garbled branch: corrected definition substituted for the "
                    "multiscreen range offset below rooftop at d <= 0.5 km")
            if d_km > 0.5:
                k_d = 18.0
            else:
                k_d = 18.0 - 15.0 * delta / roof
                warnings.append(
                    "garbled branch: corrected definition substituted for the "
                    "multiscreen distance slope below rooftop at d <= 0.5 km")
        k_f = -4.0 + geometry.metro_factor_k * (freq / 924.0)
    else:
        if delta > 0:
            l_bsh = -18.0 * _log10(1.0 + delta)
            k_a = 54.0
            k_d = 18.0
        else:
            l_bsh = 0.0
            if d_km >= 0.5:
                k_a = 54.0 - 0.8 * delta
            else:
                k_a = 54.0 - 0.8 * delta * (d_km / 0.5)
            k_d = 18.0 - 15.0 * delta / roof
        k_f = -4.0 + geometry.metro_factor_k * (freq / 925.0 - 1.0)

    value = (l_bsh + k_a + k_d * _log10(d_km)
             + k_f * _log10(freq) - 9.0 * _log10(geometry.building_separation_m))
    return value, warnings


def wi_multiscreen(geometry: WiGeometry, link: RadioLink,
                   mode: FidelityMode = FidelityMode.CORRECTED) -> float:
    """Multi-screen diffraction L_MSD = L_BSH + k_A + k_D*log d + k_F*log f - 9*log s_b."""
    value, _ = _wi_multiscreen_terms(geometry, link, mode)
    return value


def wi_nlos_path_loss(geometry: WiGeometry, link: RadioLink,
                      mode: FidelityMode = FidelityMode.CORRECTED) -> PathLossResult:
    """NLOS total: free space + rooftop-to-street + multi-screen diffraction.

    A negative diffraction sum is clamped to the free-space floor and
    reported as a warning.
    """
    free_space = 32.45 + 20.0 * _log10(link.distance_km) + 20.0 * _log10(link.frequency_mhz)
    rts = wi_rooftop_to_street(geometry, link.frequency_mhz, link.rx_height_m)
    msd, warnings = _wi_multiscreen_terms(geometry, link, mode)

    if geometry.roof_height_m != link.bs_height_m:
        alt = 20.0 * _log10(link.bs_height_m - link.rx_height_m)
        shift = alt - 20.0 * _log10(geometry.roof_height_m - link.rx_height_m)
        warnings = warnings + [
            f"height symbols bound to roof height {geometry.roof_height_m:g} m; "
            f"the base-station reading ({link.bs_height_m:g} m) would shift the "
            f"rooftop term by {shift:+.2f} dB"]

    components = [
        ("free_space", free_space),
        ("rooftop_to_street", rts),
        ("multiscreen", msd),
    ]
    diffraction = rts + msd
    if diffraction < 0.0:
        components.append(("diffraction_floor", -diffraction))
        warnings = warnings + [
            "negative diffraction sum clamped to the free-space floor"]
    return _result(components, warnings)


# --------------------------------------------------------------------------
# Ericsson 9999
# --------------------------------------------------------------------------

def ericsson_gf(frequency_mhz: float) -> float:
    """Frequency term g(f) = 44.49*log10(f) - 4.78*(log10(f))^2."""
    if frequency_mhz <= 0:
        raise DomainError("frequency must be positive")
    lf = _log10(frequency_mhz)
    return 44.49 * lf - 4.78 * lf * lf


def ericsson_path_loss(link: RadioLink,
                       coeffs: EricssonCoefficients = EricssonCoefficients(),
                       mode: FidelityMode = FidelityMode.CORRECTED) -> PathLossResult:
    """Ericsson 9999 total with adjustable a0..a3 coefficients.

    The fixed receiver-height offset is 3.2*(log10(11.75))^2 exactly as
    printed; corrected mode restores the receiver height inside the log,
    3.2*(log10(11.75*h_r))^2.
    """
    lb = _log10(link.bs_height_m)
    ld = _log10(link.distance_km)
    if mode is FidelityMode.AS_PRINTED:
        offset = 3.2 * _log10(11.75) ** 2
    else:
        offset = 3.2 * _log10(11.75 * link.rx_height_m) ** 2
    components = [
        ("constant", coeffs.a0),
        ("distance", coeffs.a1 * ld),
        ("bs_height", coeffs.a2 * lb),
        ("bs_distance_cross", coeffs.a3 * lb * ld),
        ("rx_height_offset", -offset),
        ("frequency_gain", ericsson_gf(link.frequency_mhz)),
    ]
    return _result(components)
