"""pathcast: empirical radio path-loss models (SUI, Okumura, COST-231 Hata,
COST-231 Walfisch-Ikegami, Ericsson 9999) with curve tables, scenario sweeps,
reference comparison and cell-range inversion."""

from .curves import (
    CurveTable,
    amu_lookup,
    garea_lookup,
    load_curves,
    load_default_curves,
    serialize_curves,
)
from .errors import (
    BoundsError,
    CurveLookupError,
    CurveParseError,
    DomainError,
    PathcastError,
)
from .propagation import (
    LIGHT_SPEED_M_S,
    SUI_TERRAIN_PARAMS,
    TERRAIN_FOR_ENVIRONMENT,
    Environment,
    EricssonCoefficients,
    FidelityMode,
    PathLossResult,
    RadioLink,
    SuiTerrain,
    SuiTerrainParams,
    WiGeometry,
    cost231_hata_path_loss,
    ericsson_gf,
    ericsson_path_loss,
    hata_rx_correction,
    okumura_antenna_gains,
    okumura_path_loss,
    sui_freq_correction,
    sui_gamma,
    sui_height_correction,
    sui_path_loss,
    sui_reference_loss,
    sui_shadowing,
    wi_los_path_loss,
    wi_multiscreen,
    wi_nlos_path_loss,
    wi_orientation_loss,
    wi_rooftop_to_street,
)
from .scenario import (
    DiscrepancyLedger,
    LedgerEntry,
    ModelId,
    ReferenceRow,
    Scenario,
    compare_against_reference,
    default_scenario,
    evaluate,
    invert_cell_range,
    load_reference_rows,
    sweep,
)

__version__ = "0.1.0"
