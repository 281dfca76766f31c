import logging
from typing import List, Tuple

import pandas as pd
from pydantic import ValidationError

from app.models.data_models.RunConfig import RunConfig
from app.models.data_models.StrengthPoint import StrengthPoint
from app.models.exceptions import ConfigSyntaxError, ConfigValidationError
from app.models.service_classes.StrengthService import fit_mu
from app.models.service_classes.SweepService import SweepService
from app.models.units import NS, celsius_to_kelvin, kelvin_to_celsius
from app.routers._paths import output_file
from app.schemas.summaries import FitMuSummary
from app.services.config_service import format_validation_error
from app.services.export_service import read_csv, write_csv, write_json

logger = logging.getLogger(__name__)

STRENGTH_COLUMNS = ["N", "strength"]
WIDTH_COLUMNS = ["temperature_C", "fwhm_ns"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("fit-mu", help="Fit mu in Gamma_SR / Gamma_I = 1 + mu N")
    parser.add_argument("--data", required=True, help="CSV with (N, strength) or (temperature_C, fwhm_ns) columns")
    parser.set_defaults(run=run)


def _numeric_columns(frame: pd.DataFrame, columns: List[str]) -> pd.DataFrame:
    """Selected columns as floats; text or empty cells are a syntax error"""
    try:
        values = frame[columns].apply(pd.to_numeric, errors="raise").astype(float)
    except (ValueError, TypeError) as exc:
        raise ConfigSyntaxError(f"fit-mu data columns {columns} must be numeric: {exc}") from exc
    missing = values.isna().any(axis=1)
    if missing.any():
        rows = [int(i) + 2 for i in values.index[missing]]
        raise ConfigSyntaxError(f"fit-mu data has empty cells in {columns} on lines {rows}")
    return values


def _point(line: int, **fields) -> StrengthPoint:
    try:
        return StrengthPoint(**fields)
    except ValidationError as exc:
        detail = format_validation_error(exc).replace("\n", f"\nline {line}: ")
        raise ConfigValidationError(f"line {line}: {detail}") from exc


def points_from_frame(frame: pd.DataFrame, config: RunConfig) -> Tuple[List[StrengthPoint], List[str]]:
    """Strength observations, inverting measured widths through the forward model when needed.

    Line numbers in error messages count the CSV header as line 1.
    """
    columns = set(frame.columns)
    if set(STRENGTH_COLUMNS) <= columns:
        values = _numeric_columns(frame, STRENGTH_COLUMNS)
        points = [
            _point(line, atom_count=n, strength=s)
            for line, (n, s) in enumerate(values.itertuples(index=False, name=None), start=2)
        ]
        return points, STRENGTH_COLUMNS
    if set(WIDTH_COLUMNS) <= columns:
        values = _numeric_columns(frame, WIDTH_COLUMNS)
        service = SweepService(config)
        points = []
        for line, (t_c, width_ns) in enumerate(values.itertuples(index=False, name=None), start=2):
            if not width_ns > 0:
                raise ConfigValidationError(f"line {line}: fwhm_ns must be positive, got {width_ns}")
            state, model = service.forward_model(celsius_to_kelvin(t_c))
            strength = model.extract_strength(width_ns * NS)
            logger.info(f"{t_c:g} °C: {width_ns:.3f} ns -> strength {strength:.2f}")
            points.append(_point(
                line,
                temperature=state.temperature,
                atom_count=state.atom_count,
                measured_fwhm=width_ns * NS,
                strength=strength,
            ))
        return points, WIDTH_COLUMNS
    raise ConfigSyntaxError(
        f"fit-mu data needs columns {STRENGTH_COLUMNS} or {WIDTH_COLUMNS}, got {sorted(columns)}"
    )


def run(args, config: RunConfig) -> int:
    frame = read_csv(args.data)
    points, source_columns = points_from_frame(frame, config)
    result = fit_mu(points)
    write_json(
        FitMuSummary(
            mu=result.mu,
            mu_stderr=result.mu_stderr,
            n_points=result.n_points,
            residuals=result.residuals,
            source_columns=source_columns,
        ).model_dump(),
        output_file(args, "fit_mu.json"),
    )
    write_csv(
        pd.DataFrame({
            "temperature_C": [kelvin_to_celsius(p.temperature) if p.temperature else float("nan") for p in points],
            "N": [p.atom_count for p in points],
            "fwhm_ns": [p.measured_fwhm / NS if p.measured_fwhm else float("nan") for p in points],
            "strength": [p.strength for p in points],
            "residual": result.residuals,
        }),
        output_file(args, "fit_mu_points.csv"),
    )
    logger.info(f"mu = {result.mu:.4e} +/- {result.mu_stderr:.2e}")
    return 0
