import logging

from app.models.data_models.RunConfig import RunConfig
from app.models.data_models.SweepTable import SweepTable
from app.models.exceptions import RegressionCheckError
from app.models.service_classes.SweepService import SweepService
from app.routers._paths import output_file
from app.schemas.summaries import SweepSummary
from app.services.export_service import write_csv, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="FWHM, brightness and predicted CAR over the configured temperatures")
    parser.set_defaults(run=run)


def summarize(table: SweepTable) -> SweepSummary:
    """Cold-to-hot narrowing and brightness gain between the first and last rows"""
    summary = SweepSummary(
        rows=len(table),
        failures=[failure.model_dump() for failure in table.failures],
    )
    if len(table) >= 2:
        cold, hot = table.rows[0], table.rows[-1]
        summary.fwhm_reduction_superradiant = 1.0 - hot.fwhm_post_jitter / cold.fwhm_post_jitter
        summary.fwhm_reduction_doppler_only = 1.0 - hot.fwhm_doppler_only / cold.fwhm_doppler_only
        if cold.brightness > 0:
            summary.brightness_ratio = hot.brightness / cold.brightness
    return summary


def run(args, config: RunConfig) -> int:
    table = SweepService(config).temperature_sweep()
    write_csv(table.to_frame(), output_file(args, "sweep.csv"))
    summary = summarize(table)
    write_json(summary.model_dump(), output_file(args, "sweep.json"))
    if summary.fwhm_reduction_superradiant is not None:
        logger.info(
            f"FWHM reduction {summary.fwhm_reduction_superradiant:.1%} "
            f"(Doppler only {summary.fwhm_reduction_doppler_only:.1%})"
        )
    if not table.ok:
        failed = ", ".join(
            f"{f.temperature:.2f} K" + (f" ({f.column})" if f.column else "") for f in table.failures
        )
        raise RegressionCheckError(f"{len(table.failures)} sweep failures: {failed}")
    return 0
