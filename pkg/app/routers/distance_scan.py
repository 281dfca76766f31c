import logging

import pandas as pd

from app.models.data_models.RunConfig import RunConfig
from app.models.service_classes.SweepService import SweepService
from app.models.units import NS
from app.routers._paths import output_file
from app.schemas.summaries import DistanceScanSummary
from app.services.export_service import write_csv, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("distance-scan", help="Convolved P1 at fixed interatomic distances r_SR / lambda")
    parser.set_defaults(run=run)


def run(args, config: RunConfig) -> int:
    results = SweepService(config).distance_scan()
    columns = {"tau_ns": results[0].p1_convolved.tau / NS} if results else {"tau_ns": []}
    for result in results:
        columns[f"p1_rsr_{result.ratio:g}"] = result.p1_convolved.values * NS
        logger.info(f"r_SR/lambda {result.ratio:g}: strength {result.strength:.2f}, FWHM {result.fwhm_post_jitter / NS:.3f} ns")
    write_csv(pd.DataFrame(columns), output_file(args, "distance_scan.csv"))
    summary = DistanceScanSummary(
        reference_temperature_C=config.sweep.distance_reference_temperature_c,
        ratios=[r.ratio for r in results],
        strengths=[r.strength for r in results],
        fwhm_ns=[r.fwhm_post_jitter / NS for r in results],
    )
    write_json(summary.model_dump(), output_file(args, "distance_scan.json"))
    return 0
