import logging

import pandas as pd

from app.models.data_models.RunConfig import RunConfig
from app.models.exceptions import RegressionCheckError
from app.models.service_classes.SweepService import SweepService
from app.routers._paths import output_file
from app.services.export_service import write_csv

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("table1", help="Computed optical depth and r_SR / lambda against the measured table")
    parser.set_defaults(run=run)


def run(args, config: RunConfig) -> int:
    rows = SweepService(config).table1_comparison()
    frame = pd.DataFrame.from_records([row.model_dump() for row in rows])
    write_csv(frame, output_file(args, "table1.csv"))
    failed = [row.temperature_C for row in rows if not (row.od_pass and row.r_sr_pass)]
    for row in rows:
        logger.info(
            f"{row.temperature_C:5.1f} °C  OD {row.od_computed:7.3f} (measured {row.od_measured:g})  "
            f"r/lambda {row.r_sr_over_lambda_computed:.3f} (measured {row.r_sr_over_lambda_measured:g})  "
            f"{row.regime}"
        )
    if failed:
        raise RegressionCheckError(f"Table rows outside tolerance at {failed} °C")
    return 0
