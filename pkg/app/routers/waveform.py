import logging

import pandas as pd

from app.models.data_models.RunConfig import RunConfig
from app.models.service_classes.SweepService import SweepService
from app.models.units import NS, celsius_to_kelvin
from app.routers._paths import output_file
from app.schemas.summaries import WaveformSummary
from app.services.export_service import write_csv, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("waveform", help="Unconvolved and jitter-convolved P1 at one temperature")
    parser.add_argument("--temp", type=float, default=95.0, help="Cell temperature in °C (default 95)")
    parser.set_defaults(run=run)


def run(args, config: RunConfig) -> int:
    result = SweepService(config).waveform(celsius_to_kelvin(args.temp))
    # densities per ns so each column integrates to 1 over tau_ns
    frame = pd.DataFrame({
        "tau_ns": result.p1_raw.tau / NS,
        "p1_raw": result.p1_raw.values * NS,
        "p1_convolved": result.p1_convolved.values * NS,
    })
    stem = f"waveform_{args.temp:g}C"
    write_csv(frame, output_file(args, f"{stem}.csv"))
    summary = WaveformSummary(
        temperature_C=args.temp,
        fwhm_ns=result.fwhm_post_jitter / NS,
        fwhm_pre_jitter_ns=result.fwhm_pre_jitter / NS,
        strength=result.strength,
        r_sr_over_lambda=result.state.r_sr_over_lambda,
        od=result.state.optical_depth,
        atom_count=result.state.atom_count,
        regime=result.state.regime.value,
    )
    write_json(summary.model_dump(), output_file(args, f"{stem}.json"))
    logger.info(
        f"{args.temp:g} °C: FWHM {summary.fwhm_ns:.3f} ns, strength {summary.strength:.1f}, "
        f"r_SR/lambda {summary.r_sr_over_lambda:.3f}"
    )
    return 0
