import logging
import math
from typing import Optional

import pandas as pd

from app.models.data_models.RunConfig import RunConfig
from app.models.exceptions import ExtractionError, InsufficientStatisticsError
from app.models.service_classes.SweepService import SweepService
from app.models.units import NS, PS, celsius_to_kelvin
from app.routers._paths import output_file
from app.schemas.summaries import McSummary
from app.services.analysis_service import car_with_uncertainty, fwhm, heralding_efficiency, pair_rate, predicted_car
from app.services.coincidence_service import build_histogram, estimate_p1, sample_events
from app.services.export_service import write_csv, write_events_binary, write_events_text, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("mc", help="Seeded Monte Carlo of the heralded-pair detection record")
    parser.add_argument("--temp", type=float, default=None, help="Cell temperature in °C (default mc.temperature_c)")
    parser.add_argument("--seed", type=int, default=None, help="Overrides mc.seed")
    parser.set_defaults(run=run)


def _finite(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def run(args, config: RunConfig) -> int:
    mc = config.mc
    temperature_c = mc.temperature_c if args.temp is None else args.temp
    seed = mc.seed if args.seed is None else args.seed
    service = SweepService(config)
    detection = service.detection

    reference = service.waveform(celsius_to_kelvin(temperature_c))
    rates = service.resolve_mc_rates(reference)
    signal, idler = sample_events(rates, reference.p1_raw, mc.duration_s, seed)
    hist = build_histogram(signal, idler, detection.bin_width, (mc.histogram_min_ns * NS, mc.histogram_max_ns * NS))

    window = detection.peak_window(reference.fwhm_post_jitter)
    multiple = detection.accidental_window_multiple
    ratio, sigma = car_with_uncertainty(hist, window, multiple)
    estimated_fwhm = None
    try:
        estimated_fwhm = fwhm(estimate_p1(hist, window, multiple)) / NS
    except (InsufficientStatisticsError, ExtractionError) as exc:
        logger.warning(f"No P1 estimate from the simulated histogram: {exc}")

    summary = McSummary(
        seed=seed,
        duration_s=mc.duration_s,
        temperature_C=temperature_c,
        signal_rate_hz=rates.signal_rate,
        heralding_probability=rates.heralding_probability,
        background_idler_rate_hz=rates.background_idler_rate,
        jitter_fwhm_ps=rates.jitter_fwhm / PS,
        signal_events=len(signal),
        idler_events=len(idler),
        peak_window_ns=window / NS,
        car=_finite(ratio),
        car_sigma=sigma,
        car_predicted=_finite(predicted_car(reference.p1_convolved, rates, window)),
        pair_rate_hz=pair_rate(hist, mc.duration_s, window, accidental_multiple=multiple),
        pair_rate_corrected_hz=pair_rate(hist, mc.duration_s, window, detection, corrected=True,
                                         accidental_multiple=multiple),
        heralding_efficiency=heralding_efficiency(hist, len(signal), window, accidental_multiple=multiple)
        if len(signal) else 0.0,
        p1_fwhm_ns=estimated_fwhm,
    )

    write_events_text(signal, idler, output_file(args, "events.csv"))
    write_events_binary(signal, idler, output_file(args, "events.bin"))
    write_csv(pd.DataFrame({"tau_ns": hist.tau_centers / NS, "counts": hist.counts}), output_file(args, "histogram.csv"))
    write_json(summary.model_dump(), output_file(args, "mc_summary.json"))
    logger.info(
        f"CAR {ratio:.1f} +/- {sigma:.1f} (predicted {summary.car_predicted}), "
        f"{summary.pair_rate_hz:.3e} pairs/s"
    )
    return 0
