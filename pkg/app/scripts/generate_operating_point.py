#!/usr/bin/env python3
"""
Print the Monte Carlo rates that reach a target detected pair rate and CAR.

The idler background is solved from the analytic CAR of the jitter-convolved
P1 at the chosen temperature. Paste the result into the [mc] block with
mode = "rates" to pin the operating point.

Usage:
  python -m app.scripts.generate_operating_point --temp 95 --pair-rate 1e6 --car 200
"""

import argparse

from app.models.units import PS, celsius_to_kelvin
from app.models.service_classes.SweepService import SweepService
from app.services.coincidence_service import operating_point
from app.services.config_service import parse_config


def main():
    parser = argparse.ArgumentParser(description="Solve Monte Carlo rates for a target operating point")
    parser.add_argument("--config", help="TOML run configuration; built-in defaults when omitted")
    parser.add_argument("--temp", type=float, default=95.0, help="Cell temperature in °C")
    parser.add_argument("--pair-rate", type=float, default=1e6, help="Detected pairs per second")
    parser.add_argument("--car", type=float, default=200.0, help="Target coincidence-to-accidental ratio")
    parser.add_argument("--heralding", type=float, default=0.22, help="Heralding probability per signal")
    args = parser.parse_args()

    config = parse_config(args.config)
    service = SweepService(config)
    reference = service.waveform(celsius_to_kelvin(args.temp))
    window = service.detection.peak_window(reference.fwhm_post_jitter)
    rates = operating_point(args.pair_rate, args.car, args.heralding, reference.p1_convolved, window,
                            config.mc_jitter_fwhm())

    print(f"\n=== Operating point at {args.temp:g} °C ===")
    print(f"P1 FWHM (with jitter): {reference.fwhm_post_jitter * 1e9:.3f} ns, CAR window {window * 1e9:.3f} ns")
    print("\n[mc]")
    print('mode = "rates"')
    print(f"temperature_c = {args.temp}")
    print(f"signal_rate_hz = {rates.signal_rate:.6e}")
    print(f"heralding_probability = {rates.heralding_probability}")
    print(f"background_idler_rate_hz = {rates.background_idler_rate:.6e}")
    print(f"jitter_fwhm_ps = {rates.jitter_fwhm / PS:g}")


if __name__ == "__main__":
    main()
