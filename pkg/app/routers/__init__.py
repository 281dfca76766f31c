"""One module per command, each exposing register(subparsers) and run(args, config)."""
from app.routers import distance_scan, fit_mu, mc, sweep, table1, waveform

COMMANDS = [waveform, sweep, table1, fit_mu, mc, distance_scan]
