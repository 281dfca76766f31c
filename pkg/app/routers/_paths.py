from pathlib import Path


def output_file(args, name: str) -> Path:
    return Path(args.out) / name
