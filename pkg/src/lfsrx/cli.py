"""Command-line interface: ``lfsrx generate | analyze | presets``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bitio
from .errors import ConfigError, LfsrxError, UsageError
from .extractors import Extractor, GeneratorSpec, LfsrGenerator, full_period_stream
from .lfsr import DEFAULT_TAPS, LfsrConfig, Mode
from .fips import SAMPLE_BITS, fips_report
from .report import FIGURES, PRESETS, atomic_write_bytes, build_report, generator_info, write_outputs

log = logging.getLogger("lfsrx")

CORES = {"slfsr": Mode.STANDARD, "elfsr": Mode.EXTENDED}
EXTRACTORS = {"vn": Extractor.VON_NEUMANN, "3be": Extractor.THREE_BIT, "run": Extractor.RUN_TRIPLET,
              "runlen": Extractor.RUN_LENGTH}


def _taps(text: str) -> frozenset:
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tap list {text!r}") from None


def _seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid hex seed {text!r}") from None


def _figures(text: str) -> list[int]:
    if text.strip().lower() == "all":
        return list(FIGURES)
    try:
        return [int(f) for f in text.split(",") if f.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid figure list {text!r}") from None


def _core_name(value: str) -> str:
    # accept slfsr16 / elfsr16 as well as the bare names
    base = value.rstrip("0123456789")
    if base not in CORES:
        raise argparse.ArgumentTypeError(f"core must be slfsr or elfsr, got {value!r}")
    return value


def _add_generator_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("generator")
    g.add_argument("--preset", choices=sorted(PRESETS), help="one of the three reference generators")
    g.add_argument("--core", type=_core_name, help="slfsr (standard) or elfsr (extended); a width suffix is allowed")
    g.add_argument("--width", type=int, help="register length n (default 16)")
    g.add_argument("--taps", type=_taps, help="comma-separated feedback positions, must include n")
    g.add_argument("--seed", type=_seed, help="initial register as hex, FF1 = least significant bit")
    g.add_argument("--extractor", choices=sorted(EXTRACTORS), help="translation logic")
    length = p.add_mutually_exclusive_group()
    length.add_argument("--count", type=int, help="number of valid output bits")
    length.add_argument("--full-period", action="store_true", help="exactly one output period")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lfsrx", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit valid output bits")
    _add_generator_args(gen)
    gen.add_argument("--format", choices=bitio.FORMATS, default="ascii")
    gen.add_argument("--out", type=Path, help="output file (default standard output)")

    ana = sub.add_parser("analyze", help="run the statistical characterization")
    _add_generator_args(ana)
    ana.add_argument("--input", type=Path, help="analyze a stored bit stream instead of a generator")
    ana.add_argument("--format", choices=("auto",) + bitio.FORMATS, default="auto", help="input file format")
    ana.add_argument("--fips", action="store_true", help="FIPS 140-1 tests on the first 20000 bits")
    ana.add_argument("--figures", type=_figures, help="comma-separated figure numbers 7..13, or 'all'")
    ana.add_argument("--stride", type=int, default=64, help="complexity profile sampling interval")
    ana.add_argument("--out", type=Path, help="directory for report.json and figure CSVs")

    sub.add_parser("presets", help="list the reference generators")
    return parser


def resolve_spec(args) -> tuple[GeneratorSpec, str | None]:
    """Build the generator spec from a preset and/or explicit flags."""
    if args.preset:
        preset = PRESETS[args.preset]
        if args.core or args.width or args.taps or args.extractor:
            raise UsageError("--preset cannot be combined with --core/--width/--taps/--extractor")
        return preset.spec(args.seed), preset.name
    if not args.core or not args.extractor:
        raise UsageError("give --preset, or both --core and --extractor")
    base = args.core.rstrip("0123456789")
    suffix = args.core[len(base):]
    width = args.width or (int(suffix) if suffix else 16)
    if suffix and args.width and int(suffix) != args.width:
        raise ConfigError(f"--core {args.core} conflicts with --width {args.width}")
    taps = args.taps
    if taps is None:
        if width != 16:
            raise ConfigError("--taps is required for widths other than 16")
        taps = DEFAULT_TAPS
    mode = CORES[base]
    core = LfsrConfig(width, taps, mode)
    seed = args.seed if args.seed is not None else (0 if core.extended else 1)
    return GeneratorSpec(core, EXTRACTORS[args.extractor], seed), None


def _generator(spec: GeneratorSpec) -> LfsrGenerator:
    return LfsrGenerator(
        width=spec.core.length,
        taps=tuple(sorted(spec.core.taps)),
        mode=spec.core.mode.value,
        extractor=spec.extractor.value,
        seed=spec.seed,
    )


def cmd_generate(args) -> int:
    spec, _ = resolve_spec(args)
    if args.full_period:
        bits = full_period_stream(spec)[0].valid_bits
    else:
        count = args.count if args.count is not None else 20000
        if count < 0:
            raise UsageError("--count must be non-negative")
        bits = _generator(spec).generate(count)
    data = bitio.encode(bits, args.format)
    if args.out:
        atomic_write_bytes(args.out, data)
        log.info("wrote %d bits to %s", bits.size, args.out)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def cmd_analyze(args) -> int:
    stream = None
    if args.input:
        if args.preset or args.core or args.extractor:
            raise UsageError("--input cannot be combined with generator options")
        bits = bitio.decode(args.input.read_bytes(), args.format, args.count)
        generator = generator_info(None, source=str(args.input))
    else:
        spec, preset = resolve_spec(args)
        generator = generator_info(spec, preset)
        if args.full_period:
            stream, _ = full_period_stream(spec)
            bits = stream.valid_bits
        else:
            count = args.count if args.count is not None else 20000
            bits = _generator(spec).generate(count)
    fips = args.fips
    figures = args.figures
    if figures is None:
        figures = list(FIGURES) if args.full_period and not fips else []
        if stream is None and args.input:
            figures = [f for f in figures if f != 13]
        if not figures and not fips:
            fips = True
    log.info("analyzing %d bits (figures=%s, fips=%s)", bits.size, figures, fips)
    report, series = build_report(
        bits,
        stream=stream,
        full_period=args.full_period,
        fips=fips,
        figures=figures,
        generator=generator,
        stride=args.stride,
    )
    if args.out:
        for path in write_outputs(args.out, report, series):
            log.info("wrote %s", path)
    else:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if report["fips"] is not None:
        for line in fips_report(bits[:SAMPLE_BITS]).lines():
            print(line, file=sys.stderr)
        if not report["fips"]["passed"]:
            return 1
    return 0


def cmd_presets(args) -> int:
    for preset in PRESETS.values():
        print(preset.line())
    return 0


COMMANDS = {"generate": cmd_generate, "analyze": cmd_analyze, "presets": cmd_presets}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="lfsrx: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except LfsrxError as exc:
        print(f"lfsrx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"lfsrx: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
