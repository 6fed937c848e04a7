############################################################################
### NucWave - COMMAND LINE INTERFACE
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import argparse
import logging
import sys
from typing import Optional, Sequence

# Local modules imports
from cli_io.scenario import REQUEST_KINDS, ScenarioError, load_scenario
from cli_io.simulation import (
    SimulationError,
    TOOL_NAME,
    TOOL_VERSION,
    apply_tolerance_overrides,
    run,
)



logger = logging.getLogger(__name__)



SUBCOMMAND_HELP = {
    'modes': 'solve the guided modes and two-mode parameters of the stack',
    'bulk': 'space-time field of a uniform resonant layer',
    'strips': 'constructive/destructive micro-strip layouts',
    'sweep': 'strip-count and observation-phase sweeps',
}



def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description='Nuclear resonant scattering in multimode X-ray waveguides.',
    )
    parser.add_argument('--version', action='version', version=f'{TOOL_NAME} {TOOL_VERSION}')
    subparsers = parser.add_subparsers(dest='kind', required=True)
    for kind in REQUEST_KINDS:
        sub = subparsers.add_parser(kind, help=SUBCOMMAND_HELP[kind])
        sub.add_argument('--config', required=True, help='scenario file (TOML)')
        sub.add_argument('--out', required=True, help='output directory')
        sub.add_argument('--threads', type=int, default=1, help='worker threads for grid evaluation')
        sub.add_argument('--tolerance', action='append', default=[], metavar='KEY=VALUE',
                         help='override a tolerance (repeatable)')
        sub.add_argument('--plot', action='store_true', help='also render PNG plots')
        verbosity = sub.add_mutually_exclusive_group()
        verbosity.add_argument('--quiet', action='store_true')
        verbosity.add_argument('--verbose', action='store_true')
    return parser



def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.quiet else (logging.DEBUG if args.verbose else logging.INFO)
    logging.basicConfig(level=level, format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    if args.threads < 1:
        logger.error('--threads must be >= 1')
        return 2
    try:
        scenario = load_scenario(args.config)
        apply_tolerance_overrides(scenario, args.tolerance)
        run(scenario, args.out, kind=args.kind, threads=args.threads,
            quiet=args.quiet, plot=args.plot)
    except (ScenarioError, OSError) as error:
        logger.error('[cli_io] %s', error)
        return 2
    except SimulationError as error:
        logger.error('%s', error)
        return 1
    return 0



if __name__ == '__main__':
    sys.exit(main())
