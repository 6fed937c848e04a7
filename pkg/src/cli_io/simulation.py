############################################################################
### NucWave - CLASS Simulation
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------



# Standard library imports
import json
import logging
import os
import traceback
from typing import Optional, Sequence

# Local modules imports
from helper_functions import write_csv, write_plot_data
from cli_io.scenario import Scenario, ScenarioError, TOLERANCE_DEFAULTS
from cli_io.simulation_service import SimulationService
from cli_io.artifact_builder_classes import (
    ArtifactBuilder,
    PlotDataArtifactBuilder,
    TableArtifactBuilder,
)
from cli_io.artifact_builder_functions import (
    abfn_dyson_check,
    abfn_field2d,
    abfn_input_field,
    abfn_laguerre_vs_bessel,
    abfn_layouts,
    abfn_modes_table,
    abfn_onres_profile,
    abfn_parity_time,
    abfn_profiles,
    abfn_spectrum,
    abfn_strip_spectrum,
    abfn_strip_time,
    abfn_two_mode,
)



logger = logging.getLogger(__name__)



TOOL_NAME = 'nucwave'
TOOL_VERSION = '1.0.0'

# Top-level packages whose name prefixes wrapped error messages.
PACKAGES = ('materials', 'modes', 'nuclear', 'propagation', 'strips', 'cli_io')



class SimulationError(RuntimeError):
    pass






# --------------------------------------------------------------------------
# Builders per request kind
# --------------------------------------------------------------------------

def request_builders(kind: str) -> dict[str, ArtifactBuilder]:
    if kind == 'modes':
        return {
            'modes': TableArtifactBuilder(abfn=abfn_modes_table),
            'profiles': PlotDataArtifactBuilder(abfn=abfn_profiles),
            'two_mode': TableArtifactBuilder(abfn=abfn_two_mode),
        }
    if kind == 'bulk':
        return {
            'field2d': TableArtifactBuilder(abfn=abfn_field2d),
            'field2d_mean_mode': TableArtifactBuilder(abfn=abfn_field2d, mean_mode=True),
            'input_field': PlotDataArtifactBuilder(abfn=abfn_input_field),
            'spectrum': TableArtifactBuilder(abfn=abfn_spectrum),
            'dyson_check': TableArtifactBuilder(abfn=abfn_dyson_check),
        }
    if kind == 'strips':
        return {
            'layout': TableArtifactBuilder(abfn=abfn_layouts),
            'onres_profile': PlotDataArtifactBuilder(abfn=abfn_onres_profile),
            'time': TableArtifactBuilder(abfn=abfn_strip_time),
            'spectrum': TableArtifactBuilder(abfn=abfn_strip_spectrum),
        }
    if kind == 'sweep':
        return {
            'laguerre_vs_bessel': TableArtifactBuilder(abfn=abfn_laguerre_vs_bessel),
            'parity_time': TableArtifactBuilder(abfn=abfn_parity_time),
        }
    raise ValueError(f'Request kind {kind!r} not recognized.')






# --------------------------------------------------------------------------
# Simulation
# --------------------------------------------------------------------------

class Simulation:

    """
    Runs the artifact builders of a service and writes their outputs.

    Attributes:
    ----------
    files : list[str]
        Artifact file names written by the last run, sorted.
    """

    def __init__(self):
        self._files: list[str] = []

    @property
    def files(self) -> list[str]:
        return self._files

    def run(self, service: SimulationService) -> None:
        try:
            service.build_artifacts()
        except SimulationError:
            raise
        except Exception as error:
            raise SimulationError(qualified_message(error)) from error
        return None

    def write(self, service: SimulationService, path: str) -> list[str]:
        files = []
        for name, (df, extension) in service.artifacts.items():
            filename = f'{name}.{extension}'
            if extension == 'dat':
                write_plot_data(df, filename, path)
            else:
                write_csv(df, filename, path)
            files.append(filename)
        self._files = sorted(files)
        return self._files



def qualified_message(error: Exception) -> str:

    '''
    '[package] message' where package is the innermost library package in
    the traceback (or the module of the exception class).
    '''

    package = None
    for frame in reversed(traceback.extract_tb(error.__traceback__)):
        parts = os.path.normpath(frame.filename).split(os.sep)
        hits = [p for p in parts if p in PACKAGES]
        if hits:
            package = hits[-1]
            break
    if package is None:
        top = type(error).__module__.split('.')[0]
        package = top if top in PACKAGES else 'nucwave'
    if package == 'propagation':
        package = 'propagate'
    return f'[{package}] {type(error).__name__}: {error}'



def apply_tolerance_overrides(scenario: Scenario, overrides: Sequence[str]) -> Scenario:

    '''
    Applies 'KEY=VALUE' tolerance overrides (from the command line) to a
    scenario in place.
    '''

    for item in overrides or []:
        key, sep, value = item.partition('=')
        key = key.strip()
        if not sep or key not in TOLERANCE_DEFAULTS:
            raise ScenarioError(
                f'Bad tolerance override {item!r}; expected KEY=VALUE with KEY in {sorted(TOLERANCE_DEFAULTS)}.'
            )
        try:
            scenario.tolerances[key] = type(TOLERANCE_DEFAULTS[key])(float(value))
        except ValueError:
            raise ScenarioError(f'Tolerance {key}: cannot parse {value!r}.') from None
    return scenario



def manifest(service: SimulationService, files: Sequence[str]) -> dict:
    return {
        'tool': TOOL_NAME,
        'version': TOOL_VERSION,
        'kind': service.scenario.kind,
        'scenario_sha256': service.scenario.digest,
        'tolerances': service.tolerances_used(),
        'artifacts': sorted(files),
    }



def write_manifest(content: dict, path: str) -> str:
    os.makedirs(path, exist_ok=True)
    filename = os.path.join(path, 'manifest.json')
    with open(filename, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(content, f, indent=2, sort_keys=True)
        f.write('\n')
    return filename



def plot_artifacts(service: SimulationService, path: str) -> list[str]:

    '''
    Renders every plot data artifact as a PNG: the first column against all
    others.
    '''

    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    written = []
    for name, (df, extension) in service.artifacts.items():
        if extension != 'dat':
            continue
        fig, ax = plt.subplots(figsize=(8, 4.5))
        x = df.columns[0]
        for column in df.columns[1:]:
            ax.plot(df[x].to_numpy(), df[column].to_numpy(), label=column)
        ax.set_xlabel(x)
        ax.set_title(name)
        ax.legend(fontsize='small')
        ax.grid(True)
        filename = os.path.join(path, f'{name}.png')
        fig.savefig(filename, dpi=120)
        plt.close(fig)
        written.append(f'{name}.png')
    return written



def run(scenario: Scenario,
        path: str,
        kind: Optional[str] = None,
        threads: int = 1,
        quiet: bool = False,
        plot: bool = False) -> dict:

    '''
    Runs one request and writes its CSV/plot data artifacts and
    manifest.json into path.

    Returns:
    The manifest.
    '''

    if kind is not None:
        scenario = scenario.with_kind(kind)
    if scenario.kind is None:
        raise SimulationError("[cli_io] No request kind: set request.kind or pass a subcommand.")
    service = SimulationService(
        scenario=scenario,
        artifact_builders=request_builders(scenario.kind),
        settings={'threads': int(threads), 'quiet': bool(quiet)},
    )
    simulation = Simulation()
    simulation.run(service)
    files = simulation.write(service, path)
    if plot:
        files = sorted(files + plot_artifacts(service, path))
    content = manifest(service, files)
    write_manifest(content, path)
    logger.info('Wrote %d artifact(s) to %s', len(files), path)
    return content
