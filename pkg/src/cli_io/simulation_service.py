############################################################################
### NucWave - CLASS SimulationService
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------



# Standard library imports
import logging
from typing import Optional

# Third party imports
import numpy as np
import pandas as pd

# Local modules imports
from cli_io.scenario import Scenario
from cli_io.artifact_builder_classes import ArtifactBuilder
from modes.dispersion import RootSearchSpecification
from modes.layer_stack import LayerStack
from modes.mode_set import ModeSet, ModeSolver, TwoModeParams
from nuclear.response import ResponseModel
from propagation.dyson import DysonSpecification
from propagation.effective_system import EffectiveSystem
from propagation.time_domain import FFTSpecification



logger = logging.getLogger(__name__)




class SimulationService():
    """
    Holds the scenario, the lazily solved physics objects and the artifacts
    produced by the builders of one run.

    Attributes:
    ----------
    scenario : Scenario
        The validated input.
    artifact_builders : dict[str, ArtifactBuilder]
        Builders keyed by artifact name, called in order.
    settings : dict
        Run settings ('threads', 'quiet', ...).
    artifacts : dict[str, tuple[pd.DataFrame, str]]
        Produced tables with their file extension.
    """
    def __init__(self,
                 scenario: Scenario,
                 artifact_builders: dict[str, ArtifactBuilder],
                 settings: Optional[dict] = None,
                 **kwargs) -> None:
        self.scenario = scenario
        self.artifact_builders = artifact_builders
        self.settings = settings if settings is not None else {}
        self.settings.update(kwargs)
        self.artifacts: dict[str, tuple[pd.DataFrame, str]] = {}
        self._stack = None
        self._mode_set = None
        self._system = None
        self._specs_used: dict[str, dict] = {}

    @property
    def scenario(self):
        return self._scenario

    @scenario.setter
    def scenario(self, value):
        if not isinstance(value, Scenario):
            raise TypeError("Expected a Scenario instance for 'scenario'")
        self._scenario = value

    @property
    def artifact_builders(self):
        return self._artifact_builders

    @artifact_builders.setter
    def artifact_builders(self, value):
        if not isinstance(value, dict) or not all(
            isinstance(v, ArtifactBuilder) for v in value.values()
        ):
            raise TypeError(
                "Expected a dictionary containing ArtifactBuilder instances "
                "for 'artifact_builders'"
            )
        self._artifact_builders = value

    @property
    def settings(self):
        return self._settings

    @settings.setter
    def settings(self, value):
        if not isinstance(value, dict):
            raise TypeError("Expected a dictionary for 'settings'")
        self._settings = value

    # Specifications built from the scenario tolerances. Each one is
    # recorded so the manifest lists only what the run consulted.

    def root_spec(self) -> RootSearchSpecification:
        spec = RootSearchSpecification(
            tol_root=self.scenario.tolerances['root'],
            threads=self.settings.get('threads', 1),
        )
        self._specs_used['root'] = dict(spec)
        return spec

    def dyson_spec(self) -> DysonSpecification:
        spec = DysonSpecification(
            tol=self.scenario.tolerances['dyson'],
            n_max=self.scenario.tolerances['dyson_n_max'],
        )
        self._specs_used['dyson'] = dict(spec)
        return spec

    def fft_spec(self) -> FFTSpecification:
        spec = FFTSpecification(
            span=self.scenario.tolerances['fft_span'],
            spacing=self.scenario.tolerances['fft_spacing'],
            subtract_orders=self.scenario.tolerances['fft_orders'],
        )
        self._specs_used['fft'] = dict(spec)
        return spec

    def tolerances_used(self) -> dict:
        return {key: dict(value) for key, value in self._specs_used.items()}

    # Lazily solved objects.

    @property
    def stack(self) -> LayerStack:
        if self._stack is None:
            self._stack = self.scenario.build_stack()
        return self._stack

    @property
    def mode_set(self) -> ModeSet:
        if self._mode_set is None:
            solver = ModeSolver(spec=self.root_spec())
            solver.solve(self.stack, overlap_region=self.scenario.request['overlap_region'])
            self._mode_set = solver.mode_set
            if not self.settings.get('quiet'):
                logger.info('Solved %d guided mode(s)', len(self._mode_set))
        return self._mode_set

    def selected_modes(self) -> list[int]:
        selection = self.scenario.request.get('modes')
        n = len(self.mode_set)
        if selection is None:
            return list(range(n))
        bad = [i for i in selection if i >= n]
        if bad:
            raise ValueError(f'Mode indices {bad} out of range; {n} guided mode(s) found.')
        return list(selection)

    @property
    def system(self) -> EffectiveSystem:
        if self._system is None:
            species = self.scenario.species
            self._system = EffectiveSystem.from_mode_set(
                self.mode_set, species, ResponseModel(species), modes=self.selected_modes(),
            )
        return self._system

    def two_mode(self) -> TwoModeParams:
        selection = self.scenario.request.get('modes')
        if selection is not None and len(selection) == 2:
            return self.mode_set.two_mode(*selection)
        return self.mode_set.two_mode()

    # Artifacts.

    def add_artifact(self, name: str, df: pd.DataFrame, extension: str = 'csv') -> None:
        if not isinstance(df, pd.DataFrame):
            raise TypeError(f"Artifact {name!r} must be a DataFrame")
        self.artifacts[name] = (df, extension)

    def build_artifacts(self) -> None:
        for key, builder in self.artifact_builders.items():
            builder.arguments['item_name'] = key
            if not self.settings.get('quiet'):
                logger.info('Building artifact %s', key)
            builder(self)
        return None
