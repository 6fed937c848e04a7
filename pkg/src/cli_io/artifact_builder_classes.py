############################################################################
### NucWave - ARTIFACT BUILDER CLASSES
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------



# Standard library imports
from abc import ABC, abstractmethod
from typing import Any

# Third party imports
import pandas as pd





class ArtifactBuilder(ABC):
    '''
    Base class for building simulation artifacts.

    # Arguments
    kwargs: Keyword arguments that fill the 'arguments' attribute. The
        builder function is passed as 'abfn'.
    '''

    extension = 'csv'

    def __init__(self, **kwargs):
        self._arguments = {}
        self._arguments.update(kwargs)

    @property
    def arguments(self) -> dict[str, Any]:
        return self._arguments

    @arguments.setter
    def arguments(self, value: dict[str, Any]) -> None:
        self._arguments = value

    def _builder_fn(self):
        fn = self.arguments.get('abfn')
        if fn is None or not callable(fn):
            raise ValueError('abfn is not defined or not callable.')
        return fn

    @abstractmethod
    def __call__(self, service) -> None:
        raise NotImplementedError("Method '__call__' must be implemented in derived class.")



class TableArtifactBuilder(ArtifactBuilder):
    '''
    Callable class for artifacts written as CSV tables with a header row.
    '''

    extension = 'csv'

    def __call__(self, service) -> None:
        fn = self._builder_fn()
        item_name = self.arguments.get('item_name')
        value = fn(service=service, **self.arguments)
        if isinstance(value, pd.DataFrame):
            service.add_artifact(item_name, value, self.extension)
        else:
            # Builders may emit several named tables.
            for suffix, df in value.items():
                service.add_artifact(f'{item_name}_{suffix}', df, self.extension)
        return None



class PlotDataArtifactBuilder(TableArtifactBuilder):
    '''
    Callable class for whitespace separated plot data files.
    '''

    extension = 'dat'
