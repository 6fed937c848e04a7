############################################################################
### NucWave - CLASS LayerStack
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from typing import Optional, Sequence

# Third party imports
import numpy as np
import pandas as pd
from scipy import constants

# Local modules imports
from materials.optical_data import MaterialOpticalData, index_offset_at





HBAR_C_EV_M = constants.hbar * constants.c / constants.e



class LayerStackError(ValueError):
    pass



class Layer:

    '''
    A homogeneous medium with refractive index n = 1 + offset.

    The index is stored as its deviation from unity so that x-ray indices
    (|n - 1| ~ 1e-6) keep full relative precision. Claddings are layers
    without thickness.
    '''

    def __init__(self,
                 offset: complex,
                 thickness: Optional[float] = None,
                 name: str = '',
                 resonant: bool = False) -> None:
        self._offset = complex(offset)
        if thickness is not None:
            thickness = float(thickness)
            if not np.isfinite(thickness) or thickness <= 0:
                raise LayerStackError(f'Layer {name!r}: thickness must be > 0, got {thickness}.')
        self._thickness = thickness
        self._name = name
        self._resonant = bool(resonant)
        if self._offset.imag < 0:
            raise LayerStackError(f'Layer {name!r}: Im(n) < 0 describes gain, not a passive medium.')

    @classmethod
    def from_index(cls, index: complex, thickness: Optional[float] = None, **kwargs) -> 'Layer':
        return cls(offset=complex(index) - 1.0, thickness=thickness, **kwargs)

    @classmethod
    def from_material(cls,
                      material: MaterialOpticalData,
                      energy: float,
                      thickness: Optional[float] = None,
                      resonant: bool = False) -> 'Layer':
        return cls(
            offset=index_offset_at(material, energy),
            thickness=thickness,
            name=material.name,
            resonant=resonant,
        )

    @property
    def offset(self) -> complex:
        return self._offset

    @property
    def index(self) -> complex:
        return 1.0 + self._offset

    @property
    def thickness(self) -> Optional[float]:
        return self._thickness

    @property
    def name(self) -> str:
        return self._name

    @property
    def resonant(self) -> bool:
        return self._resonant

    def __repr__(self) -> str:
        d = 'inf' if self._thickness is None else f'{self._thickness:.4g} m'
        flag = ', resonant' if self._resonant else ''
        return f'Layer({self._name!r}, n-1={self._offset:.4g}, {d}{flag})'



class LayerStack:

    """
    Planar stack of homogeneous layers between two semi-infinite claddings.

    The z-origin is the interface between the top cladding and the first
    finite layer; z increases into the stack.

    Attributes:
    ----------
    top : Layer
        Top cladding (z < 0).
    layers : list[Layer]
        Finite layers, in order of increasing z.
    bottom : Layer
        Bottom cladding (z > total thickness).
    k0 : float
        Vacuum wavenumber in 1/m.
    """

    def __init__(self,
                 top: Layer,
                 layers: Sequence[Layer],
                 bottom: Layer,
                 k0: float) -> None:
        self.top = top
        self.bottom = bottom
        self.layers = layers
        self.k0 = k0

    @classmethod
    def from_materials(cls,
                       top: MaterialOpticalData,
                       layers: Sequence[tuple],
                       bottom: MaterialOpticalData,
                       energy: float) -> 'LayerStack':

        '''
        Builds a stack at a photon energy (eV).

        Parameters:
        layers: Sequence of (material, thickness) or (material, thickness, resonant).
        '''

        built = []
        for item in layers:
            material, thickness = item[0], item[1]
            resonant = bool(item[2]) if len(item) > 2 else False
            built.append(Layer.from_material(material, energy, thickness, resonant=resonant))
        return cls(
            top=Layer.from_material(top, energy),
            layers=built,
            bottom=Layer.from_material(bottom, energy),
            k0=wavenumber_from_energy(energy),
        )

    @property
    def top(self) -> Layer:
        return self._top

    @top.setter
    def top(self, value: Layer) -> None:
        if not isinstance(value, Layer):
            raise TypeError("Expected a Layer instance for 'top'")
        self._top = value

    @property
    def bottom(self) -> Layer:
        return self._bottom

    @bottom.setter
    def bottom(self, value: Layer) -> None:
        if not isinstance(value, Layer):
            raise TypeError("Expected a Layer instance for 'bottom'")
        self._bottom = value

    @property
    def layers(self) -> tuple[Layer, ...]:
        return self._layers

    @layers.setter
    def layers(self, value: Sequence[Layer]) -> None:
        value = tuple(value)
        if not all(isinstance(layer, Layer) for layer in value):
            raise TypeError("Expected a sequence of Layer instances for 'layers'")
        if any(layer.thickness is None for layer in value):
            raise LayerStackError('Every finite layer needs a thickness.')
        if sum(layer.resonant for layer in value) > 1:
            raise LayerStackError('At most one layer may be marked resonant.')
        self._layers = value

    @property
    def k0(self) -> float:
        return self._k0

    @k0.setter
    def k0(self, value: float) -> None:
        value = float(value)
        if not np.isfinite(value) or value <= 0:
            raise LayerStackError(f'k0 must be positive, got {value}.')
        self._k0 = value

    @property
    def thicknesses(self) -> np.ndarray:
        return np.array([layer.thickness for layer in self._layers], dtype=float)

    @property
    def interfaces(self) -> np.ndarray:
        '''z positions of all interfaces, starting with 0.'''
        return np.concatenate([[0.0], np.cumsum(self.thicknesses)])

    @property
    def total_thickness(self) -> float:
        return float(np.sum(self.thicknesses))

    @property
    def offsets(self) -> np.ndarray:
        '''n - 1 for top cladding, finite layers and bottom cladding.'''
        return np.array(
            [self._top.offset] + [layer.offset for layer in self._layers] + [self._bottom.offset],
            dtype=complex,
        )

    @property
    def resonant_index(self) -> Optional[int]:
        for i, layer in enumerate(self._layers):
            if layer.resonant:
                return i
        return None

    @property
    def z0(self) -> float:
        '''Centre of the resonant layer (centre of the stack if none is marked).'''
        i = self.resonant_index
        if i is None:
            return 0.5 * self.total_thickness
        z = self.interfaces
        return 0.5 * (z[i] + z[i + 1])

    @property
    def L(self) -> float:
        i = self.resonant_index
        if i is None:
            raise LayerStackError('No resonant layer marked.')
        return float(self._layers[i].thickness)

    @property
    def energy(self) -> float:
        '''Photon energy in eV.'''
        return self._k0 * HBAR_C_EV_M

    def guided_window(self) -> tuple[float, float]:

        '''
        Re(q - k0) range of guided modes: between the larger cladding light
        line and the largest core light line. Empty when right <= left.
        '''

        clad = max(self._top.offset.real, self._bottom.offset.real)
        if len(self._layers) == 0:
            return clad * self._k0, clad * self._k0
        core = max(layer.offset.real for layer in self._layers)
        return clad * self._k0, core * self._k0

    def describe(self) -> pd.DataFrame:
        z = self.interfaces
        rows = [{'name': self._top.name, 'z_start': -np.inf, 'z_end': 0.0,
                 'delta': -self._top.offset.real, 'beta': self._top.offset.imag,
                 'resonant': False}]
        for i, layer in enumerate(self._layers):
            rows.append({'name': layer.name, 'z_start': z[i], 'z_end': z[i + 1],
                         'delta': -layer.offset.real, 'beta': layer.offset.imag,
                         'resonant': layer.resonant})
        rows.append({'name': self._bottom.name, 'z_start': z[-1], 'z_end': np.inf,
                     'delta': -self._bottom.offset.real, 'beta': self._bottom.offset.imag,
                     'resonant': False})
        return pd.DataFrame(rows)

    def __repr__(self) -> str:
        inner = '/'.join(
            f'{layer.name or "?"}({layer.thickness * 1e9:.4g} nm)' for layer in self._layers
        )
        return f'LayerStack({self._top.name or "?"}(inf)/{inner}/{self._bottom.name or "?"}(inf))'






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def wavenumber_from_energy(energy: float) -> float:
    '''Vacuum wavenumber (1/m) of a photon energy in eV.'''
    return float(energy) / HBAR_C_EV_M



def symmetric_slab(core_offset: complex,
                   cladding_offset: complex,
                   thickness: float,
                   k0: float) -> LayerStack:
    cladding = Layer(cladding_offset, name='cladding')
    core = Layer(core_offset, thickness=thickness, name='core')
    return LayerStack(top=cladding, layers=[core], bottom=Layer(cladding_offset, name='cladding'), k0=k0)
