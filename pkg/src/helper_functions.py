############################################################################
### NucWave - HELPER FUNCTIONS
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import os
import hashlib
from typing import Optional, Union, Iterable

# Third party imports
import numpy as np
import pandas as pd





CSV_FLOAT_FORMAT = '%.17g'



def complex_columns(name: str, values: Union[np.ndarray, Iterable[complex]]) -> dict[str, np.ndarray]:

    '''
    Splits a complex series into the 're_<name>' and 'im_<name>' columns
    used by every CSV artifact.
    '''

    values = np.asarray(values, dtype=complex)
    return {f're_{name}': values.real, f'im_{name}': values.imag}



def field_frame(coordinates: dict[str, np.ndarray],
                field: np.ndarray,
                name: str = 'B') -> pd.DataFrame:

    '''
    Long-format table of a complex field with its squared modulus.
    Coordinate arrays must already be broadcast to the shape of 'field'.
    '''

    field = np.asarray(field, dtype=complex).ravel()
    columns = {key: np.asarray(value).ravel() for key, value in coordinates.items()}
    columns.update(complex_columns(name, field))
    columns[f'abs2_{name}'] = np.abs(field) ** 2
    return pd.DataFrame(columns)



def write_csv(df: pd.DataFrame,
              filename: str,
              path: Optional[str] = None) -> str:

    '''
    Writes a table with the fixed formatting used for all artifacts:
    17 significant digits, '.' decimal separator and '\\n' line endings.
    '''

    if path is not None:
        os.makedirs(path, exist_ok=True)
        filename = os.path.join(path, filename)
    df.to_csv(
        filename,
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator='\n',
        encoding='utf-8',
    )
    return filename



def write_plot_data(df: pd.DataFrame,
                    filename: str,
                    path: Optional[str] = None) -> str:

    '''
    Whitespace separated columns with a '#' commented header line,
    readable by gnuplot and numpy.loadtxt alike.
    '''

    if path is not None:
        os.makedirs(path, exist_ok=True)
        filename = os.path.join(path, filename)
    body = df.to_csv(
        sep=' ',
        index=False,
        header=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator='\n',
    )
    with open(filename, 'w', encoding='utf-8', newline='\n') as f:
        f.write('# ' + ' '.join(str(c) for c in df.columns) + '\n')
        f.write(body)
    return filename



def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()



def relative_l2_error(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    denom = np.linalg.norm(b)
    if denom == 0:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a - b) / denom)
