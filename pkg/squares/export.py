"""CSV, JSON and PGM writers for squares and transversal masks."""
import csv
import json
from pathlib import Path

import numpy as np

from rules.errors import ContractViolation

from .grid import LatinSquareGrid
from .transversals import CoordSet


FORMATS = ('csv', 'json', 'pgm')


def grid_to_csv(grid: LatinSquareGrid) -> str:
    return '\n'.join(','.join(str(value) for value in row) for row in grid.rows())


def grid_to_dict(grid: LatinSquareGrid) -> dict:
    return {'order': grid.order, 'cells': [list(row) for row in grid.rows()]}


def grayscale(grid: LatinSquareGrid) -> np.ndarray:
    """Symbol k mapped linearly onto 0..255 (symbol 1 is black, N is white)."""
    span = max(grid.order - 1, 1)
    return ((grid.cells - 1) * 255 // span).astype(np.uint8)


def pgm_bytes(pixels: np.ndarray) -> bytes:
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n255\n".encode('ascii')
    return header + np.ascontiguousarray(pixels, dtype=np.uint8).tobytes()


def mask_array(coords: CoordSet, order: int) -> np.ndarray:
    mask = np.zeros((order, order), dtype=np.uint8)
    for row, column in coords:
        mask[row - 1, column - 1] = 1
    return mask


def mask_path(path: Path) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.mask{path.suffix}")


def write_grid(grid: LatinSquareGrid, path: Path, fmt: str) -> Path:
    path = Path(path)
    if fmt == 'csv':
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerows(grid.rows())
    elif fmt == 'json':
        path.write_text(json.dumps(grid_to_dict(grid)) + '\n')
    elif fmt == 'pgm':
        path.write_bytes(pgm_bytes(grayscale(grid)))
    else:
        raise ContractViolation(f"Unknown square format {fmt!r}; expected one of {', '.join(FORMATS)}.")
    return path


def write_mask(coords: CoordSet, order: int, path: Path, fmt: str) -> Path:
    """Write a 0/1 mask (0/255 for PGM) of ``coords`` next to a square file."""
    target = mask_path(path)
    mask = mask_array(coords, order)
    if fmt == 'csv':
        with open(target, 'w', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerows(mask.tolist())
    elif fmt == 'json':
        target.write_text(json.dumps({'order': order, 'mask': mask.tolist()}) + '\n')
    elif fmt == 'pgm':
        target.write_bytes(pgm_bytes(mask * 255))
    else:
        raise ContractViolation(f"Unknown square format {fmt!r}; expected one of {', '.join(FORMATS)}.")
    return target
