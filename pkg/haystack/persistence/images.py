"""
Sparsity-map export: CSV of raw pooled values or plain PGM (P2).
"""

import csv

from haystack.analysis.sparsity import to_levels
from haystack.core.constants import PGM_MAXVAL
from haystack.utils import format_float


def write_map_csv(filepath, smap):
    """One CSV row per pooled row group, one column per input coordinate."""
    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        for row in smap:
            writer.writerow([format_float(v) for v in row])


def write_pgm(filepath, smap, maxval=PGM_MAXVAL):
    """
    Write a plain-text grayscale PGM; width is the input dimension.

    Values are rescaled linearly so the map maximum becomes maxval.
    """
    levels = to_levels(smap, maxval)
    rows, cols = levels.shape
    lines = ['P2', f'{cols} {rows}', str(maxval)]
    lines.extend(' '.join(str(int(v)) for v in row) for row in levels)
    with open(filepath, 'w') as f:
        f.write('\n'.join(lines) + '\n')


def write_map(filepath, smap):
    """Dispatch on extension: .pgm writes an image, anything else CSV."""
    if str(filepath).lower().endswith('.pgm'):
        write_pgm(filepath, smap)
    else:
        write_map_csv(filepath, smap)
