"""
CSV dump of a continuation trace
"""

import csv
import io
from typing import Dict, Optional


def trace_to_csv(continuation: Dict[str, any], path: Optional[str] = None) -> str:
    """
    One row per accepted step: zeta, |z| per tetrahedron, residual, mu

    Args:
        continuation: Trace dictionary, as produced by ContinuationTrace.to_dict
            or stored in a report
        path: Optional file to write

    Returns:
        CSV text
    """
    steps = continuation.get('steps', [])
    count = len(steps[0]['abs_values']) if steps else 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['zeta'] + [f"abs_z{t}" for t in range(count)] + ['residual', 'mu_re', 'mu_im'])
    for step in steps:
        writer.writerow(
            [f"{step['zeta']:.6e}"]
            + [f"{v:.12e}" for v in step['abs_values']]
            + [f"{step['residual']:.3e}", f"{step['mu']['re']:.12f}", f"{step['mu']['im']:.12f}"]
        )
    text = buffer.getvalue()
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    return text
