"""JSON state/decomposition files and the scan CSV.

Complex arrays are stored as separate ``re`` and ``im`` nested lists. Floats
are written with Python's shortest round-trip representation, so every
double survives a write/read cycle bit for bit.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from sepspec.decomposer import DecompositionCertificate, ProductTerm, SeparableDecomposition
from sepspec.exceptions import DimensionError, ValidationError
from sepspec.states import BipartiteDensityMatrix

SCAN_HEADER = ("t", "h", "f_selected", "f_lo", "f_hi", "degenerate")


def complex_to_dict(arr) -> dict:
    arr = np.asarray(arr, dtype=complex)
    return {"re": arr.real.tolist(), "im": arr.imag.tolist()}


def complex_from_dict(obj, what: str = "array") -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed {what}: needs numeric 're' and 'im' arrays ({exc})") from exc
    if re.shape != im.shape:
        raise ValidationError(f"malformed {what}: 're' shape {re.shape} differs from 'im' shape {im.shape}")
    return re + 1j * im


def state_to_dict(rho: BipartiteDensityMatrix) -> dict:
    return {"m": rho.dim_a, "n": rho.dim_b, "matrix": complex_to_dict(rho.matrix)}


def state_from_dict(obj: dict) -> BipartiteDensityMatrix:
    """Parse and validate a state file object ``{"m", "n", "matrix": {"re", "im"}}``."""
    try:
        m, n = int(obj["m"]), int(obj["n"])
        raw = obj["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state file: needs integer 'm', 'n' and a 'matrix' ({exc})") from exc
    mat = complex_from_dict(raw, "state matrix")
    if mat.shape != (m * n, m * n):
        raise DimensionError(f"state matrix has shape {mat.shape}, expected ({m * n}, {m * n})")
    return BipartiteDensityMatrix(mat, m, n)


def _term_to_dict(term: ProductTerm) -> dict:
    return {
        "weight": float(term.weight),
        "qubit": complex_to_dict(term.qubit_state),
        "qudit": complex_to_dict(term.qudit_state),
    }


def decomposition_to_dict(
    d: SeparableDecomposition, certificate: DecompositionCertificate | None = None
) -> dict:
    meta = {"reconstruction_error": float(d.reconstruction_error), "t_star": None, "inequality_margin": None}
    if certificate is not None:
        meta["t_star"] = float(certificate.t_star)
        meta["inequality_margin"] = float(certificate.inequality_margin)
    return {"terms": [_term_to_dict(term) for term in d.terms], "meta": meta}


def decomposition_from_dict(obj: dict) -> tuple[SeparableDecomposition, dict]:
    """Parse a decomposition file; returns the decomposition and its ``meta`` block."""
    try:
        raw_terms = obj["terms"]
        meta = dict(obj.get("meta", {}))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"malformed decomposition file: needs a 'terms' list ({exc})") from exc
    terms = []
    for k, raw in enumerate(raw_terms):
        try:
            weight = float(raw["weight"])
            qubit = complex_from_dict(raw["qubit"], f"term {k} qubit")
            qudit = complex_from_dict(raw["qudit"], f"term {k} qudit")
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed decomposition term {k}: {exc}") from exc
        if qubit.ndim != 1 or qudit.ndim != 1:
            raise ValidationError(f"term {k}: qubit and qudit entries must be 1-D")
        terms.append(ProductTerm(weight, qubit, qudit))
    if not terms:
        raise ValidationError("decomposition file has no terms")
    return SeparableDecomposition(terms, float(meta.get("reconstruction_error") or 0.0)), meta


def unitary_to_dict(u: np.ndarray, dims: tuple[int, int], min_pt_eigenvalue: float) -> dict:
    """Witness file: same layout as a state file, plus the PT eigenvalue it achieves."""
    return {
        "m": dims[0],
        "n": dims[1],
        "kind": "unitary",
        "matrix": complex_to_dict(u),
        "min_pt_eigenvalue": float(min_pt_eigenvalue),
    }


def dump_json(obj, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc


def read_state(path: str | Path) -> BipartiteDensityMatrix:
    return state_from_dict(load_json(path))


def write_state(rho: BipartiteDensityMatrix, path: str | Path) -> None:
    dump_json(state_to_dict(rho), path)


def read_decomposition(path: str | Path) -> tuple[SeparableDecomposition, dict]:
    return decomposition_from_dict(load_json(path))


def write_decomposition(
    d: SeparableDecomposition, path: str | Path, certificate: DecompositionCertificate | None = None
) -> None:
    dump_json(decomposition_to_dict(d, certificate), path)


def write_scan_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SCAN_HEADER)
    for t, h, f_sel, f_lo, f_hi, degenerate in rows:
        writer.writerow([repr(t), repr(h), repr(f_sel), repr(f_lo), repr(f_hi), "true" if degenerate else "false"])


def read_scan_csv(stream) -> list[dict]:
    reader = csv.DictReader(stream)
    rows = []
    for row in reader:
        rows.append(
            {
                **{key: float(row[key]) for key in SCAN_HEADER[:-1]},
                "degenerate": row["degenerate"] == "true",
            }
        )
    return rows
