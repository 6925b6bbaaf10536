"""JSON interchange formats and CSV emission.

Measures travel as {"atoms": [{"theta": t, "mass": m}, ...]} with angles
in radians; they are re-sorted and re-validated on load.  Inner function
specs are tagged unions; Clark data extends the measure document.  CSV
output uses a header row, '.' decimal point, and scientific notation for
|x| < 1e-4.
"""
from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from .circle import AtomicMeasure
from .clark import ClarkData
from .inner import FiniteBlaschke, InnerFunction, Product, SingularAtomic


def measure_to_dict(m: AtomicMeasure) -> dict:
    return {"atoms": [{"theta": float(t), "mass": float(mass)}
                      for t, mass in zip(m.thetas, m.masses)]}


def measure_from_dict(d: dict) -> AtomicMeasure:
    atoms = d["atoms"]
    return AtomicMeasure([a["theta"] for a in atoms], [a["mass"] for a in atoms])


def inner_to_dict(u: InnerFunction) -> dict:
    if isinstance(u, FiniteBlaschke):
        out = {"type": "blaschke",
               "zeros": [{"re": w.real, "im": w.imag} for w in u.zeros],
               "constant": {"re": u.constant.real, "im": u.constant.imag}}
        if u.accumulation:
            out["accumulation"] = list(u.accumulation)
        return out
    if isinstance(u, SingularAtomic):
        return {"type": "singular",
                "atoms": [{"theta": t, "weight": w} for t, w in u.atoms]}
    return {"type": "product", "factors": [inner_to_dict(f) for f in u.factors]}


def inner_from_dict(d: dict) -> InnerFunction:
    kind = d["type"]
    if kind == "blaschke":
        c = d.get("constant", {"re": 1.0, "im": 0.0})
        return FiniteBlaschke(
            zeros=tuple(complex(z["re"], z["im"]) for z in d["zeros"]),
            constant=complex(c["re"], c["im"]),
            accumulation=tuple(d.get("accumulation", ())))
    if kind == "singular":
        return SingularAtomic(atoms=tuple((a["theta"], a["weight"])
                                          for a in d["atoms"]))
    if kind == "product":
        return Product(factors=tuple(inner_from_dict(f) for f in d["factors"]))
    raise ValueError(f"unknown inner function type {kind!r}")


def clark_to_dict(data: ClarkData) -> dict:
    out = measure_to_dict(data.measure)
    out["alpha"] = float(data.alpha)
    out["derivatives"] = [float(x) for x in data.derivatives]
    out["A"] = float(data.A)
    out["B"] = float(data.B)
    if data.edge_uncertain is not None:
        out["edge_uncertain"] = [bool(b) for b in data.edge_uncertain]
    return out


def clark_from_dict(d: dict) -> ClarkData:
    measure = measure_from_dict(d)
    data = ClarkData(alpha=d["alpha"], measure=measure,
                     derivatives=np.asarray(d["derivatives"], dtype=float),
                     A=d["A"], B=d["B"],
                     edge_uncertain=np.asarray(d.get("edge_uncertain",
                                                     [False] * measure.n_atoms)))
    return data


def to_jsonable(obj):
    """Recursively convert dataclasses / numpy objects for json.dump."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(to_jsonable(obj), indent=2) + "\n")


def load_json(path):
    return json.loads(Path(path).read_text())


def csv_number(x) -> str:
    """'.'-decimal formatting; scientific notation below 1e-4."""
    x = float(x)
    if x != 0.0 and abs(x) < 1e-4:
        return f"{x:.12e}"
    return repr(x)


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(csv_number(v) if isinstance(v, (int, float, np.floating))
                              and not isinstance(v, bool) else str(v)
                              for v in row))
    Path(path).write_text("\n".join(lines) + "\n")
