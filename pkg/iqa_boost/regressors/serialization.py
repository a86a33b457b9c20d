"""
Versioned JSON persistence for trained models.

Floats are written with 17 significant digits, so a saved model reloads to
bit-identical parameters.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..models import NNModel, SVRModel, Standardization, TargetScaling
from ..utils.json_io import read_json, write_json

logger = logging.getLogger(__name__)

MODEL_FORMAT = "iqa-boost-model"
MODEL_VERSION = 1

Model = Union[NNModel, SVRModel]


def _scaling_to_dict(model: Model) -> Dict[str, Any]:
    return {
        "input_mean": model.input_standardization.mean,
        "input_std": model.input_standardization.std,
        "target_mean": model.target_scaling.mean,
        "target_std": model.target_scaling.std,
    }


def model_to_dict(model: Model) -> Dict[str, Any]:
    header = {"format": MODEL_FORMAT, "version": MODEL_VERSION}
    if isinstance(model, NNModel):
        return {
            **header,
            "kind": "nn",
            "input_dim": model.input_dim,
            "hidden_dim": model.hidden_dim,
            "W1": model.W1,
            "b1": model.b1,
            "W2": model.W2,
            "b2": model.b2,
            **_scaling_to_dict(model),
        }
    if isinstance(model, SVRModel):
        return {
            **header,
            "kind": "svr",
            "input_dim": model.input_dim,
            "w": model.w,
            "b": model.b,
            "C": model.C,
            "epsilon": model.epsilon,
            "kkt_violation": model.kkt_violation,
            "support_vectors": model.support_vectors,
            **_scaling_to_dict(model),
        }
    raise TypeError(f"Cannot serialize {type(model).__name__}")


def model_from_dict(data: Dict[str, Any]) -> Model:
    if data.get("format") != MODEL_FORMAT:
        raise ValueError(f"Not a model file (format {data.get('format')!r})")
    if data.get("version") != MODEL_VERSION:
        raise ValueError(f"Unsupported model version {data.get('version')!r}")

    standardization = Standardization(np.array(data["input_mean"]), np.array(data["input_std"]))
    scaling = TargetScaling(float(data["target_mean"]), float(data["target_std"]))
    kind = data.get("kind")
    if kind == "nn":
        return NNModel(
            W1=np.array(data["W1"], dtype=np.float64).reshape(data["hidden_dim"], data["input_dim"]),
            b1=np.array(data["b1"]),
            W2=np.array(data["W2"]),
            b2=float(data["b2"]),
            input_standardization=standardization,
            target_scaling=scaling,
        )
    if kind == "svr":
        return SVRModel(
            w=np.array(data["w"]),
            b=float(data["b"]),
            C=float(data["C"]),
            epsilon=float(data["epsilon"]),
            input_standardization=standardization,
            target_scaling=scaling,
            kkt_violation=float(data.get("kkt_violation", 0.0)),
            support_vectors=int(data.get("support_vectors", 0)),
        )
    raise ValueError(f"Unknown model kind {kind!r}")


def save_model(model: Model, path: Path) -> None:
    write_json(model_to_dict(model), path)
    logger.info("Saved %s model to %s", type(model).__name__, path)


def load_model(path: Path) -> Model:
    return model_from_dict(read_json(path))
