"""Multi-descriptor nearest-class-mean forest classifier."""

from .forest import (
    DegenerateDataError,
    DescriptorSample,
    Forest,
    ForestParams,
    ShapeMismatchError,
    nearest_class_mean,
    predict,
    train,
)

__all__ = [
    "DegenerateDataError",
    "DescriptorSample",
    "Forest",
    "ForestParams",
    "ShapeMismatchError",
    "nearest_class_mean",
    "predict",
    "train",
]
