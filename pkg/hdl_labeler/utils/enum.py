from enum import Enum


class Method(Enum):
    HDL = "hdl"
    KnnDV = "knn-dv"


class Metric(Enum):
    Cosine = "cosine"
    Euclidean = "euclidean"


class ImbalanceType(Enum):
    """Per-class count profiles for long-tailed synthetic sets"""
    Exp = "exp"
    Step = "step"
    Balanced = "none"
