from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .enum import Method, Metric


class SynthSpec(BaseModel):
    """Gaussian clusters, one per class.

    Clusters are isotropic with standard deviation ``sigma`` unless ``axis_sigma``
    is set, in which case the last coordinate axis uses ``axis_sigma`` instead.
    """

    model_config = ConfigDict(frozen=True)

    num_classes: int = Field(ge=2)
    dim: int = Field(ge=1)
    class_counts: List[int]
    means: Optional[List[List[float]]] = None
    radius: float = Field(default=4.0, gt=0)
    sigma: float = Field(default=0.3, ge=0)
    axis_sigma: Optional[float] = Field(default=None, ge=0)
    labeled_fraction: float = Field(default=0.1, gt=0, le=1)
    seed: int = Field(default=0, ge=0)

    @field_validator("class_counts")
    @classmethod
    def _counts_positive(cls, counts: List[int]) -> List[int]:
        if any(c < 1 for c in counts):
            raise ValueError("every class needs at least one point")
        return counts

    @model_validator(mode="after")
    def _check_shapes(self) -> "SynthSpec":
        if len(self.class_counts) != self.num_classes:
            raise ValueError(
                f"class_counts has {len(self.class_counts)} entries for {self.num_classes} classes"
            )
        if self.means is None:
            if self.dim < self.num_classes:
                raise ValueError("one-hot cluster means need dim >= num_classes")
            if self.axis_sigma is not None and self.dim <= self.num_classes:
                raise ValueError("elongated one-hot clusters need dim > num_classes")
        else:
            if len(self.means) != self.num_classes:
                raise ValueError("means needs one row per class")
            for mean in self.means:
                if len(mean) != self.dim:
                    raise ValueError(f"every mean must have dim={self.dim} entries")
                if self.sigma == 0 and not self.axis_sigma and all(v == 0 for v in mean):
                    raise ValueError("a zero mean with sigma=0 yields zero-norm embeddings")
        return self

    @property
    def imbalance_factor(self) -> float:
        return max(self.class_counts) / min(self.class_counts)


class RunConfig(BaseModel):
    """Resolved settings of one CLI invocation."""

    subcommand: str
    method: Method = Method.HDL
    k: Union[int, Literal["auto"]] = "auto"
    metric: Metric = Metric.Cosine
    labeled: Optional[Path] = None
    labels: Optional[Path] = None
    unlabeled: Optional[Path] = None
    out: Optional[Path] = None
    seed: int
    p: Optional[float] = Field(default=None, gt=0, le=1)
    e: Optional[float] = Field(default=None, ge=0, le=1)
    k_upper_limit: Optional[int] = Field(default=None, ge=2)
    sample_with_replacement: bool = True
    num_classes: Optional[int] = Field(default=None, ge=2)
    threads: int = Field(default=1, ge=1)

    @field_validator("k")
    @classmethod
    def _k_positive(cls, k):
        if isinstance(k, int) and k < 1:
            raise ValueError("--k must be a positive integer or 'auto'")
        return k

    @model_validator(mode="after")
    def _check_invariants(self) -> "RunConfig":
        if self.k == "auto" and None in (self.p, self.e, self.k_upper_limit):
            raise ValueError("--k auto requires --p, --e and --k-upper-limit")
        paths = [p.resolve() for p in (self.labeled, self.labels, self.unlabeled, self.out) if p is not None]
        if len(set(paths)) != len(paths):
            raise ValueError("input and output paths must all be distinct")
        return self
