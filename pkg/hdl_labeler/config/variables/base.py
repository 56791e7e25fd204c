from typing import Union
from typing_extensions import TypedDict


class BaseConfig(TypedDict):
    METHOD: str
    METRIC: str
    K: Union[int, str]
    P: float
    E: float
    K_UPPER_LIMIT: int
    SAMPLE_WITH_REPLACEMENT: bool
    THREADS: int
    CHUNK_SIZE: int
    LOG_LEVEL: str
    SYNTH_RADIUS: float
    SYNTH_SIGMA: float
    MU_K_MAX: int
