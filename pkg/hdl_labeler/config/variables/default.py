from .base import BaseConfig

DEFAULT_CONFIG: BaseConfig = {
    "METHOD": "hdl",
    "METRIC": "cosine",
    "K": "auto",
    # Adaptive k: sample fraction, assumed label-error rate, exclusive upper bound on k
    "P": 0.1,
    "E": 0.15,
    "K_UPPER_LIMIT": 20,
    "SAMPLE_WITH_REPLACEMENT": True,
    "THREADS": 1,
    "CHUNK_SIZE": 256,
    "LOG_LEVEL": "INFO",
    "SYNTH_RADIUS": 4.0,
    "SYNTH_SIGMA": 0.3,
    "MU_K_MAX": 10,
}
