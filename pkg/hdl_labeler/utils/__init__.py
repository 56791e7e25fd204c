from .enum import ImbalanceType, Method, Metric
from .logger import get_formatted_logger
from .workers import WorkerPool

__all__ = ["ImbalanceType", "Method", "Metric", "WorkerPool", "get_formatted_logger"]
