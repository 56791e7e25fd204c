from .knn import NeighborList, UnionIndex, build_union_index

__all__ = ["NeighborList", "UnionIndex", "build_union_index"]
