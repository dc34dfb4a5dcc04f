"""Decompositions of complete graphs into planar subgraphs of prescribed girth."""

from .bounds import ThetaResult, ThetaStatus, max_planar_size, theta4_value, theta6_value, theta_lower_bound
from .construction import build_thickness_parts, decompose, split_case_6k, split_case_6k3
from .decomposition import Decomposition, VerifyReport, verify_decomposition
from .errors import (
    CertificateFormatError,
    ConstructionFailedError,
    GirthThicknessError,
    InvalidParameterError,
    UnsupportedOrderError,
)
from .factorization import block_factorize, factorize
from .graph import INFINITE, Graph, girth
from .planarity import is_planar
from .search import SearchProblem, SearchResult, SearchStats, SearchStatus, search_decomposition

__all__ = [
    "CertificateFormatError", "ConstructionFailedError", "Decomposition", "GirthThicknessError",
    "Graph", "INFINITE", "InvalidParameterError", "SearchProblem", "SearchResult", "SearchStats",
    "SearchStatus", "ThetaResult", "ThetaStatus", "UnsupportedOrderError", "VerifyReport",
    "block_factorize", "build_thickness_parts", "decompose", "factorize", "girth", "is_planar",
    "max_planar_size", "search_decomposition", "split_case_6k", "split_case_6k3",
    "theta4_value", "theta6_value", "theta_lower_bound", "verify_decomposition",
]
