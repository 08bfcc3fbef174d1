"""Nilpotent orbit centralizers in Chevalley Lie algebras over Z and F_p.

Modules:
    rootsys   root systems, coweights, Levi subsets
    chevalley Chevalley basis, structure constants, ad matrices
    exactla   exact linear algebra over Z and F_p (rank, kernels, SNF, Jordan)
    catalog   orbit catalogs (representatives, Dynkin diagrams, Gamma data)
    classify  centralizers, derived subalgebras, reachability, Panyushev
    sheets    induction and sheet arithmetic, Gamma identification, rigidity
    report    CSV and text rendering
    cli       command-line interface
"""

from .catalog import OrbitCatalog, OrbitRecord, load_catalog, load_default_catalog
from .chevalley import ChevalleyAlgebra, build_algebra
from .classify import ClassificationReport, classify_all, classify_record
from .rootsys import RootSystem, build_root_system

__all__ = [
    "ChevalleyAlgebra",
    "ClassificationReport",
    "OrbitCatalog",
    "OrbitRecord",
    "RootSystem",
    "build_algebra",
    "build_root_system",
    "classify_all",
    "classify_record",
    "load_catalog",
    "load_default_catalog",
]
