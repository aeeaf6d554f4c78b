"""Numeric tolerances and enumeration caps shared by every module.

The defaults can be changed at runtime by mutating :data:`settings`; the
``SCHEMELAB_CAP`` environment variable overrides every enumeration cap at
import time.
"""

import os
from dataclasses import dataclass


@dataclass
class Settings:
    group_cap: int = 10**7
    translation_cap: int = 10**7
    relation_cap: int = 10**5
    projector_cap: int = 4096
    matrix_cap: int = 10**4
    graphical_full_cap: int = 10**4
    graphical_samples: int = 10**4

    root_tol: float = 1e-9
    eigen_tol: float = 1e-6
    collision_tol: float = 1e-7
    projector_tol: float = 1e-8
    design_tol: float = 1e-7
    occupied_tol: float = 1e-12
    distance_tol: float = 1e-9
    pivot_tol: float = 1e-9

    eigen_retries: int = 20
    pivot_budget: int = 10**5
    seed: int = 42


def _from_env() -> Settings:
    s = Settings()
    cap = os.environ.get("SCHEMELAB_CAP")
    if cap:
        value = int(float(cap))
        s.group_cap = s.translation_cap = s.relation_cap = value
    return s


settings = _from_env()
