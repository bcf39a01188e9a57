"""Concrete geometries as paired Chow/cohomology models."""
from .base import ConfigError, CurveConfig, FormalSpace, K3Config, VarietyModel, default_transcendental, k3_config
from .checks import (CheckEntry, CheckReport, hilb3_direct_check, incidence_pushforward_check,
                     injectivity_check, normal_bundle_chern_check, normal_bundle_chern_classes,
                     point_class_not_in_dh4_check, product_dimension_check, small_diagonal_relation_check,
                     transcendental_separation_check)
from .hilbert import (CubeData, DiagonalSquare, IncidenceData, blown_up_square, diagonal_class,
                      hilbert_square, s_curly2, s_hilb2, s_power, s_times_hilb2, surface_cube,
                      surface_square, surface_times_hilbert_square)
from .surfaces import k3_blown_at_point, k3_chow, k3_coh, k3_model, p3_blown_along_curve, point_model

__all__ = [n for n in dir() if not n.startswith("_")]
