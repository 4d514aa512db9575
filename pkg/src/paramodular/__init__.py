"""Exact verification toolkit for a paramodular lift of a Bianchi newform.

Bianchi eigenvalue tables, genus-2 curves over Q and over an imaginary
quadratic field, spinor Euler factors of the lift, and a mod-2 residual
comparison in the style of Faltings-Serre.
"""

from .arith import IntPoly, class_number_imag_quad, kronecker, poly_disc
from .bianchi import BianchiNewform, load_newform, load_newform_file, q_poly
from .curves import CurveK, CurveQ, LPoly, count_points, load_curve, load_curve_file, lpoly_from_counts, reduce_curve
from .errors import InputError, ParamodularError
from .faltings_serre import FSReport, S3Class, SexticField, fs_verify
from .invariants import IgusaClebsch, curve_discriminant, humbert_point, igusa_clebsch, wp_equivalent
from .lift import arakawa_eigen, paramodular_level, spinor_factor
from .quadratic import ImagQuadField, PrimeOfK, RmElement, parse_ideal_tag, splitting

__version__ = "0.1.0"
