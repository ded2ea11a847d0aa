"""Shortest paths, clusterings, and almost-exact diameters on intersection
graphs of planar objects with small union complexity."""

from .errors import (
    DegenerateOverlap,
    DegeneracyDetected,
    Disconnected,
    GenerationFailed,
    NotConnected,
    UnionPathError,
)
from .geometry import (
    Arc,
    GeneratorSpec,
    GeomObject,
    Instance,
    arc_intersections,
    chain_instance,
    generate_instance,
    instance_from_dict,
    instance_to_dict,
    iso_instance,
    load_instance,
    make_disk,
    make_polygon,
    nest_instance,
    object_contains_point,
    objects_intersect,
    pair_instance,
    save_instance,
    triangle_instance,
    validate_general_position,
)
from .numeric import EPS, GAP, Point

__version__ = "0.1.0"
