"""Import every problem module so that its certificate verifiers register."""

from . import (  # noqa: F401
    antipodal_paths,
    compressions,
    cube_turan,
    graph_intersect,
    no_three_in_line,
    one_factorizations,
    product_partitions,
    rado_modular,
    saturation_rainbow,
    shattering,
    torus_walks,
    two_families,
)
