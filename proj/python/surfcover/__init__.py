from ._surfcover import (
    DiskMap,
    Location,
    NumericalError,
    TriangleMesh,
    ValidationError,
    density_from_deformation,
    disk_difference,
    fan_disk,
    gaussian_bump_mesh,
    hemisphere_mesh,
    load_mesh,
    mesh_from_arrays,
    run_coverage,
    save_mesh,
    terrain_mesh,
    unit_disk_mesh,
)

__all__ = [
    "DiskMap",
    "Location",
    "NumericalError",
    "TriangleMesh",
    "ValidationError",
    "density_from_deformation",
    "disk_difference",
    "fan_disk",
    "gaussian_bump_mesh",
    "hemisphere_mesh",
    "load_mesh",
    "mesh_from_arrays",
    "run_coverage",
    "save_mesh",
    "terrain_mesh",
    "unit_disk_mesh",
]
