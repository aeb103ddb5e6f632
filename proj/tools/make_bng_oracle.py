#!/usr/bin/env python3
"""Generate the British National Grid projection oracle fixture.

Drives the system PROJ library (libproj) directly via ctypes so the fixture
does not depend on pyproj being installed. The transformation is pinned to
the grid-free 7-parameter Helmert between WGS84 and OSGB36 followed by the
EPSG:27700 transverse Mercator, so results are reproducible on any machine
with the same parameters regardless of which datum grids happen to be
installed.

Output: tests/data/bng_oracle_points.csv with columns lon,lat,easting,northing.
"""

import ctypes
import ctypes.util
import random
from pathlib import Path

PIPELINE = (
    b"+proj=pipeline "
    b"+step +proj=unitconvert +xy_in=deg +xy_out=rad "
    b"+step +proj=push +v_3 "
    b"+step +proj=cart +ellps=WGS84 "
    b"+step +proj=helmert +x=-446.448 +y=125.157 +z=-542.060 "
    b"+rx=-0.1502 +ry=-0.2470 +rz=-0.8421 +s=20.4894 +convention=position_vector "
    b"+step +inv +proj=cart +ellps=airy "
    b"+step +proj=pop +v_3 "
    b"+step +proj=tmerc +lat_0=49 +lon_0=-2 +k=0.9996012717 "
    b"+x_0=400000 +y_0=-100000 +ellps=airy"
)

# Wales bounding box, WGS84 degrees.
LON_MIN, LON_MAX = -5.3, -2.7
LAT_MIN, LAT_MAX = 51.35, 53.43

SEED = 27700
NUM_POINTS = 100


class PjCoord(ctypes.Structure):
    _fields_ = [("v", ctypes.c_double * 4)]


def load_proj():
    name = ctypes.util.find_library("proj") or "libproj.so.22"
    lib = ctypes.CDLL(name)
    lib.proj_context_create.restype = ctypes.c_void_p
    lib.proj_create.restype = ctypes.c_void_p
    lib.proj_create.argtypes = [ctypes.c_void_p, ctypes.c_char_p]
    lib.proj_trans.restype = PjCoord
    lib.proj_trans.argtypes = [ctypes.c_void_p, ctypes.c_int, PjCoord]
    return lib


def main():
    lib = load_proj()
    ctx = lib.proj_context_create()
    pj = lib.proj_create(ctx, PIPELINE)
    if not pj:
        raise RuntimeError("failed to create PROJ pipeline")

    rng = random.Random(SEED)
    rows = []
    for _ in range(NUM_POINTS):
        lon = rng.uniform(LON_MIN, LON_MAX)
        lat = rng.uniform(LAT_MIN, LAT_MAX)
        c = PjCoord()
        c.v[0], c.v[1] = lon, lat
        r = lib.proj_trans(pj, 1, c)
        rows.append((lon, lat, r.v[0], r.v[1]))

    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "bng_oracle_points.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as f:
        f.write("lon,lat,easting,northing\n")
        for lon, lat, e, n in rows:
            f.write(f"{lon!r},{lat!r},{e!r},{n!r}\n")
    print(f"wrote {len(rows)} points to {out}")


if __name__ == "__main__":
    main()
