"""Shared fixtures: the example batteries and cached battery results."""

import pytest

from skewdg.linalg import Mat

# Example matrices per resolution subcase.  Item (8) of the first family in
# the source listing, [[1,-1,0],[1,1,1],[1,-1,1]], has determinant 2 and is
# genuinely rank 3, so it cannot lie in any rank-2 subcase; it is kept
# separately as an erratum regression below.
CASE_1_1 = [
    [[1, 0, 1], [1, 1, 1], [1, 0, 1]],
    [[0, 1, 0], [1, 0, 1], [1, 1, 1]],
    [[1, 0, 1], [0, 1, 0], [1, 1, 1]],
    [[1, 0, 1], [0, 1, 1], [1, 0, 1]],
    [[1, 1, 1], [0, 1, 0], [1, 1, 1]],
    [[0, 1, 0], [1, 1, 1], [0, 1, 0]],
    [[1, 0, 1], [0, 1, 0], [1, 0, 1]],
    [[1, 1, 1], [-1, 1, 1], [-1, 1, 1]],
]
ERRATUM_1_1 = [[1, -1, 0], [1, 1, 1], [1, -1, 1]]

CASE_1_2_1 = [
    [[1, 1, 0], [1, 0, 1], [1, 1, 0]],
    [[1, 1, 1], [0, 0, 1], [0, 0, 0]],
    [[1, 0, 0], [1, 0, 1], [1, 0, 0]],
    [[0, 0, 1], [0, 1, 0], [0, 0, 0]],
    [[0, 1, 0], [0, 0, 0], [1, 0, 1]],
    [[1, 1, 0], [0, 0, 0], [1, 0, 0]],
]
CASE_1_2_2 = [
    [[1, 1, 1], [1, 0, 1], [1, 1, 1]],
    [[0, 1, 0], [1, 0, 1], [0, 1, 0]],
    [[0, 1, 1], [1, 0, 0], [1, 0, 0]],
]
CASE_1_2_3 = [
    [[1, 1, 1], [0, 0, 0], [1, 0, 1]],
]
CASE_1_2_4 = [
    [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    [[0, 1, 1], [0, 0, 1], [0, 0, 0]],
]
CASE_1_3_1 = [
    [[1, 0, 1], [1, 1, 1], [0, 1, 0]],
    [[1, 0, 0], [0, 0, 1], [1, 0, 0]],
    [[1, 1, 1], [0, 1, 1], [1, 0, 0]],
]
CASE_1_3_2 = [
    [[1, 1, 0], [1, 1, 0], [0, 1, 0]],
    [[1, 0, 1], [0, 0, 1], [1, 0, 1]],
    [[1, 0, 1], [1, 0, 0], [1, 0, 1]],
    [[1, 0, 1], [-1, 0, -2], [1, 0, 1]],
]

SUBCASE_BATTERY = {
    "1.1": CASE_1_1,
    "1.2.1": CASE_1_2_1,
    "1.2.2": CASE_1_2_2,
    "1.2.3": CASE_1_2_3,
    "1.2.4": CASE_1_2_4,
    "1.3.1": CASE_1_3_1,
    "1.3.2": CASE_1_3_2,
}
SUBCASE_SIZE = {"1.1": 3, "1.2.1": 4, "1.2.2": 5, "1.2.3": 6, "1.2.4": 8,
                "1.3.1": 4, "1.3.2": 6}
SUBCASE_EXT = {"1.1": 3, "1.2.1": 4, "1.2.2": 5, "1.2.3": 6, "1.2.4": 8,
               "1.3.1": 4, "1.3.2": 6}

NOT_CY = [
    [[1, 1, 0], [1, 1, 0], [1, 1, 0]],
    [[0, 1, 1], [0, 1, 1], [0, 1, 1]],
    [[1, 1, 1], [1, 1, 1], [2, 2, 2]],
]


@pytest.fixture(scope="session")
def subcase_resolutions():
    """Built + verified resolutions and Ext data for the whole subcase
    battery; computed once because verification is the expensive step."""
    import time

    from skewdg.dg import DgSpec
    from skewdg.finalg import frobenius, recognize_truncated, socle_dim
    from skewdg.resolution import build_resolution, ext_algebra, verify_resolution

    start = time.time()
    results = {}
    for sub, mats in SUBCASE_BATTERY.items():
        for entry in mats:
            m = Mat(entry)
            res = build_resolution(m)
            check = verify_resolution(DgSpec(m), res, dmax=5)
            ext = ext_algebra(res)
            results[str(entry)] = {
                "subcase": sub,
                "resolution": res,
                "verified": check,
                "ext": ext,
                "ext_dim": ext.dim,
                "truncated": recognize_truncated(ext),
                "socle": socle_dim(ext),
                "frobenius": frobenius(ext),
            }
    results["_elapsed"] = time.time() - start
    return results


@pytest.fixture(scope="session")
def representative_resolutions():
    """Resolutions and Ext data for the six rank-1 equality representatives."""
    from skewdg.finalg import frobenius, recognize_truncated, socle_dim
    from skewdg.resolution import (SIX_REPRESENTATIVES, build_resolution, ext_algebra,
                                   verify_resolution)

    results = {}
    for name, m in SIX_REPRESENTATIVES.items():
        res = build_resolution(m)
        check = verify_resolution(res.spec, res, dmax=5)
        ext = ext_algebra(res)
        results[name] = {
            "resolution": res,
            "verified": check,
            "ext": ext,
            "socle": socle_dim(ext),
            "frobenius": frobenius(ext),
            "truncated": recognize_truncated(ext),
        }
    return results
