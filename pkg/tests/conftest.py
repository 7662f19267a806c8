import math

import pytest

from biphoton import crystal as cr
from biphoton.optics import PumpSpec


@pytest.fixture(scope="session")
def pump():
    return PumpSpec(532e-9)


@pytest.fixture(scope="session")
def collinear_2mm(pump):
    probe = cr.CrystalSpec(2e-3, math.radians(30))
    return probe.with_cut_angle(cr.collinear_cut_angle(pump, probe))
