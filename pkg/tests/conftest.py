import pytest

from steamcycle.cycle import CycleSpec, solve_cycle
from steamcycle.sweep import default_pressures, run_sweep


@pytest.fixture(scope="session")
def base_spec():
    return CycleSpec()


@pytest.fixture(scope="session")
def base_result(base_spec):
    return solve_cycle(base_spec)


@pytest.fixture(scope="session")
def base_rows(base_spec):
    return run_sweep(base_spec, default_pressures())
