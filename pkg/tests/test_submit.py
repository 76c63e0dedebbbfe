# -*- coding: utf-8 -*-
import time

import pytest

import inflab
from inflab.submit import SweepController, SweepControllerSettings


def _slow_square(k):
    time.sleep(0.002 * (5 - k % 5))
    return k * k


@pytest.mark.parametrize("settings", [SweepControllerSettings(max_workers=4),
                                      SweepControllerSettings(sequential=True),
                                      SweepControllerSettings(max_workers=1)])
def test_map_keeps_input_order(settings):
    controller = SweepController(settings)
    assert controller.map(_slow_square, range(20)) == [k * k for k in range(20)]
    assert controller.finished == 20
    assert controller.map(_slow_square, []) == []


def test_map_propagates_case_errors():
    def fail_on_three(k):
        if k == 3:
            raise ValueError("case 3")
        return k

    with pytest.raises(ValueError, match="case 3"):
        SweepController(SweepControllerSettings(max_workers=2)).map(fail_on_three, range(6))


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(inflab.submit.THREADS_ENV_VAR, "3")
    assert inflab.submit.default_max_workers() == 3
    assert SweepController().max_workers == 3
    assert SweepController(SweepControllerSettings(max_workers=2)).max_workers == 2
    monkeypatch.delenv(inflab.submit.THREADS_ENV_VAR)
    assert inflab.submit.default_max_workers() >= 1


@pytest.mark.parametrize("value", ["zero", "0", "-2"])
def test_threads_environment_errors(monkeypatch, value):
    monkeypatch.setenv(inflab.submit.THREADS_ENV_VAR, value)
    with pytest.raises(ValueError, match=inflab.submit.THREADS_ENV_VAR):
        inflab.submit.default_max_workers()
