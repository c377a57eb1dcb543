# Copyright 2026 The qrouter Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python interface to the qrouter simulator."""

import json

from ._qrouter import (
    QrouterError,
    QuantumRegister,
    bell_state_measurement,
    build_tables,
    find_seed,
    make_bell_pair,
    next_hop,
    quantum_state_recovery,
    run_cli,
    teleport,
    trace,
    validate_config,
)
from ._qrouter import simulate as _simulate

__all__ = [
    "QrouterError",
    "QuantumRegister",
    "bell_state_measurement",
    "build_tables",
    "find_seed",
    "make_bell_pair",
    "next_hop",
    "quantum_state_recovery",
    "run_cli",
    "simulate",
    "teleport",
    "trace",
    "validate_config",
]


def simulate(config, source, dest, state=None, seed=0):
    """Runs one flow and returns the run report as a dict.

    ``state`` is an ``(alpha, beta)`` pair; ``None`` draws a random state.
    """
    return json.loads(_simulate(config, source, dest, state, seed))
