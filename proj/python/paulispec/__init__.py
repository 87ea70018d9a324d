# Copyright 2026 The paulispec Authors
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

from ._core import (
    CircuitSpec,
    NoisePlacement,
    __version__,
    circuit_fidelity,
    contract_brickwork,
    dropped_weight,
    evolve,
    fit_kappa,
    global_haar_moment,
    gram_matrix,
    haar_moment,
    moment_mu,
    moment_nu,
    noisy_weingarten,
    opt_density,
    ose,
    rmpu_moment_asymptotic,
    rmpu_moment_exact,
    scaling_predictions,
    simulability_bound,
    weingarten_matrix,
)

__all__ = [
    "CircuitSpec",
    "NoisePlacement",
    "__version__",
    "circuit_fidelity",
    "contract_brickwork",
    "dropped_weight",
    "evolve",
    "fit_kappa",
    "global_haar_moment",
    "gram_matrix",
    "haar_moment",
    "moment_mu",
    "moment_nu",
    "noisy_weingarten",
    "opt_density",
    "ose",
    "rmpu_moment_asymptotic",
    "rmpu_moment_exact",
    "scaling_predictions",
    "simulability_bound",
    "weingarten_matrix",
]
