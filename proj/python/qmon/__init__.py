# Copyright 2026 The qmon Authors
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

"""Preservation of encoded information under random single-qubit measurements."""

from ._core import (
    Code,
    ConfigError,
    ContractViolation,
    InvalidParameter,
    IoError,
    Monitor,
    UndefinedInput,
    UnsupportedOperation,
    Verdict,
    choi_preserved,
    code_from_json,
    flow,
    haar_code_purity,
    level_map,
    make_code,
    predicted_purity_approx,
    predicted_purity_exact,
    run_config,
    validate,
    y_classify,
    y_commutant_dimension,
    y_destroy_upper_bound,
    y_line_rank,
)

__all__ = [
    "Code",
    "ConfigError",
    "ContractViolation",
    "InvalidParameter",
    "IoError",
    "Monitor",
    "UndefinedInput",
    "UnsupportedOperation",
    "Verdict",
    "choi_preserved",
    "code_from_json",
    "flow",
    "haar_code_purity",
    "level_map",
    "make_code",
    "predicted_purity_approx",
    "predicted_purity_exact",
    "run_config",
    "validate",
    "y_classify",
    "y_commutant_dimension",
    "y_destroy_upper_bound",
    "y_line_rank",
]
