# Copyright 2026 The ldpboost Authors
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

"""Privacy-preserving federated boosting toolkit."""

from _ldpboost import (
    BudgetExhausted,
    DomainError,
    FixedPointOverflow,
    WeakLearnerError,
    estimate_mean,
    eval_csv,
    perturb,
    run_cli,
    secure_sum,
    synth_csv,
    train_csv,
)

__all__ = [
    "BudgetExhausted",
    "DomainError",
    "FixedPointOverflow",
    "WeakLearnerError",
    "estimate_mean",
    "eval_csv",
    "perturb",
    "run_cli",
    "secure_sum",
    "synth_csv",
    "train_csv",
]
