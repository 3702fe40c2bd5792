# Copyright 2026 The UNO Push Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Learned-model planar push manipulation."""

from unopush._unopush import (
    ConfigError,
    Control,
    ExperimentConfig,
    Pose2,
    RunLog,
    StepRecord,
    TransitionModels,
    builtin_shapes,
    circle_waypoints,
    control_distance,
    distance,
    learn_on_shape,
    load_config,
    mae_mm,
    parse_config,
    relative_motion,
    run_episode,
    wrap_angle,
)

__all__ = [
    "ConfigError",
    "Control",
    "ExperimentConfig",
    "Pose2",
    "RunLog",
    "StepRecord",
    "TransitionModels",
    "builtin_shapes",
    "circle_waypoints",
    "control_distance",
    "distance",
    "learn_on_shape",
    "load_config",
    "mae_mm",
    "parse_config",
    "relative_motion",
    "run_episode",
    "wrap_angle",
]
