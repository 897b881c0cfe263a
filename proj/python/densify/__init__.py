# Copyright 2026 The densify Authors.
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
"""Deterministic guided LiDAR depth map completion.

Depth arrays are float64 in millimeters with 0 marking missing pixels;
guidance images are HxWx3 uint8.  See ``default_config()`` for every
tunable key.
"""

from ._core import (
    DensifyError,
    __version__,
    complete,
    default_config,
    evaluate,
    fit_plane_tls,
    median_fuse,
    read_depth_png,
    render_scene,
    slic_labels,
    suppress_misalignment,
    write_depth_png,
)

__all__ = [
    "DensifyError",
    "__version__",
    "complete",
    "default_config",
    "evaluate",
    "fit_plane_tls",
    "median_fuse",
    "read_depth_png",
    "render_scene",
    "slic_labels",
    "suppress_misalignment",
    "write_depth_png",
]
