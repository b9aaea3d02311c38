/*
 *   Copyright (c) 2026, The edgegap authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */
#pragma once

namespace edgegap {

/// Execution policy for the data-parallel kernels.  `Serial` is the
/// reference path kept for testing; `Parallel` distributes independent
/// iterations over OpenMP threads.  Both produce identical results.
enum class Exec { Serial, Parallel };

/// Reads EDGEGAP_THREADS (if set and positive) and caps the OpenMP team
/// size accordingly.  Returns the resulting maximum thread count.
int configure_threads_from_env();

int max_threads();

}  // namespace edgegap
