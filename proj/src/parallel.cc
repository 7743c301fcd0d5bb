// Copyright 2026 The qmon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmon/parallel.h"

namespace qmon {

namespace {
std::atomic<size_t> g_default_threads{1};
}

size_t default_threads() {
    return g_default_threads.load();
}

void set_default_threads(size_t threads) {
    g_default_threads.store(threads == 0 ? 1 : threads);
}

}  // namespace qmon
