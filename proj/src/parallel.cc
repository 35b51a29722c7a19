// Copyright 2026 The ugame Authors
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

#include "ugame/parallel.h"

#include <cstdlib>
#include <string>

namespace ugame {

int resolve_workers(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char *env = std::getenv("UGAME_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap > 0) {
                n = std::min(n, cap);
            }
        } catch (const std::exception &) {
            // Unparseable cap: ignore it.
        }
    }
    return n;
}

}  // namespace ugame
