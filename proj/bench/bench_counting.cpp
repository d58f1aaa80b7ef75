/*
   Copyright 2026 the medgenus authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Compares the parallel point-counting kernel against the serial reference on
// identical batches and reports throughput plus a correctness cross-check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "medgenus/counting.hpp"

using namespace medgenus;

namespace {

Poly random_separable(const FieldSpec& k, int deg, std::mt19937_64& rng) {
    for (;;) {
        std::vector<uint64_t> c(deg + 1);
        for (int i = 0; i < deg; ++i) c[i] = rng() % k.q();
        c[deg] = 1 + rng() % (k.q() - 1);
        Poly f(k, std::move(c));
        if (is_separable(f)) return f;
    }
}

double seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    std::mt19937_64 rng(2026);
    struct Case {
        uint64_t p;
        unsigned n;
        size_t batch;
    };
    for (const Case& c : {Case{101, 1, 20000}, Case{1009, 1, 5000}, Case{3, 5, 5000}}) {
        const FieldSpec& k = FieldSpec::get(c.p, c.n);
        k.enable_tables();
        std::vector<Poly> batch;
        batch.reserve(c.batch);
        for (size_t i = 0; i < c.batch; ++i)
            batch.push_back(random_separable(k, 5 + int(i % 2), rng));

        std::vector<int64_t> serial, parallel;
        double ts = seconds([&] { serial = count_points_many_serial(k, batch); });
        double tp = seconds([&] { parallel = count_points_many(k, batch); });
        bool ok = serial == parallel;
        std::printf("q=%-6llu batch=%-6zu serial %8.1f curves/s   parallel %8.1f curves/s   "
                    "speedup %.2fx   %s\n",
                    static_cast<unsigned long long>(k.q()), c.batch, c.batch / ts, c.batch / tp,
                    ts / tp, ok ? "results match" : "RESULTS DIFFER");
        if (!ok) return 1;
    }
    return 0;
}
