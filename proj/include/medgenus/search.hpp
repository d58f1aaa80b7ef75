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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "medgenus/counting.hpp"
#include "medgenus/genus2.hpp"

namespace medgenus {

/// One quadratic subcover of an emitted cover, with its audited numbers.
struct SubcoverInfo {
    Poly poly;
    unsigned genus = 0;
    int64_t count = 0;
    int64_t defect = 0;
};

/// A found curve: the (Z/2Z)^m cover named by its defining polynomials,
/// decomposed into quadratic subcovers, with the Kani-Rosen totals.
struct CoverRecord {
    const FieldSpec* field = nullptr;
    unsigned genus = 0;
    std::string tag; // G4.SCAN, G5.EXH, G5.MATCH, G6.EXH, G6.SUBFIELD,
                     // G6.STREAM, G6.ORDER3, G7.CHAIN, G7.LAMBDA
    std::vector<Poly> polys;              // f_1..f_m, m in {2, 3}
    std::vector<SubcoverInfo> subcovers;  // 2^m - 1, ordered by subset bitmask
    int64_t total_count = 0;
    int64_t total_defect = 0;
    bool complete = false;
};

/// Builds a fully populated record from the defining polynomials (counts,
/// genera, defects, totals all computed here).
CoverRecord make_record(const std::string& tag, const CoverSpec& D, bool complete);

/// Recomputes every stored quantity: subcover polynomials (square reduction of
/// the subset products), genera, counts, defects, the Kani-Rosen totals, and
/// for m = 2, q <= 512 the direct fiberwise count.  True iff everything
/// matches; on failure *diagnostic names the first mismatch.
bool verify_record(const CoverRecord& r, std::string* diagnostic = nullptr);

struct SearchOptions {
    int64_t defect_limit = -1; // initial budget; -1 means g * floor(2 sqrt q)
    bool to_completion = false;
    bool emit_all = false;     // emit every candidate under the budget, not
                               // only strict improvements
    uint64_t seed = 0;         // reserved for sampling backends; recorded only
};

struct StrategyResult {
    int64_t best_defect = -1; // -1: nothing found under the budget
    bool complete = false;
    size_t emitted = 0;
};

using RecordSink = std::function<void(const CoverRecord&)>;

// The individual strategies.  Every emitted record passes verify_record
// (asserted at emission); emitted totals are strictly decreasing unless
// emit_all is set.
StrategyResult genus4_scan(const FieldSpec&, const SearchOptions&, const RecordSink&);
StrategyResult genus5_exhaustive(const FieldSpec&, const SearchOptions&, const RecordSink&);
StrategyResult genus5_match(const FieldSpec&, const SearchOptions&, const RecordSink&);
enum class FrameMode { FULL, SUBFIELD };
StrategyResult genus6_fixed_frame(const FieldSpec&, FrameMode, const SearchOptions&,
                                  const RecordSink&);
StrategyResult genus6_stream_match(const FieldSpec&, const SearchOptions&, const RecordSink&);
StrategyResult genus6_order3(const FieldSpec&, const SearchOptions&, const RecordSink&);
StrategyResult genus7_chain(const FieldSpec&, const SearchOptions&, const RecordSink&);
StrategyResult genus7_lambda(const FieldSpec&, const SearchOptions&, const RecordSink&);

/// Runs a comma-list of strategies for one genus with a shared threshold (the
/// best defect found by an earlier strategy prunes the later ones).  Strategy
/// names per genus: 4: scan; 5: exhaustive, match; 6: fixed-frame, subfield,
/// stream, order3; 7: chain, lambda.  Throws invalid_argument for unknown
/// names or a genus/strategy mismatch.
StrategyResult run_search(const FieldSpec& field, unsigned genus,
                          const std::vector<std::string>& strategies,
                          const SearchOptions& opts, const RecordSink& sink);

namespace detail {
/// The three fixed genus-6 frames over k: x(x-1), the smallest-encoding
/// irreducible quadratic, the smallest-encoding irreducible cubic.
std::vector<Poly> genus6_frames(const FieldSpec& k);
}

} // namespace medgenus
