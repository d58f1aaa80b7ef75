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

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#ifdef MEDGENUS_OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "medgenus/records.hpp"
#include "medgenus/search.hpp"

namespace {

using namespace medgenus;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

struct SearchArgs {
    std::string field, strategy, out;
    unsigned genus = 0;
    int64_t defect_limit = -1;
    bool to_completion = false, emit_all = false;
    uint64_t seed = 0;
    int threads = 0;
};

int cmd_search(const SearchArgs& a) {
    const FieldSpec* k;
    try {
        k = &FieldSpec::parse(a.field);
    } catch (const std::exception& e) {
        std::cerr << "invalid field: " << e.what() << "\n";
        return 2;
    }
#ifdef MEDGENUS_OPENMP
    if (a.threads > 0) omp_set_num_threads(a.threads);
#endif
    SearchOptions opts;
    opts.defect_limit = a.defect_limit;
    opts.to_completion = a.to_completion;
    opts.emit_all = a.emit_all;
    opts.seed = a.seed;
    std::ofstream out;
    if (!a.out.empty()) {
        out.open(a.out);
        if (!out) {
            std::cerr << "cannot open " << a.out << "\n";
            return 2;
        }
    }
    size_t emitted = 0;
    auto sink = [&](const CoverRecord& r) {
        std::string line = record_to_json(r);
        std::cout << line << "\n" << std::flush;
        if (out) out << line << "\n" << std::flush;
        ++emitted;
    };
    StrategyResult res;
    try {
        res = run_search(*k, a.genus, split_commas(a.strategy), opts, sink);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "best defect: ";
    if (res.best_defect >= 0)
        std::cerr << res.best_defect;
    else
        std::cerr << "none under budget";
    std::cerr << (res.complete ? " (run complete)" : " (run not complete)") << "\n";
    return emitted > 0 ? 0 : 3;
}

struct LoadedRecord {
    CoverRecord record;
    std::string file;
    size_t lineno;
};

/// Reads JSON-lines record files; a parse failure prints the offending
/// location and flips the status to 2.
std::optional<std::vector<LoadedRecord>> load_records(const std::vector<std::string>& files) {
    std::vector<LoadedRecord> out;
    for (const std::string& path : files) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << path << ": cannot open\n";
            return std::nullopt;
        }
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                out.push_back({record_from_json(line), path, lineno});
            } catch (const std::invalid_argument& e) {
                std::cerr << path << ":" << lineno << ": " << e.what() << "\n";
                return std::nullopt;
            }
        }
    }
    return out;
}

int cmd_verify(const std::vector<std::string>& files) {
    auto loaded = load_records(files);
    if (!loaded) return 2;
    if (loaded->empty()) {
        std::cerr << "warning: 0 records\n";
        return 0;
    }
    size_t failed = 0;
    for (const LoadedRecord& lr : *loaded) {
        std::string diag;
        if (!verify_record(lr.record, &diag)) {
            std::cerr << lr.file << ":" << lr.lineno << ": FAIL: " << diag << "\n";
            ++failed;
        }
    }
    std::cerr << loaded->size() - failed << "/" << loaded->size() << " records pass\n";
    return failed == 0 ? 0 : 1;
}

int cmd_table(const std::vector<std::string>& files, bool csv) {
    auto loaded = load_records(files);
    if (!loaded) return 2;
    struct Cell {
        int64_t defect;
        size_t witnesses;
    };
    std::map<std::string, std::map<unsigned, Cell>> grid; // field -> genus -> best
    for (const LoadedRecord& lr : *loaded) {
        const CoverRecord& r = lr.record;
        auto& cell = grid[r.field->to_string()];
        auto it = cell.find(r.genus);
        if (it == cell.end())
            cell[r.genus] = {r.total_defect, 1};
        else if (r.total_defect < it->second.defect)
            it->second = {r.total_defect, 1};
        else if (r.total_defect == it->second.defect)
            ++it->second.witnesses;
    }
    if (csv) {
        std::cout << "field,genus,defect,lower_bound,witnesses\n";
        for (const auto& [field, row] : grid)
            for (const auto& [genus, cell] : row) {
                uint64_t q = FieldSpec::parse(field).q();
                std::cout << field << "," << genus << "," << cell.defect << ","
                          << weil_serre(q, genus) - cell.defect << "," << cell.witnesses << "\n";
            }
        return 0;
    }
    std::cout << "field      ";
    for (unsigned g = 4; g <= 7; ++g) std::cout << " | g=" << g << " D / N>= / #";
    std::cout << "\n";
    for (const auto& [field, row] : grid) {
        std::cout << field;
        for (size_t pad = field.size(); pad < 11; ++pad) std::cout << ' ';
        for (unsigned g = 4; g <= 7; ++g) {
            std::cout << " | ";
            auto it = row.find(g);
            if (it == row.end()) {
                std::cout << "—";
                continue;
            }
            uint64_t q = FieldSpec::parse(field).q();
            std::cout << it->second.defect << " / " << weil_serre(q, g) - it->second.defect
                      << " / " << it->second.witnesses;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_count(const std::string& field, const std::string& poly) {
    const FieldSpec* k;
    try {
        k = &FieldSpec::parse(field);
    } catch (const std::exception& e) {
        std::cerr << "invalid field: " << e.what() << "\n";
        return 2;
    }
    try {
        Poly f = Poly::parse_wire(*k, poly);
        if (f.degree() < 1 || !is_separable(f)) {
            std::cerr << "polynomial must be separable of degree >= 1\n";
            return 2;
        }
        HyperellipticModel C{f};
        std::cout << "count " << count_points(C) << "\n"
                  << "genus " << C.genus() << "\n"
                  << "defect " << defect(C) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "invalid polynomial: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"search and verification toolkit for medium-genus curves with many points"};
    app.require_subcommand(1);

    SearchArgs sa;
    CLI::App* search = app.add_subcommand("search", "run a search strategy");
    search->add_option("--field", sa.field, "field spec, e.g. 17 or 3^2 or 3^2/1,2,1")->required();
    search->add_option("--genus", sa.genus, "target genus (4-7)")->required();
    search->add_option("--strategy", sa.strategy, "comma-separated strategy list")->required();
    search->add_option("--defect-limit", sa.defect_limit, "initial defect budget");
    search->add_flag("--to-completion", sa.to_completion, "run each strategy to its stopping rule");
    search->add_option("--out", sa.out, "also append records to this JSON-lines file");
    search->add_option("--seed", sa.seed, "random seed (reproducibility)");
    search->add_option("--threads", sa.threads, "worker threads (default: all)");
    search->add_flag("--emit-all", sa.emit_all, "emit every record under the budget");

    std::vector<std::string> in_files;
    CLI::App* verify = app.add_subcommand("verify", "re-derive every identity in a record file");
    verify->add_option("--in", in_files, "record files")->required();

    bool csv = false;
    CLI::App* table = app.add_subcommand("table", "best recorded defect per (field, genus)");
    table->add_option("--in", in_files, "record files")->required();
    table->add_flag("--csv", csv, "CSV output");

    std::string count_field, count_poly;
    CLI::App* count = app.add_subcommand("count", "count points on y^2 = f");
    count->add_option("--field", count_field, "field spec")->required();
    count->add_option("--poly", count_poly, "wire-form coefficients, constant first")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (search->parsed()) return cmd_search(sa);
    if (verify->parsed()) return cmd_verify(in_files);
    if (table->parsed()) return cmd_table(in_files, csv);
    if (count->parsed()) return cmd_count(count_field, count_poly);
    return 2;
}
