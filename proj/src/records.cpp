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

#include "medgenus/records.hpp"

#include <stdexcept>

#include "json.hpp"

namespace medgenus {

std::string record_to_json(const CoverRecord& r) {
    nlohmann::json j;
    j["field"] = r.field->to_string();
    j["genus"] = r.genus;
    j["tag"] = r.tag;
    nlohmann::json polys = nlohmann::json::array();
    for (const Poly& f : r.polys) polys.push_back(f.wire());
    j["polys"] = std::move(polys);
    nlohmann::json subs = nlohmann::json::array();
    for (const SubcoverInfo& s : r.subcovers)
        subs.push_back({{"poly", s.poly.wire()},
                        {"genus", s.genus},
                        {"count", s.count},
                        {"defect", s.defect}});
    j["subcovers"] = std::move(subs);
    j["total_count"] = r.total_count;
    j["total_defect"] = r.total_defect;
    j["complete"] = r.complete;
    j["tool_version"] = kToolVersion;
    return j.dump();
}

CoverRecord record_from_json(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("not valid JSON: ") + e.what());
    }
    try {
        CoverRecord r;
        const FieldSpec& k = FieldSpec::parse(j.at("field").get<std::string>());
        r.field = &k;
        r.genus = j.at("genus").get<unsigned>();
        r.tag = j.at("tag").get<std::string>();
        for (const auto& w : j.at("polys"))
            r.polys.push_back(Poly::parse_wire(k, w.get<std::string>()));
        for (const auto& s : j.at("subcovers")) {
            SubcoverInfo info;
            info.poly = Poly::parse_wire(k, s.at("poly").get<std::string>());
            info.genus = s.at("genus").get<unsigned>();
            info.count = s.at("count").get<int64_t>();
            info.defect = s.at("defect").get<int64_t>();
            r.subcovers.push_back(std::move(info));
        }
        r.total_count = j.at("total_count").get<int64_t>();
        r.total_defect = j.at("total_defect").get<int64_t>();
        r.complete = j.at("complete").get<bool>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed record: ") + e.what());
    }
}

} // namespace medgenus
