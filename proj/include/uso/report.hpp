#pragma once

#include <string>

#include <json.hpp>

#include "uso/cube.hpp"

namespace uso {

/// Structured result document emitted by every CLI command: inputs echoed
/// back, named verdicts, witnesses that can be replayed against the inputs,
/// and wall-clock timings. Serializes to JSON for the machine format.
struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json verdicts = nlohmann::json::object();
    nlohmann::json witnesses = nlohmann::json::object();
    nlohmann::json timings_ms = nlohmann::json::object();

    nlohmann::json to_json() const {
        return {{"format", "uso-report"},
                {"version", 1},
                {"command", command},
                {"inputs", inputs},
                {"verdicts", verdicts},
                {"witnesses", witnesses},
                {"timings_ms", timings_ms}};
    }

    static Report from_json(const nlohmann::json& j) {
        if (j.value("format", "") != "uso-report") throw Error("not a uso report");
        Report r;
        r.command = j.value("command", "");
        r.inputs = j.value("inputs", nlohmann::json::object());
        r.verdicts = j.value("verdicts", nlohmann::json::object());
        r.witnesses = j.value("witnesses", nlohmann::json::object());
        r.timings_ms = j.value("timings_ms", nlohmann::json::object());
        return r;
    }

    std::string to_text() const {
        std::string out = "command: " + command + "\n";
        auto section = [&out](const char* name, const nlohmann::json& j) {
            if (j.empty()) return;
            out += std::string(name) + ":\n";
            for (auto it = j.begin(); it != j.end(); ++it)
                out += "  " + it.key() + ": " + it.value().dump() + "\n";
        };
        section("inputs", inputs);
        section("verdicts", verdicts);
        section("witnesses", witnesses);
        section("timings_ms", timings_ms);
        return out;
    }
};

inline nlohmann::json automorphism_to_json(const Automorphism& a) {
    nlohmann::json perm = nlohmann::json::array();
    for (std::uint8_t p : a.perm) perm.push_back(int(p) + 1);  // 1-based images
    return {{"flip", a.flip.bits}, {"perm", perm}};
}

inline Automorphism automorphism_from_json(const nlohmann::json& j) {
    std::vector<std::uint8_t> perm;
    for (const auto& v : j.at("perm")) perm.push_back(std::uint8_t(v.get<int>() - 1));
    return Automorphism(DimSet(j.at("flip").get<std::uint32_t>()), std::move(perm));
}

}  // namespace uso
