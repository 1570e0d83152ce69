#include "onm/design_json.hpp"

#include <stdexcept>

namespace onm {

nlohmann::json to_json(const IirDesign& design)
{
    nlohmann::json sections = nlohmann::json::array();
    for (const auto& s : design.sections) {
        sections.push_back({s.b0, s.b1, s.b2, s.a1, s.a2});
    }
    return {
        {"type", "iir"},
        {"family", to_string(design.family)},
        {"kind", to_string(design.kind)},
        {"order", design.order},
        {"cutoffs", design.cutoffs},
        {"rate", design.rate},
        {"label", design.label},
        {"sections", sections},
    };
}

nlohmann::json to_json(const FirDesign& design)
{
    nlohmann::json doc = {
        {"type", "fir"},
        {"rate", design.rate},
        {"label", design.label},
        {"taps", design.taps},
    };
    doc["group_delay"] = design.group_delay ? nlohmann::json(*design.group_delay) : nlohmann::json();
    return doc;
}

IirDesign iir_from_json(const nlohmann::json& doc)
{
    if (doc.value("type", "") != "iir") {
        throw std::invalid_argument("not an IIR design document");
    }
    IirDesign d;
    d.family = parse_iir_family(doc.at("family").get<std::string>());
    d.kind = parse_filter_kind(doc.at("kind").get<std::string>());
    d.order = doc.at("order").get<int>();
    d.cutoffs = doc.at("cutoffs").get<std::vector<double>>();
    d.rate = doc.at("rate").get<double>();
    d.label = doc.value("label", "");
    for (const auto& s : doc.at("sections")) {
        if (!s.is_array() || s.size() != 5) {
            throw std::invalid_argument("IIR section must have 5 coefficients");
        }
        d.sections.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>(),
                              s[3].get<double>(), s[4].get<double>()});
    }
    return d;
}

FirDesign fir_from_json(const nlohmann::json& doc)
{
    if (doc.value("type", "") != "fir") {
        throw std::invalid_argument("not an FIR design document");
    }
    FirDesign d;
    d.rate = doc.at("rate").get<double>();
    d.taps = doc.at("taps").get<std::vector<double>>();
    d.label = doc.value("label", "");
    if (doc.contains("group_delay") && !doc["group_delay"].is_null()) {
        d.group_delay = doc["group_delay"].get<std::size_t>();
    }
    return d;
}

} // namespace onm
